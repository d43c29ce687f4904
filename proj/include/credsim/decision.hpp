// Copyright 2026 The credsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//
// Per-comment decision model for an honest user on a comment platform.
//
// Facing one incoming comment, the user picks one of three strategies:
//   read-only       pay the reading effort, risk the mental cost of a
//                   malicious comment, earn nothing
//   read-and-report additionally file a report when the comment turns out
//                   malicious, earning credits worth `unit_value` each
//   discard         skip the comment entirely, utility exactly zero
//
// Expected utilities (read_cost = effort to read, malicious_prob = chance the
// comment is malicious, mental_cost = expected displeasure of a malicious
// comment, report_cost = effort to write a report, report_reward = credits
// granted per processed report):
//
//   U_read    = -(read_cost + malicious_prob * mental_cost)
//   U_report  = -read_cost + malicious_prob *
//               (report_reward * unit_value - mental_cost - report_cost)
//   U_discard = 0
//
// Read-only is weakly dominated by discarding (strictly, whenever reading has
// any cost at all), so a rational chooser only ever emits read-and-report or
// discard. Reporting wins exactly when U_report > 0, i.e. when the unit value
// clears the threshold
//
//   u* = read_cost / (malicious_prob * report_reward)
//      + (mental_cost + report_cost) / report_reward.

#ifndef CREDSIM_DECISION_HPP_
#define CREDSIM_DECISION_HPP_

#include <string>
#include <vector>

namespace credsim {

// Cost/reward constants of the per-comment decision. All utility units except
// report_reward, which is denominated in credits.
struct ModelParams {
  double read_cost = 0.0;       // effort to read one comment
  double malicious_prob = 0.0;  // probability a comment is malicious, in [0,1]
  double mental_cost = 0.0;     // expected mental cost of a malicious comment
  double report_cost = 0.0;     // effort to write and submit a report
  double report_reward = 0.0;   // credits granted per processed valid report
};

// Appends one message per violated bound to `errors`; valid params add none.
void validate(const ModelParams& params, std::vector<std::string>& errors);

// Convenience wrapper: true iff validate() reports nothing.
bool is_valid(const ModelParams& params);

enum class Strategy { ReadOnly, ReadAndReport, Discard };

const char* to_string(Strategy strategy);

// Expected utilities of all three strategies at a given unit value.
struct UtilityTriple {
  double read_only = 0.0;
  double read_and_report = 0.0;
  double discard = 0.0;  // identically zero, kept for reporting symmetry
};

double utility_read_only(const ModelParams& params);

double utility_report(const ModelParams& params, double unit_value);

UtilityTriple utilities(const ModelParams& params, double unit_value);

// Rational choice at the given unit value: ReadAndReport iff it has strictly
// positive expected utility, otherwise Discard. Ties (utility exactly zero)
// go to Discard. Never returns ReadOnly.
Strategy choose_strategy(const ModelParams& params, double unit_value);

// Minimum unit value at which reporting strictly beats discarding. Returns
// +infinity when reporting can never be profitable (malicious_prob == 0 or
// report_reward == 0), so sweep code can treat "never report" uniformly.
double threshold_unit_value(const ModelParams& params);

}  // namespace credsim

#endif  // CREDSIM_DECISION_HPP_
