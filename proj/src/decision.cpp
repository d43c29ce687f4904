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

#include "credsim/decision.hpp"

#include <cmath>
#include <limits>

namespace credsim {

namespace {

void check_bound(std::vector<std::string>& errors, bool ok, const char* msg) {
  if (!ok) errors.emplace_back(msg);
}

}  // namespace

void validate(const ModelParams& params, std::vector<std::string>& errors) {
  check_bound(errors, std::isfinite(params.read_cost) && params.read_cost >= 0.0,
              "params.c_r must be finite and >= 0");
  check_bound(errors,
              std::isfinite(params.malicious_prob) && params.malicious_prob >= 0.0 &&
                  params.malicious_prob <= 1.0,
              "params.p must be in [0,1]");
  check_bound(errors, std::isfinite(params.mental_cost) && params.mental_cost >= 0.0,
              "params.c_p must be finite and >= 0");
  check_bound(errors, std::isfinite(params.report_cost) && params.report_cost >= 0.0,
              "params.c_w must be finite and >= 0");
  check_bound(errors, std::isfinite(params.report_reward) && params.report_reward >= 0.0,
              "params.r must be finite and >= 0");
}

bool is_valid(const ModelParams& params) {
  std::vector<std::string> errors;
  validate(params, errors);
  return errors.empty();
}

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::ReadOnly:
      return "read_only";
    case Strategy::ReadAndReport:
      return "report";
    case Strategy::Discard:
      return "discard";
  }
  return "discard";
}

double utility_read_only(const ModelParams& params) {
  return -(params.read_cost + params.malicious_prob * params.mental_cost);
}

double utility_report(const ModelParams& params, double unit_value) {
  return -params.read_cost +
         params.malicious_prob *
             (params.report_reward * unit_value - params.mental_cost - params.report_cost);
}

UtilityTriple utilities(const ModelParams& params, double unit_value) {
  UtilityTriple u;
  u.read_only = utility_read_only(params);
  u.read_and_report = utility_report(params, unit_value);
  u.discard = 0.0;
  return u;
}

Strategy choose_strategy(const ModelParams& params, double unit_value) {
  return utility_report(params, unit_value) > 0.0 ? Strategy::ReadAndReport
                                                  : Strategy::Discard;
}

double threshold_unit_value(const ModelParams& params) {
  if (params.malicious_prob <= 0.0 || params.report_reward <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return params.read_cost / (params.malicious_prob * params.report_reward) +
         (params.mental_cost + params.report_cost) / params.report_reward;
}

}  // namespace credsim
