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
// Credit ledger and the diminishing-revenue regimes.
//
// Credits are platform-internal reputation points: they are granted for
// processed reports, never refunded, never transferred, and never spent in
// this model, so the platform-wide total only grows. Four regimes control
// what one credit is worth to a user:
//
//   FixedUnit     constant unit value (the control regime)
//   Inflationary  unit value = scale / N, where N is the total credits
//                 distributed platform-wide; every grant (including the
//                 initial grant to a new user) dilutes the value
//   Submodular    per-user cumulative revenue R(n) = log_coeff * ln(n) +
//                 offset over the user's own n processed reports; the
//                 marginal reward of each further report shrinks
//   Capped        fixed unit value, but zero marginal credits once the
//                 user's balance reaches the cap
//
// Unit values depend only on platform aggregates (N) or on the one account's
// own state (n, balance) -- never on other users' balances; there is no
// competition between credit holders.

#ifndef CREDSIM_LEDGER_HPP_
#define CREDSIM_LEDGER_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace credsim {

struct FixedUnit {
  double unit_value = 1.0;  // u0
};

struct Inflationary {
  double scale = 1.0;  // unit value = scale / total credits distributed
};

struct Submodular {
  double log_coeff = 1.0;  // cumulative revenue R(n) = log_coeff * ln(n) + offset
  double offset = 0.0;     // R(1); also the prospective value of a first report
};

struct Capped {
  double cap = 1.0;         // hard per-user balance maximum
  double unit_value = 1.0;  // u0, in effect while balance < cap
};

using RevenueModel = std::variant<FixedUnit, Inflationary, Submodular, Capped>;

const char* model_tag(const RevenueModel& model);

void validate(const RevenueModel& model, std::vector<std::string>& errors);

// Marginal cumulative revenue R(n+1) - R(n) of a submodular regime, defined
// for n >= 1. Independent of the offset, strictly decreasing in n, and -> 0.
// The n = 0 bootstrap (value of a very first report) is R(1) = offset and is
// handled by the unit-value accessors, not here.
double marginal_revenue(const Submodular& model, std::uint64_t reports);

struct AgentAccount {
  std::uint64_t agent_id = 0;
  double balance = 0.0;               // credits held; never decreases
  std::uint64_t valid_reports = 0;    // processed reports, the account's n
  double cumulative_revenue = 0.0;    // utility booked from report rewards
};

// Outcome of rewarding one processed report.
struct GrantResult {
  double credits_granted = 0.0;
  double revenue_delta = 0.0;  // utility value the agent books for the grant
};

// Thrown when ledger bookkeeping disagrees with itself; indicates a bug, not
// bad input.
class LedgerInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Single logical state machine holding all accounts and the platform total.
// Mutations must be applied serially; const access is freely concurrent
// between mutations.
class CreditLedger {
 public:
  CreditLedger(RevenueModel model, double initial_grant);

  // Creates an account holding the initial grant. The grant counts toward the
  // distributed total, so under the inflationary regime every signup dilutes
  // everyone's unit value.
  AgentAccount& register_user();

  // Rewards one processed valid report with `reward_credits` nominal credits.
  // Under Capped the granted amount is clamped to the remaining headroom
  // (possibly zero); the account still books the report as processed. The
  // booked revenue_delta is reward_credits * pre-grant unit value for the
  // per-credit regimes and the marginal R(n+1) - R(n), clamped at zero, for
  // the submodular regime.
  GrantResult grant_for_report(std::uint64_t agent_id, double reward_credits);

  // Value of one credit to this account under the ledger's regime. For the
  // submodular regime this is the average R(n)/n (the prospective first
  // report value R(1) at n = 0), clamped at zero.
  double unit_value(const AgentAccount& account) const;

  const AgentAccount& account(std::uint64_t agent_id) const;
  const std::vector<AgentAccount>& accounts() const { return accounts_; }
  std::size_t size() const { return accounts_.size(); }

  double total_distributed() const { return total_distributed_; }
  double initial_grant() const { return initial_grant_; }
  const RevenueModel& model() const { return model_; }

  // Exact sum of current balances in account order. Because credits are never
  // spent, this equals total lifetime grants; acceptance checks compare it to
  // total_distributed() on dyadic-valued runs where the sum is associative.
  double sum_of_balances() const;

  // Restores a ledger from snapshot fields (deserialization path).
  static CreditLedger restore(RevenueModel model, double initial_grant,
                              double total_distributed,
                              std::vector<AgentAccount> accounts);

 private:
  RevenueModel model_;
  double initial_grant_ = 0.0;
  double total_distributed_ = 0.0;  // the platform N; nondecreasing
  std::vector<AgentAccount> accounts_;
};

}  // namespace credsim

#endif  // CREDSIM_LEDGER_HPP_
