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
// Deterministic discrete-time world loop.
//
// Each tick runs in this fixed order:
//   1. new-user arrivals: the fractional accumulator converts the real-valued
//      arrival rate into integer signups (carry += rate; spawn floor(carry)),
//      each signup receiving the initial grant;
//   2. unit-value snapshot: every agent's decision unit value is computed
//      from the tick-start ledger, so within-tick order cannot change any
//      decision and grants only take effect at the next tick;
//   3. decisions and bookkeeping, agents in ascending id order, m comments
//      each: agents decide on expected utilities at their snapshot value, but
//      costs and rewards are booked from realized draws (maliciousness with
//      prob p, admin processing with prob q);
//   4. a TickRecord is emitted.
//
// Agents never leave the platform; they switch to discarding. Participation,
// not population, is the collapse observable: collapse_tick is the first tick
// opening a full window of collapse_window ticks whose participation stays
// below collapse_epsilon (a shorter below-threshold tail at the end of the
// horizon does not count).
//
// Draw order per comment, pinned for reproducibility: optional noise draw
// (only when epsilon_noise > 0, plus a second draw to pick the noisy
// strategy), then the maliciousness draw whenever the comment is read, then
// the admin-processing draw whenever a report was written. Discarded comments
// consume no draws.

#ifndef CREDSIM_SIM_HPP_
#define CREDSIM_SIM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "credsim/decision.hpp"
#include "credsim/ledger.hpp"
#include "credsim/rng.hpp"

namespace credsim {

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::vector<std::string>& violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct SimConfig {
  ModelParams params;
  RevenueModel revenue = FixedUnit{};
  std::uint64_t initial_honest_users = 1;
  std::uint64_t comments_per_user_per_tick = 1;  // m
  double new_users_per_tick = 0.0;               // deterministic fractional rate
  double initial_grant = 0.0;                    // credits handed to each signup
  double admin_validity_prob = 1.0;              // q: chance a report is processed
  double epsilon_noise = 0.0;                    // chance a decision is noisy
  std::uint64_t horizon = 1;                     // ticks to simulate
  std::uint64_t seed = 0;
  double collapse_epsilon = 0.01;
  std::uint64_t collapse_window = 10;
  // Decision rule under the submodular regime: false (default) values the
  // next report at its marginal R(n+1)-R(n); true uses the average R(n)/n.
  bool submodular_average_mode = false;
};

// Collects every violated bound; empty means valid.
std::vector<std::string> validate(const SimConfig& config);

struct TickRecord {
  std::uint64_t tick = 0;
  std::uint64_t active_honest = 0;     // agents present this tick
  std::uint64_t reporters = 0;         // agents that chose read-and-report
  std::uint64_t reports_rewarded = 0;  // reports processed by the admin
  double participation = 0.0;          // reporters / active_honest
  double unit_value = 0.0;             // mean decision unit value at snapshot
  double total_distributed = 0.0;      // snapshot N the decisions used
  double mean_utility = 0.0;           // realized utility per comment
};

struct RunResult {
  std::vector<TickRecord> records;
  std::optional<std::uint64_t> collapse_tick;
  CreditLedger final_ledger;
};

// First tick opening a full window of below-epsilon participation.
std::optional<std::uint64_t> find_collapse_tick(std::span<const TickRecord> records,
                                                double collapse_epsilon,
                                                std::uint64_t collapse_window);

// One world, advanced tick by tick. Construction seeds the ledger with the
// initial population and validates the config (throws ValidationError listing
// every violated bound). Conservation of credits is re-checked after every
// tick; a mismatch throws LedgerInvariantError.
class Simulation {
 public:
  explicit Simulation(const SimConfig& config);

  TickRecord step();

  std::uint64_t current_tick() const { return tick_; }
  const CreditLedger& ledger() const { return ledger_; }
  const SimConfig& config() const { return config_; }

  // Decision unit value an account would see at the current ledger state.
  double decision_unit_value(const AgentAccount& account) const;

 private:
  SimConfig config_;
  CreditLedger ledger_;
  Rng rng_;
  std::uint64_t tick_ = 0;
  double arrival_carry_ = 0.0;
  double granted_total_ = 0.0;  // shadow tally mirroring the ledger's N
};

// Runs the full horizon and computes the collapse tick. Pure function of the
// config: identical configs give identical results, byte for byte.
RunResult run(const SimConfig& config);

}  // namespace credsim

#endif  // CREDSIM_SIM_HPP_
