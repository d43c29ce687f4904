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

#include "credsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace credsim {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::ostringstream out;
  out << "invalid config:";
  for (const std::string& violation : violations) out << "\n  - " << violation;
  return out.str();
}

}  // namespace

ValidationError::ValidationError(const std::vector<std::string>& violations)
    : std::runtime_error(join_violations(violations)), violations_(violations) {}

std::vector<std::string> validate(const SimConfig& config) {
  std::vector<std::string> errors;
  validate(config.params, errors);
  validate(config.revenue, errors);
  auto require = [&errors](bool ok, const char* msg) {
    if (!ok) errors.emplace_back(msg);
  };
  require(config.initial_honest_users >= 1, "initial_honest_users must be >= 1");
  require(config.comments_per_user_per_tick >= 1, "comments_per_user_per_tick must be >= 1");
  require(std::isfinite(config.new_users_per_tick) && config.new_users_per_tick >= 0.0,
          "new_users_per_tick must be finite and >= 0");
  require(std::isfinite(config.initial_grant) && config.initial_grant >= 0.0,
          "initial_grant must be finite and >= 0");
  require(std::isfinite(config.admin_validity_prob) && config.admin_validity_prob >= 0.0 &&
              config.admin_validity_prob <= 1.0,
          "admin_validity_prob must be in [0,1]");
  require(std::isfinite(config.epsilon_noise) && config.epsilon_noise >= 0.0 &&
              config.epsilon_noise <= 1.0,
          "epsilon_noise must be in [0,1]");
  require(config.horizon >= 1, "horizon must be >= 1");
  require(std::isfinite(config.collapse_epsilon) && config.collapse_epsilon > 0.0 &&
              config.collapse_epsilon < 1.0,
          "collapse_epsilon must be in (0,1)");
  require(config.collapse_window >= 1, "collapse_window must be >= 1");
  return errors;
}

std::optional<std::uint64_t> find_collapse_tick(std::span<const TickRecord> records,
                                                double collapse_epsilon,
                                                std::uint64_t collapse_window) {
  if (records.size() < collapse_window) return std::nullopt;
  std::uint64_t below_run = 0;  // consecutive below-epsilon ticks ending here
  for (std::size_t i = 0; i < records.size(); ++i) {
    below_run = records[i].participation < collapse_epsilon ? below_run + 1 : 0;
    if (below_run == collapse_window) {
      return records[i].tick - (collapse_window - 1);
    }
  }
  return std::nullopt;
}

Simulation::Simulation(const SimConfig& config)
    : config_(config),
      ledger_(config.revenue, config.initial_grant),
      rng_(config.seed) {
  const std::vector<std::string> errors = validate(config_);
  if (!errors.empty()) throw ValidationError(errors);
  for (std::uint64_t i = 0; i < config_.initial_honest_users; ++i) {
    ledger_.register_user();
    granted_total_ += config_.initial_grant;
  }
}

double Simulation::decision_unit_value(const AgentAccount& account) const {
  const auto* submodular = std::get_if<Submodular>(&ledger_.model());
  if (submodular != nullptr && !config_.submodular_average_mode) {
    // Value the next report at its marginal revenue, expressed per credit so
    // the threshold rule applies unchanged. Worthless credits (r = 0) never
    // make reporting profitable regardless.
    if (config_.params.report_reward <= 0.0) return 0.0;
    const double marginal = account.valid_reports == 0
                                ? submodular->offset
                                : marginal_revenue(*submodular, account.valid_reports);
    return std::max(marginal, 0.0) / config_.params.report_reward;
  }
  return ledger_.unit_value(account);
}

TickRecord Simulation::step() {
  const ModelParams& params = config_.params;
  const std::uint64_t comments = config_.comments_per_user_per_tick;

  // 1. Arrivals.
  arrival_carry_ += config_.new_users_per_tick;
  const double spawn = std::floor(arrival_carry_);
  arrival_carry_ -= spawn;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(spawn); ++i) {
    ledger_.register_user();
    granted_total_ += config_.initial_grant;
  }

  // 2. Snapshot: every decision this tick sees the tick-start ledger.
  const double snapshot_total = ledger_.total_distributed();
  const std::size_t active = ledger_.size();
  std::vector<double> snapshot_values(active);
  for (std::size_t i = 0; i < active; ++i) {
    snapshot_values[i] = decision_unit_value(ledger_.accounts()[i]);
  }

  // 3. Decisions on expectations, bookkeeping on realized draws.
  std::uint64_t reporters = 0;
  std::uint64_t reports_rewarded = 0;
  double utility_sum = 0.0;
  for (std::size_t i = 0; i < active; ++i) {
    bool reported_any = false;
    for (std::uint64_t c = 0; c < comments; ++c) {
      Strategy strategy;
      if (config_.epsilon_noise > 0.0 && bernoulli(rng_, config_.epsilon_noise)) {
        strategy = uniform01(rng_) < 0.5 ? Strategy::ReadOnly : Strategy::ReadAndReport;
      } else {
        strategy = choose_strategy(params, snapshot_values[i]);
      }
      if (strategy == Strategy::Discard) continue;

      utility_sum -= params.read_cost;
      const bool malicious = bernoulli(rng_, params.malicious_prob);
      if (malicious) utility_sum -= params.mental_cost;
      if (strategy == Strategy::ReadAndReport) {
        reported_any = true;
        if (malicious) {
          utility_sum -= params.report_cost;
          if (bernoulli(rng_, config_.admin_validity_prob)) {
            const GrantResult grant =
                ledger_.grant_for_report(static_cast<std::uint64_t>(i), params.report_reward);
            granted_total_ += grant.credits_granted;
            utility_sum += grant.revenue_delta;
            ++reports_rewarded;
          }
        }
      }
    }
    if (reported_any) ++reporters;
  }

  // The ledger's total and this tally accumulate the same grants in the same
  // order, so any divergence means a bookkeeping bug.
  if (ledger_.total_distributed() != granted_total_ || ledger_.total_distributed() < snapshot_total) {
    throw LedgerInvariantError("credit conservation violated at tick " + std::to_string(tick_));
  }

  // 4. Observables.
  TickRecord record;
  record.tick = tick_;
  record.active_honest = active;
  record.reporters = reporters;
  record.reports_rewarded = reports_rewarded;
  record.participation = static_cast<double>(reporters) / static_cast<double>(active);
  const bool uniform_values =
      std::all_of(snapshot_values.begin(), snapshot_values.end(),
                  [&](double v) { return v == snapshot_values.front(); });
  record.unit_value =
      uniform_values
          ? snapshot_values.front()
          : std::accumulate(snapshot_values.begin(), snapshot_values.end(), 0.0) /
                static_cast<double>(active);
  record.total_distributed = snapshot_total;
  record.mean_utility = utility_sum / (static_cast<double>(active) * static_cast<double>(comments));

  ++tick_;
  return record;
}

RunResult run(const SimConfig& config) {
  Simulation sim(config);
  std::vector<TickRecord> records;
  records.reserve(config.horizon);
  for (std::uint64_t t = 0; t < config.horizon; ++t) records.push_back(sim.step());
  RunResult result{std::move(records), std::nullopt, sim.ledger()};
  result.collapse_tick =
      find_collapse_tick(result.records, config.collapse_epsilon, config.collapse_window);
  return result;
}

}  // namespace credsim
