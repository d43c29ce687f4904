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

#include "credsim/analysis.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace credsim {

double predicted_collapse_credits(const ModelParams& params, double inflation_scale) {
  const double u_star = threshold_unit_value(params);
  if (std::isinf(u_star)) return 0.0;  // never rational to report
  if (u_star == 0.0) return std::numeric_limits<double>::infinity();  // never collapses
  return inflation_scale / u_star;
}

std::optional<double> break_even_probability(const ModelParams& params, double unit_value) {
  const double net_gain =
      params.report_reward * unit_value - params.mental_cost - params.report_cost;
  if (net_gain <= 0.0) return std::nullopt;
  const double p_star = params.read_cost / net_gain;
  if (p_star > 1.0) return std::nullopt;
  return p_star;  // 0 when reading is free: any positive probability suffices
}

LimitProfile submodular_limit_profile(double log_coeff, double offset,
                                      std::span<const std::uint64_t> n_points) {
  if (!(log_coeff > 0.0)) throw std::invalid_argument("log_coeff must be > 0");
  if (n_points.empty()) throw std::invalid_argument("n_points must be nonempty");
  LimitProfile profile;
  profile.points.reserve(n_points.size());
  for (std::uint64_t n : n_points) {
    if (n < 1) throw std::invalid_argument("every profile point must have n >= 1");
    const double nd = static_cast<double>(n);
    profile.points.emplace_back(n, (log_coeff * std::log(nd) + offset) / nd);
  }
  profile.peak_n = std::exp(1.0 - offset / log_coeff);
  return profile;
}

namespace {

// Sanity check of one simulated cell against the matching closed form. All
// checks assume the template's epsilon_noise is zero (rational agents).
bool cell_agreement(const SimConfig& config, const RunResult& result) {
  const double u_star = threshold_unit_value(config.params);
  const std::vector<TickRecord>& records = result.records;

  if (const auto* fixed = std::get_if<FixedUnit>(&config.revenue)) {
    const double expected = fixed->unit_value > u_star ? 1.0 : 0.0;
    for (const TickRecord& record : records) {
      if (record.participation != expected) return false;
    }
    return true;
  }
  if (const auto* inflationary = std::get_if<Inflationary>(&config.revenue)) {
    const double collapse_credits = predicted_collapse_credits(config.params, inflationary->scale);
    for (const TickRecord& record : records) {
      // Agents see the floored total, so compare the value they actually used.
      const bool rational = std::max(record.total_distributed, 1.0) < collapse_credits;
      if (record.participation != (rational ? 1.0 : 0.0)) return false;
    }
    return true;
  }
  if (const auto* capped = std::get_if<Capped>(&config.revenue)) {
    const double expected_first = capped->unit_value > u_star ? 1.0 : 0.0;
    if (records.front().participation != expected_first) return false;
    if (config.new_users_per_tick == 0.0) {
      for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].participation > records[i - 1].participation) return false;
      }
    }
    return true;
  }
  const auto& submodular = std::get<Submodular>(config.revenue);
  // A fresh account values its first report at R(1) = offset: per credit in
  // marginal mode, as the unit value itself in average mode.
  double first_value = std::max(submodular.offset, 0.0);
  if (!config.submodular_average_mode) {
    first_value =
        config.params.report_reward > 0.0 ? first_value / config.params.report_reward : 0.0;
  }
  const double expected_first = first_value > u_star ? 1.0 : 0.0;
  return records.front().participation == expected_first;
}

SweepRow run_cell(const ModelParams& params, const RevenueModel& model,
                  const std::optional<SimConfig>& sim_template) {
  SweepRow row;
  row.params = params;
  row.model = model;

  std::vector<std::string> errors;
  validate(params, errors);
  validate(model, errors);
  if (!errors.empty()) {
    row.error = errors.front();
    for (std::size_t i = 1; i < errors.size(); ++i) row.error += "; " + errors[i];
    return row;
  }

  row.u_star = threshold_unit_value(params);
  if (const auto* inflationary = std::get_if<Inflationary>(&model)) {
    row.n_star = predicted_collapse_credits(params, inflationary->scale);
  }

  if (sim_template.has_value()) {
    SimConfig config = *sim_template;
    config.params = params;
    config.revenue = model;
    const std::vector<std::string> config_errors = validate(config);
    if (!config_errors.empty()) {
      row.error = config_errors.front();
      return row;
    }
    const RunResult result = run(config);
    row.collapse_tick = result.collapse_tick;
    row.agree = cell_agreement(config, result);
  }
  return row;
}

}  // namespace

SweepTable sweep(const SweepSpec& spec) {
  const SweepGrid& grid = spec.grid;
  std::vector<std::pair<ModelParams, RevenueModel>> cells;
  for (double read_cost : grid.read_cost) {
    for (double malicious_prob : grid.malicious_prob) {
      for (double mental_cost : grid.mental_cost) {
        for (double report_cost : grid.report_cost) {
          for (double report_reward : grid.report_reward) {
            for (const RevenueModel& model : grid.models) {
              cells.emplace_back(
                  ModelParams{read_cost, malicious_prob, mental_cost, report_cost, report_reward},
                  model);
            }
          }
        }
      }
    }
  }

  SweepTable table(cells.size());
  if (cells.empty()) return table;

  const std::size_t worker_count =
      std::min<std::size_t>(std::max(std::thread::hardware_concurrency(), 1u), cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      table[i] = run_cell(cells[i].first, cells[i].second, spec.sim_template);
    }
  };
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t i = 0; i < worker_count; ++i) workers.emplace_back(worker);
    for (std::thread& thread : workers) thread.join();
  }
  return table;
}

}  // namespace credsim
