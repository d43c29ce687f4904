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
// Closed-form predictions and parameter sweeps: the reporting threshold
// surface, break-even malicious probability, the inflation collapse point,
// and the submodular limit diagnostics. These are the independent oracles the
// simulator is validated against.
//
// Sentinel conventions, shared with the decision module: a threshold of
// +infinity means reporting is never profitable; a collapse point of 0 means
// reporting was never rational to begin with, +infinity that it never stops
// being rational. Sweep tables render these as `never` / `always`.

#ifndef CREDSIM_ANALYSIS_HPP_
#define CREDSIM_ANALYSIS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "credsim/sim.hpp"

namespace credsim {

// Total distributed credits at which an inflationary economy stops rewarding
// enough: N* = scale / u*. Reporting is rational exactly while N < N*.
double predicted_collapse_credits(const ModelParams& params, double inflation_scale);

// Smallest malicious probability that makes reporting rational at the given
// unit value: p* = read_cost / (reward * u - mental_cost - report_cost).
// Returns 0 when any positive probability suffices (zero reading cost) and
// nullopt when no probability in (0, 1] does. Ignores params.malicious_prob.
std::optional<double> break_even_probability(const ModelParams& params, double unit_value);

struct LimitProfile {
  // (n, average unit revenue (log_coeff * ln n + offset) / n), unclamped.
  std::vector<std::pair<std::uint64_t, double>> points;
  // Maximizer exp(1 - offset/log_coeff) of the continuous relaxation, for
  // plot annotations.
  double peak_n = 0.0;
};

// Evaluates the average unit revenue of the submodular regime at each n.
// Requires log_coeff > 0 and every n >= 1.
LimitProfile submodular_limit_profile(double log_coeff, double offset,
                                      std::span<const std::uint64_t> n_points);

// Cartesian grid over the decision parameters and a list of revenue models.
// Axis order (outermost to innermost): c_r, p, c_p, c_w, r, model.
struct SweepGrid {
  std::vector<double> read_cost;
  std::vector<double> malicious_prob;
  std::vector<double> mental_cost;
  std::vector<double> report_cost;
  std::vector<double> report_reward;
  std::vector<RevenueModel> models;
};

struct SweepSpec {
  SweepGrid grid;
  // When present, each cell also runs a simulation built from this template
  // with params/revenue replaced by the cell's values.
  std::optional<SimConfig> sim_template;
};

struct SweepRow {
  ModelParams params;
  RevenueModel model;
  std::string error;    // nonempty marks an invalid cell; other fields unset
  double u_star = 0.0;  // may be +infinity
  std::optional<double> n_star;  // inflationary cells only
  std::optional<std::optional<std::uint64_t>> collapse_tick;  // outer: sim ran
  std::optional<bool> agree;
};

using SweepTable = std::vector<SweepRow>;

// Runs every cell (closed forms, plus a simulation when the spec carries a
// template) and returns one row per cell in deterministic lexicographic
// order. Invalid cells become error rows; the sweep continues. Cells execute
// in parallel; each cell's replica work is sequential.
SweepTable sweep(const SweepSpec& spec);

}  // namespace credsim

#endif  // CREDSIM_ANALYSIS_HPP_
