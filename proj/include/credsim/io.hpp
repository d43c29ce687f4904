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
// File formats. Configs are JSON with exact, fixed field names; unknown
// fields are hard errors so typos in experiment configs cannot pass silently.
// Emitted documents have pinned field order and real numbers at 17
// significant digits (JSON) or 10 (CSV), so identical states serialize to
// identical bytes on every platform.

#ifndef CREDSIM_IO_HPP_
#define CREDSIM_IO_HPP_

#include <span>
#include <string>

#include "credsim/analysis.hpp"
#include "credsim/ledger.hpp"
#include "credsim/sim.hpp"

namespace credsim {

// Shortest %.Ng rendering; 17 digits round-trips any double exactly.
std::string format_real(double value, int significant_digits);

std::string config_to_json(const SimConfig& config);
std::string summary_to_json(const SimConfig& config, const RunResult& result);
std::string ledger_to_json(const CreditLedger& ledger);

std::string records_to_csv(std::span<const TickRecord> records);
std::string sweep_to_csv(const SweepTable& table);
std::string limit_profile_to_csv(const LimitProfile& profile);

// Parsers throw ValidationError carrying line/field diagnostics on malformed
// documents and every violated bound on out-of-range values.
ModelParams parse_model_params_json(const std::string& text);
SimConfig parse_sim_config_json(const std::string& text);
SweepSpec parse_sweep_spec_json(const std::string& text);
CreditLedger parse_ledger_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace credsim

#endif  // CREDSIM_IO_HPP_
