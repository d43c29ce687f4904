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

#include "credsim/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace credsim {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw ValidationError(std::vector<std::string>{message});
}

std::string format_uint(std::uint64_t value) {
  char buffer[24];
  std::snprintf(buffer, sizeof(buffer), "%" PRIu64, value);
  return buffer;
}

// ---------------------------------------------------------------------------
// Strict readers.

Json parse_document(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& error) {
    // nlohmann messages already carry line/column positions.
    fail(what + ": " + error.what());
  }
}

void check_known_keys(const Json& object, const std::string& path,
                      std::initializer_list<const char*> keys) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* key : keys) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown field \"" + path + item.key() + "\"");
  }
}

const Json& require_field(const Json& object, const std::string& path, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) fail("missing field \"" + path + key + "\"");
  return *it;
}

double as_number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail("field \"" + where + "\" must be a number");
  return value.get<double>();
}

std::uint64_t as_uint(const Json& value, const std::string& where) {
  if (!value.is_number_unsigned()) fail("field \"" + where + "\" must be a nonnegative integer");
  return value.get<std::uint64_t>();
}

bool as_bool(const Json& value, const std::string& where) {
  if (!value.is_boolean()) fail("field \"" + where + "\" must be a boolean");
  return value.get<bool>();
}

double require_number(const Json& object, const std::string& path, const char* key) {
  return as_number(require_field(object, path, key), path + key);
}

std::uint64_t require_uint(const Json& object, const std::string& path, const char* key) {
  return as_uint(require_field(object, path, key), path + key);
}

const Json& require_object(const Json& value, const std::string& where) {
  if (!value.is_object()) fail("field \"" + where + "\" must be an object");
  return value;
}

ModelParams parse_params(const Json& value, const std::string& path) {
  const Json& object = require_object(value, path);
  check_known_keys(object, path + ".", {"c_r", "p", "c_p", "c_w", "r"});
  ModelParams params;
  params.read_cost = require_number(object, path + ".", "c_r");
  params.malicious_prob = require_number(object, path + ".", "p");
  params.mental_cost = require_number(object, path + ".", "c_p");
  params.report_cost = require_number(object, path + ".", "c_w");
  params.report_reward = require_number(object, path + ".", "r");
  return params;
}

RevenueModel parse_revenue(const Json& value, const std::string& path) {
  const Json& object = require_object(value, path);
  const Json& type = require_field(object, path + ".", "type");
  if (!type.is_string()) fail("field \"" + path + ".type\" must be a string");
  const std::string tag = type.get<std::string>();
  if (tag == "fixed_unit") {
    check_known_keys(object, path + ".", {"type", "u0"});
    return FixedUnit{require_number(object, path + ".", "u0")};
  }
  if (tag == "inflationary") {
    check_known_keys(object, path + ".", {"type", "kappa"});
    return Inflationary{require_number(object, path + ".", "kappa")};
  }
  if (tag == "submodular") {
    check_known_keys(object, path + ".", {"type", "alpha", "beta"});
    return Submodular{require_number(object, path + ".", "alpha"),
                      require_number(object, path + ".", "beta")};
  }
  if (tag == "capped") {
    check_known_keys(object, path + ".", {"type", "cap", "u0"});
    return Capped{require_number(object, path + ".", "cap"),
                  require_number(object, path + ".", "u0")};
  }
  fail("field \"" + path +
       ".type\" must be one of fixed_unit, inflationary, submodular, capped");
}

// Reads the SimConfig fields other than params/revenue from `object`.
void parse_sim_fields(const Json& object, const std::string& path, SimConfig& config) {
  config.initial_honest_users = require_uint(object, path, "initial_honest_users");
  config.horizon = require_uint(object, path, "horizon");
  config.seed = require_uint(object, path, "seed");
  if (object.contains("comments_per_user_per_tick")) {
    config.comments_per_user_per_tick =
        as_uint(object["comments_per_user_per_tick"], path + "comments_per_user_per_tick");
  }
  if (object.contains("new_users_per_tick")) {
    config.new_users_per_tick = as_number(object["new_users_per_tick"], path + "new_users_per_tick");
  }
  if (object.contains("initial_grant")) {
    config.initial_grant = as_number(object["initial_grant"], path + "initial_grant");
  }
  if (object.contains("admin_validity_prob")) {
    config.admin_validity_prob =
        as_number(object["admin_validity_prob"], path + "admin_validity_prob");
  }
  if (object.contains("epsilon_noise")) {
    config.epsilon_noise = as_number(object["epsilon_noise"], path + "epsilon_noise");
  }
  if (object.contains("collapse_epsilon")) {
    config.collapse_epsilon = as_number(object["collapse_epsilon"], path + "collapse_epsilon");
  }
  if (object.contains("collapse_window")) {
    config.collapse_window = as_uint(object["collapse_window"], path + "collapse_window");
  }
  if (object.contains("submodular_average_mode")) {
    config.submodular_average_mode =
        as_bool(object["submodular_average_mode"], path + "submodular_average_mode");
  }
}

constexpr std::initializer_list<const char*> kSimFieldKeys = {
    "initial_honest_users",  "comments_per_user_per_tick",
    "new_users_per_tick",    "initial_grant",
    "admin_validity_prob",   "epsilon_noise",
    "horizon",               "seed",
    "collapse_epsilon",      "collapse_window",
    "submodular_average_mode"};

// ---------------------------------------------------------------------------
// Emitters. Field order is part of the format.

void emit_params(std::ostringstream& out, const ModelParams& params) {
  out << "{\"c_r\": " << format_real(params.read_cost, 17)
      << ", \"p\": " << format_real(params.malicious_prob, 17)
      << ", \"c_p\": " << format_real(params.mental_cost, 17)
      << ", \"c_w\": " << format_real(params.report_cost, 17)
      << ", \"r\": " << format_real(params.report_reward, 17) << "}";
}

void emit_revenue(std::ostringstream& out, const RevenueModel& model) {
  out << "{\"type\": \"" << model_tag(model) << "\"";
  if (const auto* fixed = std::get_if<FixedUnit>(&model)) {
    out << ", \"u0\": " << format_real(fixed->unit_value, 17);
  } else if (const auto* inflationary = std::get_if<Inflationary>(&model)) {
    out << ", \"kappa\": " << format_real(inflationary->scale, 17);
  } else if (const auto* submodular = std::get_if<Submodular>(&model)) {
    out << ", \"alpha\": " << format_real(submodular->log_coeff, 17)
        << ", \"beta\": " << format_real(submodular->offset, 17);
  } else if (const auto* capped = std::get_if<Capped>(&model)) {
    out << ", \"cap\": " << format_real(capped->cap, 17)
        << ", \"u0\": " << format_real(capped->unit_value, 17);
  }
  out << "}";
}

void emit_config(std::ostringstream& out, const SimConfig& config, const std::string& indent) {
  out << "{\n";
  out << indent << "  \"params\": ";
  emit_params(out, config.params);
  out << ",\n" << indent << "  \"revenue\": ";
  emit_revenue(out, config.revenue);
  out << ",\n"
      << indent << "  \"initial_honest_users\": " << format_uint(config.initial_honest_users)
      << ",\n"
      << indent
      << "  \"comments_per_user_per_tick\": " << format_uint(config.comments_per_user_per_tick)
      << ",\n"
      << indent << "  \"new_users_per_tick\": " << format_real(config.new_users_per_tick, 17)
      << ",\n"
      << indent << "  \"initial_grant\": " << format_real(config.initial_grant, 17) << ",\n"
      << indent << "  \"admin_validity_prob\": " << format_real(config.admin_validity_prob, 17)
      << ",\n"
      << indent << "  \"epsilon_noise\": " << format_real(config.epsilon_noise, 17) << ",\n"
      << indent << "  \"horizon\": " << format_uint(config.horizon) << ",\n"
      << indent << "  \"seed\": " << format_uint(config.seed) << ",\n"
      << indent << "  \"collapse_epsilon\": " << format_real(config.collapse_epsilon, 17) << ",\n"
      << indent << "  \"collapse_window\": " << format_uint(config.collapse_window) << ",\n"
      << indent << "  \"submodular_average_mode\": "
      << (config.submodular_average_mode ? "true" : "false") << "\n"
      << indent << "}";
}

}  // namespace

std::string format_real(double value, int significant_digits) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, value);
  return buffer;
}

std::string config_to_json(const SimConfig& config) {
  std::ostringstream out;
  emit_config(out, config, "");
  out << "\n";
  return out.str();
}

std::string summary_to_json(const SimConfig& config, const RunResult& result) {
  std::ostringstream out;
  out << "{\n  \"config\": ";
  emit_config(out, config, "  ");
  out << ",\n  \"collapse_tick\": ";
  if (result.collapse_tick.has_value()) {
    out << format_uint(*result.collapse_tick);
  } else {
    out << "null";
  }
  out << ",\n  \"final_total_distributed\": "
      << format_real(result.final_ledger.total_distributed(), 17)
      << ",\n  \"final_participation\": "
      << format_real(result.records.empty() ? 0.0 : result.records.back().participation, 17)
      << "\n}\n";
  return out.str();
}

std::string ledger_to_json(const CreditLedger& ledger) {
  std::ostringstream out;
  out << "{\n  \"model\": ";
  emit_revenue(out, ledger.model());
  out << ",\n  \"initial_grant\": " << format_real(ledger.initial_grant(), 17)
      << ",\n  \"total_distributed\": " << format_real(ledger.total_distributed(), 17)
      << ",\n  \"accounts\": [";
  for (std::size_t i = 0; i < ledger.accounts().size(); ++i) {
    const AgentAccount& account = ledger.accounts()[i];
    out << (i == 0 ? "\n" : ",\n") << "    {\"agent_id\": " << format_uint(account.agent_id)
        << ", \"balance\": " << format_real(account.balance, 17)
        << ", \"valid_reports\": " << format_uint(account.valid_reports)
        << ", \"cumulative_revenue\": " << format_real(account.cumulative_revenue, 17) << "}";
  }
  out << (ledger.accounts().empty() ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

std::string records_to_csv(std::span<const TickRecord> records) {
  std::ostringstream out;
  out << "tick,active_honest,reporters,participation,reports_rewarded,unit_value,"
         "total_distributed,mean_utility\n";
  for (const TickRecord& record : records) {
    out << format_uint(record.tick) << ',' << format_uint(record.active_honest) << ','
        << format_uint(record.reporters) << ',' << format_real(record.participation, 10) << ','
        << format_uint(record.reports_rewarded) << ',' << format_real(record.unit_value, 10)
        << ',' << format_real(record.total_distributed, 10) << ','
        << format_real(record.mean_utility, 10) << '\n';
  }
  return out.str();
}

std::string sweep_to_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "c_r,p,c_p,c_w,r,model,model_params,u_star,n_star,collapse_tick,agree\n";
  for (const SweepRow& row : table) {
    out << format_real(row.params.read_cost, 10) << ','
        << format_real(row.params.malicious_prob, 10) << ','
        << format_real(row.params.mental_cost, 10) << ','
        << format_real(row.params.report_cost, 10) << ','
        << format_real(row.params.report_reward, 10) << ',' << model_tag(row.model) << ',';
    if (const auto* fixed = std::get_if<FixedUnit>(&row.model)) {
      out << "u0=" << format_real(fixed->unit_value, 10);
    } else if (const auto* inflationary = std::get_if<Inflationary>(&row.model)) {
      out << "kappa=" << format_real(inflationary->scale, 10);
    } else if (const auto* submodular = std::get_if<Submodular>(&row.model)) {
      out << "alpha=" << format_real(submodular->log_coeff, 10)
          << ";beta=" << format_real(submodular->offset, 10);
    } else if (const auto* capped = std::get_if<Capped>(&row.model)) {
      out << "cap=" << format_real(capped->cap, 10)
          << ";u0=" << format_real(capped->unit_value, 10);
    }
    out << ',';
    if (!row.error.empty()) {
      out << "error,error,error,error\n";
      continue;
    }
    out << (std::isinf(row.u_star) ? "never" : format_real(row.u_star, 10)) << ',';
    if (!row.n_star.has_value()) {
      out << "na";
    } else if (std::isinf(*row.n_star)) {
      out << "never";
    } else if (*row.n_star == 0.0) {
      out << "always";
    } else {
      out << format_real(*row.n_star, 10);
    }
    out << ',';
    if (!row.collapse_tick.has_value()) {
      out << "na,na\n";
      continue;
    }
    if (row.collapse_tick->has_value()) {
      out << format_uint(**row.collapse_tick);
    } else {
      out << "none";
    }
    out << ',' << (row.agree.value_or(false) ? '1' : '0') << '\n';
  }
  return out.str();
}

std::string limit_profile_to_csv(const LimitProfile& profile) {
  std::ostringstream out;
  out << "n,u\n";
  for (const auto& [n, value] : profile.points) {
    out << format_uint(n) << ',' << format_real(value, 10) << '\n';
  }
  out << "n_max," << format_real(profile.peak_n, 10) << '\n';
  return out.str();
}

ModelParams parse_model_params_json(const std::string& text) {
  const Json document = parse_document(text, "params config");
  ModelParams params = parse_params(document, "params");
  std::vector<std::string> errors;
  validate(params, errors);
  if (!errors.empty()) throw ValidationError(errors);
  return params;
}

SimConfig parse_sim_config_json(const std::string& text) {
  const Json document = parse_document(text, "simulate config");
  const Json& object = require_object(document, "config");
  check_known_keys(object, "", {"params", "revenue", "initial_honest_users",
                                "comments_per_user_per_tick", "new_users_per_tick",
                                "initial_grant", "admin_validity_prob", "epsilon_noise",
                                "horizon", "seed", "collapse_epsilon", "collapse_window",
                                "submodular_average_mode"});
  SimConfig config;
  config.params = parse_params(require_field(object, "", "params"), "params");
  config.revenue = parse_revenue(require_field(object, "", "revenue"), "revenue");
  parse_sim_fields(object, "", config);
  const std::vector<std::string> errors = validate(config);
  if (!errors.empty()) throw ValidationError(errors);
  return config;
}

SweepSpec parse_sweep_spec_json(const std::string& text) {
  const Json document = parse_document(text, "sweep config");
  const Json& object = require_object(document, "config");
  check_known_keys(object, "", {"grid", "sim"});
  const Json& grid = require_object(require_field(object, "", "grid"), "grid");
  check_known_keys(grid, "grid.", {"c_r", "p", "c_p", "c_w", "r", "models"});

  SweepSpec spec;
  auto read_axis = [&grid](const char* key) {
    const Json& axis = require_field(grid, "grid.", key);
    if (!axis.is_array()) fail(std::string("field \"grid.") + key + "\" must be an array");
    std::vector<double> values;
    values.reserve(axis.size());
    for (std::size_t i = 0; i < axis.size(); ++i) {
      values.push_back(as_number(axis[i], "grid." + std::string(key) + "[" + std::to_string(i) + "]"));
    }
    return values;
  };
  spec.grid.read_cost = read_axis("c_r");
  spec.grid.malicious_prob = read_axis("p");
  spec.grid.mental_cost = read_axis("c_p");
  spec.grid.report_cost = read_axis("c_w");
  spec.grid.report_reward = read_axis("r");

  const Json& models = require_field(grid, "grid.", "models");
  if (!models.is_array()) fail("field \"grid.models\" must be an array");
  for (std::size_t i = 0; i < models.size(); ++i) {
    spec.grid.models.push_back(parse_revenue(models[i], "grid.models[" + std::to_string(i) + "]"));
  }

  if (object.contains("sim")) {
    const Json& sim = require_object(object["sim"], "sim");
    check_known_keys(sim, "sim.", kSimFieldKeys);
    SimConfig config;
    parse_sim_fields(sim, "sim.", config);
    // Bounds of the cell-independent fields are checked once, with benign
    // placeholders for the per-cell values.
    config.params = ModelParams{0.0, 0.5, 0.0, 0.0, 1.0};
    config.revenue = FixedUnit{1.0};
    const std::vector<std::string> errors = validate(config);
    if (!errors.empty()) throw ValidationError(errors);
    spec.sim_template = config;
  }
  return spec;
}

CreditLedger parse_ledger_json(const std::string& text) {
  const Json document = parse_document(text, "ledger snapshot");
  const Json& object = require_object(document, "ledger");
  check_known_keys(object, "", {"model", "initial_grant", "total_distributed", "accounts"});
  const RevenueModel model = parse_revenue(require_field(object, "", "model"), "model");
  const double initial_grant = require_number(object, "", "initial_grant");
  const double total_distributed = require_number(object, "", "total_distributed");
  const Json& accounts_json = require_field(object, "", "accounts");
  if (!accounts_json.is_array()) fail("field \"accounts\" must be an array");
  std::vector<AgentAccount> accounts;
  accounts.reserve(accounts_json.size());
  for (std::size_t i = 0; i < accounts_json.size(); ++i) {
    const std::string path = "accounts[" + std::to_string(i) + "]";
    const Json& entry = require_object(accounts_json[i], path);
    check_known_keys(entry, path + ".",
                     {"agent_id", "balance", "valid_reports", "cumulative_revenue"});
    AgentAccount account;
    account.agent_id = require_uint(entry, path + ".", "agent_id");
    account.balance = require_number(entry, path + ".", "balance");
    account.valid_reports = require_uint(entry, path + ".", "valid_reports");
    account.cumulative_revenue = require_number(entry, path + ".", "cumulative_revenue");
    accounts.push_back(account);
  }
  return CreditLedger::restore(model, initial_grant, total_distributed, std::move(accounts));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write file: " + path);
  out << content;
}

}  // namespace credsim
