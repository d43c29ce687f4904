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

#include "credsim/ledger.hpp"

#include <algorithm>
#include <cmath>

namespace credsim {

namespace {

void check_bound(std::vector<std::string>& errors, bool ok, const std::string& msg) {
  if (!ok) errors.push_back(msg);
}

}  // namespace

const char* model_tag(const RevenueModel& model) {
  struct Visitor {
    const char* operator()(const FixedUnit&) const { return "fixed_unit"; }
    const char* operator()(const Inflationary&) const { return "inflationary"; }
    const char* operator()(const Submodular&) const { return "submodular"; }
    const char* operator()(const Capped&) const { return "capped"; }
  };
  return std::visit(Visitor{}, model);
}

void validate(const RevenueModel& model, std::vector<std::string>& errors) {
  if (const auto* fixed = std::get_if<FixedUnit>(&model)) {
    check_bound(errors, std::isfinite(fixed->unit_value) && fixed->unit_value >= 0.0,
                "revenue.u0 must be finite and >= 0");
  } else if (const auto* inflationary = std::get_if<Inflationary>(&model)) {
    check_bound(errors, std::isfinite(inflationary->scale) && inflationary->scale > 0.0,
                "revenue.kappa must be finite and > 0");
  } else if (const auto* submodular = std::get_if<Submodular>(&model)) {
    check_bound(errors,
                std::isfinite(submodular->log_coeff) && submodular->log_coeff > 0.0,
                "revenue.alpha must be finite and > 0");
    check_bound(errors, std::isfinite(submodular->offset), "revenue.beta must be finite");
  } else if (const auto* capped = std::get_if<Capped>(&model)) {
    check_bound(errors, std::isfinite(capped->cap) && capped->cap > 0.0,
                "revenue.cap must be finite and > 0");
    check_bound(errors, std::isfinite(capped->unit_value) && capped->unit_value >= 0.0,
                "revenue.u0 must be finite and >= 0");
  }
}

double marginal_revenue(const Submodular& model, std::uint64_t reports) {
  if (reports == 0) {
    throw std::domain_error("marginal_revenue requires at least one prior report");
  }
  // ln(n+1) - ln(n), computed without cancellation.
  return model.log_coeff * std::log1p(1.0 / static_cast<double>(reports));
}

CreditLedger::CreditLedger(RevenueModel model, double initial_grant)
    : model_(std::move(model)), initial_grant_(initial_grant) {}

AgentAccount& CreditLedger::register_user() {
  AgentAccount account;
  account.agent_id = static_cast<std::uint64_t>(accounts_.size());
  account.balance = initial_grant_;
  accounts_.push_back(account);
  total_distributed_ += initial_grant_;
  return accounts_.back();
}

GrantResult CreditLedger::grant_for_report(std::uint64_t agent_id, double reward_credits) {
  if (agent_id >= accounts_.size()) {
    throw std::out_of_range("grant_for_report: unknown agent id " + std::to_string(agent_id));
  }
  AgentAccount& account = accounts_[agent_id];

  GrantResult result;
  if (const auto* submodular = std::get_if<Submodular>(&model_)) {
    result.credits_granted = reward_credits;
    const double marginal = account.valid_reports == 0
                                ? submodular->offset
                                : marginal_revenue(*submodular, account.valid_reports);
    result.revenue_delta = std::max(marginal, 0.0);
  } else if (const auto* capped = std::get_if<Capped>(&model_)) {
    result.credits_granted = std::min(reward_credits, std::max(capped->cap - account.balance, 0.0));
    result.revenue_delta = reward_credits * unit_value(account);
  } else {
    result.credits_granted = reward_credits;
    result.revenue_delta = reward_credits * unit_value(account);
  }

  account.balance += result.credits_granted;
  account.valid_reports += 1;
  account.cumulative_revenue += result.revenue_delta;
  total_distributed_ += result.credits_granted;
  return result;
}

double CreditLedger::unit_value(const AgentAccount& account) const {
  struct Visitor {
    const CreditLedger& ledger;
    const AgentAccount& account;

    double operator()(const FixedUnit& fixed) const { return fixed.unit_value; }
    double operator()(const Inflationary& inflationary) const {
      // Floor N at 1 so an empty economy has a defined value; the first
      // granted credit immediately dominates.
      return inflationary.scale / std::max(ledger.total_distributed_, 1.0);
    }
    double operator()(const Submodular& submodular) const {
      if (account.valid_reports == 0) {
        return std::max(submodular.offset, 0.0);
      }
      const double n = static_cast<double>(account.valid_reports);
      const double average = (submodular.log_coeff * std::log(n) + submodular.offset) / n;
      return std::max(average, 0.0);
    }
    double operator()(const Capped& capped) const {
      return account.balance < capped.cap ? capped.unit_value : 0.0;
    }
  };
  return std::visit(Visitor{*this, account}, model_);
}

const AgentAccount& CreditLedger::account(std::uint64_t agent_id) const {
  if (agent_id >= accounts_.size()) {
    throw std::out_of_range("account: unknown agent id " + std::to_string(agent_id));
  }
  return accounts_[agent_id];
}

double CreditLedger::sum_of_balances() const {
  double sum = 0.0;
  for (const AgentAccount& account : accounts_) sum += account.balance;
  return sum;
}

CreditLedger CreditLedger::restore(RevenueModel model, double initial_grant,
                                   double total_distributed,
                                   std::vector<AgentAccount> accounts) {
  CreditLedger ledger(std::move(model), initial_grant);
  ledger.total_distributed_ = total_distributed;
  ledger.accounts_ = std::move(accounts);
  return ledger;
}

}  // namespace credsim
