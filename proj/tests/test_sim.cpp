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

#include <cmath>
#include <string>
#include <vector>

#include "credsim/analysis.hpp"
#include "credsim/io.hpp"
#include "doctest.h"

namespace credsim {
namespace {

// threshold 0.55
const ModelParams kReference{0.5, 0.2, 2.0, 1.0, 10.0};

SimConfig base_config() {
  SimConfig config;
  config.params = kReference;
  config.revenue = FixedUnit{1.0};
  config.initial_honest_users = 10;
  config.horizon = 50;
  config.seed = 1u;
  return config;
}

TEST_CASE("world initialization seeds the ledger") {
  SimConfig config = base_config();
  config.initial_grant = 5.0;
  Simulation sim(config);
  CHECK(sim.ledger().size() == 10);
  CHECK(sim.ledger().total_distributed() == 50.0);

  config.initial_grant = 0.0;
  CHECK(Simulation(config).ledger().total_distributed() == 0.0);
}

TEST_CASE("invalid configs are rejected with every violation listed") {
  SimConfig config = base_config();
  config.params.malicious_prob = 2.0;
  config.horizon = 0;
  config.epsilon_noise = -0.5;
  config.collapse_epsilon = 1.5;
  CHECK_THROWS_AS(Simulation{config}, ValidationError);
  try {
    Simulation sim(config);
  } catch (const ValidationError& error) {
    CHECK(error.violations().size() == 4);
    CHECK(std::string(error.what()).find("horizon") != std::string::npos);
  }
}

TEST_CASE("horizon bounds") {
  SimConfig config = base_config();
  config.horizon = 1;
  CHECK(run(config).records.size() == 1);
}

TEST_CASE("worthless credits mean nobody reports") {
  SimConfig config = base_config();
  config.revenue = FixedUnit{0.0};
  for (const TickRecord& record : run(config).records) {
    CHECK(record.reporters == 0);
    CHECK(record.participation == 0.0);
  }
}

TEST_CASE("unit value above threshold keeps everyone reporting") {
  const RunResult result = run(base_config());  // u0 = 1 > 0.55
  for (const TickRecord& record : result.records) {
    CHECK(record.participation == 1.0);
  }
  CHECK(!result.collapse_tick.has_value());
}

TEST_CASE("runs are pure functions of the config") {
  SimConfig config = base_config();
  config.revenue = Inflationary{50.0};
  config.new_users_per_tick = 0.25;
  config.initial_grant = 1.0;
  const RunResult first = run(config);
  const RunResult second = run(config);
  CHECK(records_to_csv(first.records) == records_to_csv(second.records));
  CHECK(summary_to_json(config, first) == summary_to_json(config, second));
}

TEST_CASE("inflationary participation flips exactly at the predicted total") {
  SimConfig config = base_config();
  config.revenue = Inflationary{100.0};
  config.horizon = 400;
  config.seed = 77u;
  const double collapse_credits = predicted_collapse_credits(kReference, 100.0);
  CHECK(collapse_credits == doctest::Approx(181.81818181818181).epsilon(1e-12));

  const RunResult result = run(config);
  bool crossed = false;
  for (const TickRecord& record : result.records) {
    const bool rational = record.total_distributed < collapse_credits;
    CHECK(record.participation == (rational ? 1.0 : 0.0));
    if (!rational) crossed = true;
  }
  CHECK(crossed);
  CHECK(result.collapse_tick.has_value());
}

TEST_CASE("capped economies push every agent to the cap and then collapse") {
  SimConfig config = base_config();
  config.revenue = Capped{40.0, 1.0};
  config.horizon = 600;
  config.seed = 5u;
  Simulation sim(config);
  for (std::uint64_t t = 0; t < config.horizon; ++t) {
    sim.step();
    for (const AgentAccount& account : sim.ledger().accounts()) {
      // With no initial grant, balances march to the cap in full rewards.
      CHECK(account.balance ==
            std::min(40.0, 10.0 * static_cast<double>(account.valid_reports)));
    }
  }
  for (const AgentAccount& account : sim.ledger().accounts()) {
    CHECK(account.balance == 40.0);
  }
  const RunResult result = run(config);
  CHECK(result.collapse_tick.has_value());
}

TEST_CASE("submodular reporting stops at the marginal-revenue cutoff") {
  SimConfig config = base_config();
  config.params.report_reward = 1.0;  // threshold 0.55 / r = 1 keeps units aligned
  config.params.read_cost = 0.05;
  config.params.malicious_prob = 1.0;
  config.params.mental_cost = 0.2;
  config.params.report_cost = 0.3;
  // threshold = 0.05/1 + 0.5/1 = 0.55
  config.revenue = Submodular{1.0, 2.0};
  config.horizon = 30;

  // Independent recurrence: with p = q = 1 and m = 1 every agent's report
  // count equals the tick index, so reporting lasts while the marginal
  // revenue of the next report beats r * threshold.
  const double u_star = 0.55;
  std::uint64_t expected_stop = 0;
  while (true) {
    const double marginal =
        expected_stop == 0 ? 2.0 : std::log(static_cast<double>(expected_stop) + 1.0) -
                                       std::log(static_cast<double>(expected_stop));
    if (!(marginal > u_star)) break;
    ++expected_stop;
  }
  CHECK(expected_stop == 2);  // ln(3/2) < 0.55 < ln 2

  const RunResult result = run(config);
  for (const TickRecord& record : result.records) {
    CHECK(record.participation == (record.tick < expected_stop ? 1.0 : 0.0));
  }

  SUBCASE("average mode keeps agents longer") {
    config.submodular_average_mode = true;
    std::uint64_t average_stop = 1;
    while ((std::log(static_cast<double>(average_stop)) + 2.0) /
               static_cast<double>(average_stop) >
           u_star) {
      ++average_stop;
    }
    CHECK(average_stop == 8);
    const RunResult average_result = run(config);
    for (const TickRecord& record : average_result.records) {
      CHECK(record.participation == (record.tick < average_stop ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("within a tick all comments decide on the snapshot value") {
  SimConfig config = base_config();
  config.params.malicious_prob = 1.0;
  config.revenue = Capped{10.0, 1.0};
  config.comments_per_user_per_tick = 3;
  config.initial_honest_users = 4;
  config.horizon = 2;
  Simulation sim(config);

  const TickRecord first = sim.step();
  CHECK(first.reporters == 4);
  CHECK(first.reports_rewarded == 12);  // the cap does not stop processing
  for (const AgentAccount& account : sim.ledger().accounts()) {
    CHECK(account.balance == 10.0);  // only the first reward paid credits
    CHECK(account.valid_reports == 3);
  }
  const TickRecord second = sim.step();
  CHECK(second.reporters == 0);
}

TEST_CASE("fractional arrivals accumulate deterministically") {
  SimConfig config = base_config();
  config.initial_honest_users = 2;
  config.new_users_per_tick = 0.5;
  config.horizon = 6;
  const RunResult result = run(config);
  const std::vector<std::uint64_t> expected{2, 3, 3, 4, 4, 5};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(result.records[i].active_honest == expected[i]);
  }
}

TEST_CASE("seed changes draws but not the rational trajectory") {
  SimConfig config = base_config();
  config.params.malicious_prob = 0.3;
  config.horizon = 100;
  config.seed = 11u;
  const RunResult first = run(config);
  config.seed = 12u;
  const RunResult second = run(config);
  bool saw_different_utility = false;
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    CHECK(first.records[i].participation == second.records[i].participation);
    if (first.records[i].mean_utility != second.records[i].mean_utility) {
      saw_different_utility = true;
    }
  }
  CHECK(saw_different_utility);
}

TEST_CASE("noisy agents keep a degraded participation alive") {
  SimConfig config = base_config();
  config.revenue = FixedUnit{0.0};  // rational play would be zero participation
  config.epsilon_noise = 1.0;
  config.initial_honest_users = 200;
  config.horizon = 20;
  for (const TickRecord& record : run(config).records) {
    CHECK(record.participation > 0.3);
    CHECK(record.participation < 0.7);
    CHECK(record.reporters <= record.active_honest);
  }
}

TEST_CASE("admin processing thins rewards like a smaller grant in expectation") {
  SimConfig thinned = base_config();
  thinned.params = ModelParams{0.1, 0.5, 0.1, 0.1, 10.0};
  thinned.revenue = FixedUnit{1.0};
  thinned.admin_validity_prob = 0.5;
  thinned.initial_honest_users = 5;
  thinned.horizon = 4000;
  thinned.seed = 2024u;

  SimConfig rescaled = thinned;
  rescaled.params.report_reward = 5.0;
  rescaled.admin_validity_prob = 1.0;

  // Both worlds book p * q * r * u0 of revenue per comment in expectation,
  // net of the same expected costs.
  const double expected_mean = -0.1 + 0.5 * (0.5 * 10.0 * 1.0 - 0.2);
  auto overall_mean = [](const RunResult& result) {
    double sum = 0.0;
    for (const TickRecord& record : result.records) sum += record.mean_utility;
    return sum / static_cast<double>(result.records.size());
  };
  const double thinned_se = std::sqrt(18.26 / (4000.0 * 5.0));
  const double rescaled_se = std::sqrt(5.76 / (4000.0 * 5.0));
  CHECK(std::abs(overall_mean(run(thinned)) - expected_mean) <= 3.0 * thinned_se);
  CHECK(std::abs(overall_mean(run(rescaled)) - expected_mean) <= 3.0 * rescaled_se);
}

TEST_CASE("collapse window rule") {
  auto make_records = [](const std::vector<double>& participation) {
    std::vector<TickRecord> records(participation.size());
    for (std::size_t i = 0; i < participation.size(); ++i) {
      records[i].tick = i;
      records[i].participation = participation[i];
    }
    return records;
  };

  SUBCASE("full window found") {
    const auto records = make_records({1, 1, 0, 0, 0, 0});
    CHECK(find_collapse_tick(records, 0.01, 3) == 2);
  }
  SUBCASE("tail shorter than the window does not collapse") {
    const auto records = make_records({1, 1, 1, 1, 0, 0});
    CHECK(!find_collapse_tick(records, 0.01, 3).has_value());
  }
  SUBCASE("recovery resets the window") {
    const auto records = make_records({0, 0, 1, 0, 0, 0});
    CHECK(find_collapse_tick(records, 0.01, 3) == 3);
  }
  SUBCASE("threshold is strict") {
    const auto records = make_records({0.01, 0.01, 0.01});
    CHECK(!find_collapse_tick(records, 0.01, 3).has_value());
    CHECK(find_collapse_tick(records, 0.011, 3) == 0);
  }
}

}  // namespace
}  // namespace credsim
