#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <sstream>

#include "doctest.h"
#include "scenarios.hpp"
#include "trustsim/cli.hpp"
#include "trustsim/engine.hpp"
#include "trustsim/trust.hpp"

using namespace trustsim;
using agents::DecisionStage;
using engine::EntityKind;

namespace {

std::string trajectories_text(const engine::SimulationReport& report) {
  std::ostringstream out;
  cli::write_trajectories_csv(report, out);
  return out.str();
}

}  // namespace

TEST_CASE("init_world starts every ledger at the initial trust") {
  auto config = testutil::two_user_scenario();
  auto world = engine::init_world(config);

  REQUIRE(world.users.size() == 2);
  REQUIRE(world.domains.size() == 2);
  for (const auto& u : world.users) {
    CHECK(u.ledger.value == 1.0);
    CHECK(u.ledger.total_count == 0);
    CHECK(u.status == agents::UserStatus::Active);
    CHECK(u.strikes == 0);
  }
  for (const auto& d : world.domains) {
    CHECK(d.ledger.value == 1.0);
    CHECK(d.ledger.total_count == 0);
  }
}

TEST_CASE("initial trust override propagates to the ledgers") {
  auto config = testutil::two_user_scenario();
  config.user_layer.initial_trust = 0.5;
  config.domain_layer.initial_trust = 0.5;
  auto world = engine::init_world(config);
  for (const auto& u : world.users) CHECK(u.ledger.value == 0.5);
  for (const auto& d : world.domains) CHECK(d.ledger.value == 0.5);
}

TEST_CASE("init_world rejects a user referencing a missing domain") {
  auto config = testutil::two_user_scenario();
  config.users[1].domain_id = "nowhere";
  CHECK_THROWS_WITH_AS(engine::init_world(config),
                       doctest::Contains("domain"), ConfigError);
}

TEST_CASE("runs are deterministic in config and seed") {
  auto config = testutil::two_user_scenario(1234);
  auto a = engine::run(config);
  auto b = engine::run(config);
  CHECK(trajectories_text(a) == trajectories_text(b));
  CHECK(a.audit == b.audit);

  auto c = engine::run(testutil::two_user_scenario(1235));
  CHECK(trajectories_text(a) != trajectories_text(c));
}

TEST_CASE("forced all-positive trusted user holds a constant value") {
  auto config = testutil::two_user_scenario();
  config.users.resize(1);
  config.users[0].type.p_positive = 1.0;
  config.request_count = 10;
  auto report = engine::run(config);

  CHECK(report.metrics.stage_count(DecisionStage::Delivered) == 10);
  for (const auto& point : report.trajectories) {
    if (point.entity_kind != EntityKind::User) continue;
    CHECK(point.value == doctest::Approx(0.9).epsilon(1e-12));
  }
  CHECK_FALSE(engine::time_to_threshold(report, "u_trusted").has_value());
}

TEST_CASE("stage counts sum to the request count") {
  for (std::uint64_t seed : {1ull, 7ull, 99ull, 1234ull}) {
    auto report = engine::run(testutil::two_user_scenario(seed));
    CHECK(report.metrics.total_requests() == 150);
    CHECK(report.decisions.size() == 150);
  }
}

TEST_CASE("trajectory values stay in bounds and replay to the same curve") {
  auto report = engine::run(testutil::three_user_scenario(150, 5));

  std::map<std::string, std::vector<trust::ActionClass>> actions;
  std::map<std::string, std::vector<double>> values;
  for (const auto& point : report.trajectories) {
    CHECK(point.value >= 0.0);
    CHECK(point.value <= 1.0);
    if (point.entity_kind == EntityKind::User && point.action) {
      actions[point.entity_id].push_back(*point.action);
      values[point.entity_id].push_back(point.value);
    }
  }

  for (const auto& [user_id, history] : actions) {
    auto replayed = trust::replay(history, report.config.user_layer);
    REQUIRE(replayed.size() == values[user_id].size());
    for (std::size_t i = 0; i < replayed.size(); ++i) {
      CHECK(std::abs(replayed[i] - values[user_id][i]) <= 1e-12);
    }
  }
}

TEST_CASE("after removal a user never delivers again") {
  // scan many seeds; each removal must silence the user for good
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto report = engine::run(testutil::three_user_scenario(150, seed));
    for (const auto& removal : report.metrics.removals) {
      for (const auto& point : report.trajectories) {
        if (point.entity_id != removal.user_id ||
            point.entity_kind != EntityKind::User) {
          continue;
        }
        if (point.iteration > removal.request_id) {
          CHECK(point.decision == DecisionStage::DroppedRemovedUser);
        }
      }
    }
  }
}

TEST_CASE("time_to_threshold finds the first failing iteration") {
  auto config = testutil::two_user_scenario();
  config.users.resize(1);
  config.users[0].type.p_positive = 0.0;  // first action is malicious
  config.request_count = 5;
  config.removal = {0, false};  // keep them active to watch the value
  auto report = engine::run(config);

  auto crossing = engine::time_to_threshold(report, "u_trusted");
  REQUIRE(crossing.has_value());
  CHECK(*crossing == 1);

  CHECK_FALSE(engine::time_to_threshold(report, "nobody").has_value());
}

TEST_CASE("metrics echo the final ledger values") {
  auto config = testutil::two_user_scenario(77);
  auto report = engine::run(config);
  REQUIRE(report.metrics.final_user_trust.size() == 2);
  for (const auto& [user_id, value] : report.metrics.final_user_trust) {
    CHECK(value == report.final_world.find_user(user_id)->ledger.value);
  }
  REQUIRE(report.metrics.final_domain_trust.size() == 2);
  for (const auto& [domain_id, value] : report.metrics.final_domain_trust) {
    CHECK(value == report.final_world.find_domain(domain_id)->ledger.value);
  }
}

TEST_CASE("every negative execution yields exactly one report and strike") {
  for (std::uint64_t seed : {2ull, 13ull, 77ull}) {
    auto report = engine::run(testutil::two_user_scenario(seed));

    std::uint64_t negatives_delivered = 0;
    for (const auto& decision : report.decisions) {
      if (decision.action && trust::is_negative(*decision.action)) {
        ++negatives_delivered;
      }
    }
    std::uint64_t reports = 0, strikes = 0, ignored = 0;
    for (const auto& event : report.audit) {
      if (event.step == agents::ProtocolStep::ViolationReported) ++reports;
      if (event.step == agents::ProtocolStep::StrikeRecorded) ++strikes;
      if (event.step == agents::ProtocolStep::ReportIgnored) ++ignored;
    }
    CHECK(reports == negatives_delivered);
    CHECK(strikes == negatives_delivered);
    CHECK(ignored == 0);

    std::uint64_t total_strikes = 0;
    for (const auto& u : report.final_world.users) {
      total_strikes += static_cast<std::uint64_t>(u.strikes);
    }
    CHECK(total_strikes == negatives_delivered);
  }
}

TEST_CASE("one user row per request, domain rows only past the broker") {
  auto report = engine::run(testutil::two_user_scenario(31));
  std::map<std::uint64_t, int> user_rows;
  for (const auto& point : report.trajectories) {
    if (point.entity_kind == EntityKind::User) {
      user_rows[point.iteration]++;
    } else {
      bool provider_side =
          point.decision == DecisionStage::DroppedDomainTrust ||
          point.decision == DecisionStage::Delivered;
      CHECK(provider_side);
    }
  }
  CHECK(user_rows.size() == 150);
  for (const auto& [iteration, count] : user_rows) {
    CHECK(count == 1);
  }
}
