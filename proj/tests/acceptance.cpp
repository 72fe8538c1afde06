// Acceptance suite: end-to-end checks over the library and CLI, one printed
// pass/fail line per criterion.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "scenarios.hpp"
#include "trustsim/cli.hpp"
#include "trustsim/engine.hpp"
#include "trustsim/store.hpp"
#include "trustsim/sweep.hpp"
#include "trustsim/trust.hpp"

using namespace trustsim;
using trust::ActionClass;
using trust::LayerParams;

#ifndef TRUSTSIM_CONFIG_DIR
#define TRUSTSIM_CONFIG_DIR "configs"
#endif

namespace {

// Prints the criterion verdict even when a REQUIRE aborts the test body.
struct Criterion {
  const char* name;
  bool passed = false;
  explicit Criterion(const char* name) : name(name) {}
  ~Criterion() {
    std::printf("[acceptance] %s: %s\n", name, passed ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
};

std::vector<ActionClass> random_history(Rng& rng, std::size_t max_len) {
  std::size_t n = rng.next_index(max_len + 1);
  std::vector<ActionClass> h;
  h.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (rng.next_index(3)) {
      case 0: h.push_back(ActionClass::Positive); break;
      case 1: h.push_back(ActionClass::Wrong); break;
      default: h.push_back(ActionClass::Malicious); break;
    }
  }
  return h;
}

LayerParams random_params(Rng& rng) {
  LayerParams p;
  p.w_positive = rng.next_unit();
  p.w_wrong = rng.next_unit();
  p.w_malicious = rng.next_unit();
  p.m = 1.0 + rng.next_index(3);
  p.threshold = 0.5 * rng.next_unit();
  return p;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path fresh_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("trustsim_acc_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("C1 reference trust table") {
  Criterion criterion("C1 reference-trust-table");

  const auto params = LayerParams::two_weight(1.0, 0.8, 1.0, 0.1);
  const std::vector<ActionClass> actions = {
      ActionClass::Positive, ActionClass::Malicious, ActionClass::Positive,
      ActionClass::Malicious, ActionClass::Malicious};
  const double expected[] = {1.0, 0.4, 2.0 / 3.0, 0.4, 0.32};
  const char* display[] = {"1", "0.4", "0.7", "0.4", "0.3"};

  auto values = trust::replay(actions, params);
  REQUIRE(values.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(std::abs(values[i] - expected[i]) <= 1e-12);
    REQUIRE(trust::format_value_1dp(values[i]) == display[i]);
  }
  criterion.passed = true;
}

TEST_CASE("C2 incremental updates match replay and the direct formula") {
  Criterion criterion("C2 oracle-equivalence");

  Rng rng(20240);
  int mismatches = 0;
  for (int round = 0; round < 1000; ++round) {
    const auto p = random_params(rng);
    const auto history = random_history(rng, 200);
    const auto replayed = trust::replay(history, p);

    auto ledger = trust::fresh_ledger(p);
    std::uint64_t negatives = 0;
    for (std::size_t i = 0; i < history.size(); ++i) {
      ledger = trust::update_trust(ledger, history[i], p);
      if (trust::is_negative(history[i])) ++negatives;
      const double direct = trust::action_value(
          negatives, i + 1, trust::action_weight(history[i], p), p.m);
      if (std::abs(ledger.value - replayed[i]) > 1e-12) ++mismatches;
      if (std::abs(ledger.value - direct) > 1e-12) ++mismatches;
    }
  }
  REQUIRE(mismatches == 0);
  criterion.passed = true;
}

TEST_CASE("C3 values stay in [0,1] and counters stay ordered") {
  Criterion criterion("C3 value-bounds");

  Rng rng(20241);
  int violations = 0;
  for (int round = 0; round < 1000; ++round) {
    const auto p = random_params(rng);
    const auto history = random_history(rng, 200);
    auto ledger = trust::fresh_ledger(p);
    for (ActionClass a : history) {
      ledger = trust::update_trust(ledger, a, p);
      if (!(ledger.value >= 0.0 && ledger.value <= 1.0)) ++violations;
      if (ledger.negative_count > ledger.total_count) ++violations;
    }
  }
  REQUIRE(violations == 0);
  criterion.passed = true;
}

TEST_CASE("C4 protocol safety over 200 seeded runs") {
  Criterion criterion("C4 protocol-safety");

  int violations = 0;
  std::array<std::uint64_t, agents::kStageCount> corpus_stages{};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto config = testutil::two_user_scenario(seed);
    const auto report = engine::run(config);
    for (std::size_t s = 0; s < agents::kStageCount; ++s) {
      corpus_stages[s] += report.metrics.stage_counts[s];
    }

    // (b) stage conservation
    if (report.metrics.total_requests() !=
        static_cast<std::uint64_t>(config.request_count)) {
      ++violations;
    }
    if (report.decisions.size() !=
        static_cast<std::size_t>(config.request_count)) {
      ++violations;
    }

    // gate instrumentation from the audit log
    struct GatePasses {
      bool auth = false, user = false, domain = false;
    };
    std::map<std::uint64_t, GatePasses> gates;
    for (const auto& event : report.audit) {
      if (event.detail != "pass") continue;
      if (event.step == agents::ProtocolStep::ProxyAuthCheck) {
        gates[event.request_id].auth = true;
      } else if (event.step == agents::ProtocolStep::UserTrustResult) {
        gates[event.request_id].user = true;
      } else if (event.step == agents::ProtocolStep::DomainTrustResult) {
        gates[event.request_id].domain = true;
      }
    }

    // independently folded ledgers, strikes and removals
    std::map<std::string, trust::TrustLedger> user_ledgers;
    std::map<std::string, trust::TrustLedger> domain_ledgers;
    std::map<std::string, std::string> domain_of;
    std::map<std::string, int> strikes;
    std::set<std::string> removed;
    for (const auto& u : config.users) {
      user_ledgers[u.user_id] = trust::fresh_ledger(config.user_layer);
      domain_of[u.user_id] = u.domain_id;
    }
    for (const auto& d : config.domains) {
      domain_ledgers[d] = trust::fresh_ledger(config.domain_layer);
    }
    std::map<std::string, std::uint64_t> removed_at;
    for (const auto& removal : report.metrics.removals) {
      removed_at[removal.user_id] = removal.request_id;
    }

    std::map<std::uint64_t, const engine::TrajectoryPoint*> user_rows;
    for (const auto& point : report.trajectories) {
      if (point.entity_kind == engine::EntityKind::User) {
        if (user_rows.count(point.iteration)) ++violations;  // one per request
        user_rows[point.iteration] = &point;
      }
    }

    for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(config.request_count); ++i) {
      const auto& decision = report.decisions[i - 1];
      auto row_it = user_rows.find(i);
      if (row_it == user_rows.end()) {
        ++violations;
        continue;
      }
      const auto& row = *row_it->second;
      const std::string& user_id = row.entity_id;
      auto& user_ledger = user_ledgers[user_id];
      auto& domain_ledger = domain_ledgers[domain_of[user_id]];

      if (decision.stage == agents::DecisionStage::Delivered) {
        // (a) all three gates must have passed, on trust values that were
        // above the thresholds at gate time
        const auto& g = gates[i];
        if (!(g.auth && g.user && g.domain)) ++violations;
        if (!(user_ledger.value > config.user_layer.threshold)) ++violations;
        if (!(domain_ledger.value > config.domain_layer.threshold)) {
          ++violations;
        }
        if (removed.contains(user_id)) ++violations;

        if (!decision.action) {
          ++violations;
          continue;
        }
        domain_ledger =
            trust::update_trust(domain_ledger, *decision.action,
                                config.domain_layer);
        user_ledger = trust::update_trust(user_ledger, *decision.action,
                                          config.user_layer);
        if (trust::is_negative(*decision.action) && !removed.contains(user_id)) {
          strikes[user_id] += 1;
          const bool by_strikes = config.removal.strike_limit > 0 &&
                                  strikes[user_id] >= config.removal.strike_limit;
          const bool by_threshold =
              config.removal.threshold_trigger &&
              user_ledger.value <= config.user_layer.threshold;
          if (by_strikes || by_threshold) removed.insert(user_id);
        }
        if (row.value != user_ledger.value) ++violations;
      } else {
        // (d) drops mutate nothing: the sampled value must be exactly the
        // value of the independent fold, which no drop ever advances
        if (decision.action) ++violations;
        if (row.value != user_ledger.value) ++violations;

        // (c) removed users only ever resolve as dropped_removed_user
        auto removed_it = removed_at.find(user_id);
        if (removed_it != removed_at.end() && i > removed_it->second &&
            decision.stage != agents::DecisionStage::DroppedRemovedUser) {
          ++violations;
        }
      }
    }

    // final world must equal the independent fold exactly
    for (const auto& u : report.final_world.users) {
      const auto& expected = user_ledgers[u.user_id];
      if (u.ledger.value != expected.value ||
          u.ledger.total_count != expected.total_count ||
          u.ledger.negative_count != expected.negative_count) {
        ++violations;
      }
      const bool expect_removed = removed.contains(u.user_id);
      if ((u.status == agents::UserStatus::Removed) != expect_removed) {
        ++violations;
      }
    }
    for (const auto& d : report.final_world.domains) {
      if (d.ledger.value != domain_ledgers[d.domain_id].value) ++violations;
    }
  }

  REQUIRE(violations == 0);

  // the corpus must actually exercise the stages these checks protect
  auto exercised = [&](agents::DecisionStage s) {
    return corpus_stages[static_cast<std::size_t>(s)] > 0;
  };
  REQUIRE(exercised(agents::DecisionStage::Delivered));
  REQUIRE(exercised(agents::DecisionStage::DroppedUserTrust));
  REQUIRE(exercised(agents::DecisionStage::DroppedRemovedUser));

  criterion.passed = true;
}

TEST_CASE("C5 kind-level orderings over a 500-seed sweep") {
  Criterion criterion("C5 user-kind-orderings");

  auto base = testutil::three_user_scenario(150);
  auto results = sweep::run_sweep_parallel(base, 0, 500);
  auto summary = sweep::summarize(
      results, static_cast<std::uint64_t>(base.request_count) + 1);
  REQUIRE(summary.size() == 3);

  const auto& trusted = summary[0];
  const auto& innocent = summary[1];
  const auto& nontrusted = summary[2];
  REQUIRE(trusted.kind == behavior::UserKind::Trusted);
  REQUIRE(innocent.kind == behavior::UserKind::Innocent);
  REQUIRE(nontrusted.kind == behavior::UserKind::NonTrusted);

  // mean final trust is ordered by how well each kind behaves
  REQUIRE(trusted.mean_final_trust > innocent.mean_final_trust);
  REQUIRE(innocent.mean_final_trust > nontrusted.mean_final_trust);

  // hostile users hit the gate earlier and almost always; the censored mean
  // counts never-crossed samples at one past the run length, so it is free
  // of the crossers-only selection bias
  REQUIRE(nontrusted.crossed > 0);
  REQUIRE(innocent.crossed > 0);
  REQUIRE(nontrusted.mean_time_censored < innocent.mean_time_censored);
  REQUIRE(nontrusted.crossed_fraction >= 0.90);

  criterion.passed = true;
}

TEST_CASE("C6 run command output is byte-identical per seed") {
  Criterion criterion("C6 run-determinism");

  const std::filesystem::path config_path =
      std::filesystem::path(TRUSTSIM_CONFIG_DIR) / "two_users_150.json";
  auto dir = fresh_dir("determinism");
  std::ostringstream out, err;

  cli::RunOptions first{config_path, 1337, dir / "first"};
  cli::RunOptions second{config_path, 1337, dir / "second"};
  REQUIRE(cli::cmd_run(first, out, err) == cli::kExitOk);
  REQUIRE(cli::cmd_run(second, out, err) == cli::kExitOk);

  const auto a = read_text(dir / "first" / "trajectories.csv");
  const auto b = read_text(dir / "second" / "trajectories.csv");
  REQUIRE(!a.empty());
  REQUIRE(a == b);
  criterion.passed = true;
}

TEST_CASE("C7 trust tables survive 500 save/load round trips") {
  Criterion criterion("C7 store-roundtrip");

  Rng rng(777);
  int mismatches = 0;
  for (int round = 0; round < 500; ++round) {
    store::TrustTableSnapshot snapshot;
    snapshot.kind =
        rng.next_index(2) == 0 ? store::TableKind::UTT : store::TableKind::DTT;
    const std::size_t n = rng.next_index(10);
    for (std::size_t i = 0; i < n; ++i) {
      store::TableEntry e;
      e.entity_id = "e" + std::to_string(i);
      e.total_count = rng.next_index(1000);
      e.negative_count =
          e.total_count == 0 ? 0 : rng.next_index(e.total_count + 1);
      e.value = rng.next_unit();
      if (snapshot.kind == store::TableKind::UTT) {
        e.status = rng.next_index(2) == 0 ? agents::UserStatus::Active
                                          : agents::UserStatus::Removed;
        e.strikes = static_cast<int>(rng.next_index(6));
      }
      snapshot.entries.push_back(std::move(e));
    }

    std::stringstream buffer;
    store::save_tables(snapshot, buffer);
    if (!(store::load_tables(buffer) == snapshot)) ++mismatches;
  }
  REQUIRE(mismatches == 0);

  // corrupted files are rejected with the offending line number
  auto expect_line_error = [](const std::string& text, const char* line_tag) {
    std::stringstream in(text);
    try {
      store::load_tables(in);
      return false;
    } catch (const store::ParseError& e) {
      return std::string(e.what()).find(line_tag) != std::string::npos;
    }
  };
  REQUIRE(expect_line_error(
      "#kind=UTT schema=1\nu1\t9\t3\t0.5\tActive\t0\n", "line 2"));
  REQUIRE(expect_line_error(
      "#kind=UTT schema=1\nu1\t0\t1\t0.9\tActive\t0\nu2\t0\t1\n", "line 3"));
  REQUIRE(expect_line_error("#kind=QTT schema=1\n", "line 1"));

  criterion.passed = true;
}
