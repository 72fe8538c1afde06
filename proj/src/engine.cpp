#include "trustsim/engine.hpp"

#include <numeric>

#include "trustsim/behavior.hpp"
#include "trustsim/text.hpp"

namespace trustsim::engine {

const char* to_string(EntityKind k) {
  return k == EntityKind::User ? "user" : "domain";
}

std::uint64_t Metrics::total_requests() const {
  return std::accumulate(stage_counts.begin(), stage_counts.end(),
                         std::uint64_t{0});
}

agents::WorldState init_world(const ScenarioConfig& config) {
  auto violations = config.violations();
  if (!violations.empty()) {
    std::string msg = "invalid scenario config:";
    for (const auto& v : violations) {
      msg += "\n  " + v;
    }
    throw ConfigError(msg);
  }

  agents::WorldState world;
  world.user_layer = config.user_layer;
  world.domain_layer = config.domain_layer;
  world.removal = config.removal;
  world.p_wrong = config.p_wrong;

  world.domains.reserve(config.domains.size());
  for (const auto& domain_id : config.domains) {
    world.domains.push_back(
        {domain_id, trust::fresh_ledger(config.domain_layer)});
  }
  world.users.reserve(config.users.size());
  for (const auto& u : config.users) {
    agents::UserRecord record;
    record.user_id = u.user_id;
    record.domain_id = u.domain_id;
    record.credential = {u.user_id, u.password};
    record.type = u.type;
    record.ledger = trust::fresh_ledger(config.user_layer);
    world.users.push_back(std::move(record));
  }
  return world;
}

SimulationReport run(const ScenarioConfig& config) {
  SimulationReport report;
  report.config = config;

  agents::WorldState world = init_world(config);
  Rng rng(config.seed);
  const auto workload = behavior::make_workload(config, rng);

  report.decisions.reserve(workload.size());
  report.trajectories.reserve(2 * workload.size());

  std::uint64_t iteration = 0;
  for (const auto& entry : workload) {
    ++iteration;
    const agents::UserRecord* user = world.find_user(entry.user_id);
    agents::RequestEnvelope env{iteration, entry.user_id, user->credential,
                                entry.task, user->domain_id};

    agents::Decision decision =
        agents::process_request(world, env, rng, report.audit);
    report.decisions.push_back(decision);
    report.metrics.stage_counts[static_cast<std::size_t>(decision.stage)] += 1;

    // the requesting user is sampled on every request; the domain only once
    // the request reached the provider side
    report.trajectories.push_back({iteration, EntityKind::User, env.user_id,
                                   decision.action,
                                   world.find_user(env.user_id)->ledger.value,
                                   decision.stage});
    if (decision.stage == agents::DecisionStage::DroppedDomainTrust ||
        decision.stage == agents::DecisionStage::Delivered) {
      if (const auto* domain = world.find_domain(env.domain_id)) {
        report.trajectories.push_back({iteration, EntityKind::Domain,
                                       env.domain_id, decision.action,
                                       domain->ledger.value, decision.stage});
      }
    }
  }

  for (const auto& u : config.users) {
    report.metrics.time_to_threshold.emplace_back(
        u.user_id, time_to_threshold(report, u.user_id));
  }
  report.metrics.removals = world.removals;
  for (const auto& u : world.users) {
    report.metrics.final_user_trust.emplace_back(u.user_id, u.ledger.value);
  }
  for (const auto& d : world.domains) {
    report.metrics.final_domain_trust.emplace_back(d.domain_id,
                                                   d.ledger.value);
  }

  report.final_world = std::move(world);
  return report;
}

std::optional<std::uint64_t> time_to_threshold(const SimulationReport& report,
                                               std::string_view entity_id) {
  for (const auto& point : report.trajectories) {
    if (point.entity_id != entity_id) continue;
    const double threshold = point.entity_kind == EntityKind::User
                                 ? report.config.user_layer.threshold
                                 : report.config.domain_layer.threshold;
    if (point.value <= threshold) {
      return point.iteration;
    }
  }
  return std::nullopt;
}

}  // namespace trustsim::engine
