#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustsim/agents.hpp"
#include "trustsim/scenario.hpp"

namespace trustsim::engine {

enum class EntityKind { User, Domain };

const char* to_string(EntityKind k);

/// One sampled ledger state: the entity's value after request `iteration`
/// resolved. `action` is set when this request updated the entity's ledger.
struct TrajectoryPoint {
  std::uint64_t iteration = 0;
  EntityKind entity_kind = EntityKind::User;
  std::string entity_id;
  std::optional<trust::ActionClass> action;
  double value = 1.0;
  agents::DecisionStage decision = agents::DecisionStage::Delivered;
};

struct Metrics {
  std::array<std::uint64_t, agents::kStageCount> stage_counts{};
  std::vector<std::pair<std::string, std::optional<std::uint64_t>>>
      time_to_threshold;  // per user, config order
  std::vector<agents::RemovalRecord> removals;
  std::vector<std::pair<std::string, double>> final_user_trust;
  std::vector<std::pair<std::string, double>> final_domain_trust;

  std::uint64_t stage_count(agents::DecisionStage s) const {
    return stage_counts[static_cast<std::size_t>(s)];
  }
  std::uint64_t total_requests() const;
};

struct SimulationReport {
  ScenarioConfig config;
  std::vector<TrajectoryPoint> trajectories;
  std::vector<agents::Decision> decisions;  // one per request
  std::vector<agents::AuditEntry> audit;
  Metrics metrics;
  agents::WorldState final_world;
};

/// Fresh world from a valid config: all ledgers at the layer's initial
/// trust, all users active with zero strikes. Throws ConfigError naming
/// every violated field otherwise.
agents::WorldState init_world(const ScenarioConfig& config);

/// Builds the workload and feeds it through the pipeline one request at a
/// time. Deterministic: identical configs (seed included) give identical
/// reports.
SimulationReport run(const ScenarioConfig& config);

/// First iteration at which the entity's gate comparison would fail
/// (value <= its layer threshold), or nullopt if that never happens.
std::optional<std::uint64_t> time_to_threshold(const SimulationReport& report,
                                               std::string_view entity_id);

}  // namespace trustsim::engine
