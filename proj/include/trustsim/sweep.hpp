#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trustsim/engine.hpp"
#include "trustsim/scenario.hpp"

namespace trustsim::sweep {

/// Per-user outcome of one seeded run.
struct UserOutcome {
  std::string user_id;
  behavior::UserKind kind = behavior::UserKind::Trusted;
  std::optional<std::uint64_t> time_to_threshold;
  double final_trust = 1.0;
  bool removed = false;

  bool operator==(const UserOutcome&) const = default;
};

struct SeedResult {
  std::uint64_t seed = 0;
  std::vector<UserOutcome> users;  // config order

  bool operator==(const SeedResult&) const = default;
};

/// Aggregates over all (seed, user) samples of one user kind.
///
/// Two time-to-threshold means are kept: one over the samples that actually
/// crossed (selection-biased towards instant crossers), and a censored one
/// over every sample, with non-crossers counted at the censor horizon.
struct TypeAggregate {
  behavior::UserKind kind = behavior::UserKind::Trusted;
  std::uint64_t samples = 0;
  double mean_final_trust = 0.0;
  std::uint64_t crossed = 0;  // samples whose trust ever fell to the gate
  double crossed_fraction = 0.0;
  double mean_time_to_threshold = 0.0;  // over crossed samples only
  double mean_time_censored = 0.0;      // over all samples, capped
};

/// One engine run per seed in [seed_begin, seed_begin + seed_count).
/// Results are slotted by seed index, so the output ordering is by seed no
/// matter how the runs were scheduled.
std::vector<SeedResult> run_sweep_serial(const ScenarioConfig& base,
                                         std::uint64_t seed_begin,
                                         std::uint64_t seed_count);

/// Same contract, runs fanned out across OpenMP threads. Falls back to the
/// serial path when built without OpenMP.
std::vector<SeedResult> run_sweep_parallel(const ScenarioConfig& base,
                                           std::uint64_t seed_begin,
                                           std::uint64_t seed_count);

std::vector<SeedResult> run_sweep(const ScenarioConfig& base,
                                  std::uint64_t seed_begin,
                                  std::uint64_t seed_count, bool parallel);

/// Kind-level aggregates in fixed kind order, only for kinds present.
/// `censor_horizon` caps the censored time mean; one past the run length
/// keeps never-crossed samples distinguishable from last-request crossings.
std::vector<TypeAggregate> summarize(const std::vector<SeedResult>& results,
                                     std::uint64_t censor_horizon);

/// Outcome row extraction shared by the engine-facing callers.
SeedResult outcomes_for_seed(const ScenarioConfig& config,
                             const engine::SimulationReport& report);

}  // namespace trustsim::sweep
