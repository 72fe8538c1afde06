#include "trustsim/sweep.hpp"

#include <algorithm>

namespace trustsim::sweep {

SeedResult outcomes_for_seed(const ScenarioConfig& config,
                             const engine::SimulationReport& report) {
  SeedResult result;
  result.seed = config.seed;
  result.users.reserve(config.users.size());
  for (std::size_t i = 0; i < config.users.size(); ++i) {
    const auto& u = config.users[i];
    UserOutcome outcome;
    outcome.user_id = u.user_id;
    outcome.kind = u.type.kind;
    outcome.time_to_threshold = report.metrics.time_to_threshold[i].second;
    outcome.final_trust = report.metrics.final_user_trust[i].second;
    const auto* record = report.final_world.find_user(u.user_id);
    outcome.removed =
        record != nullptr && record->status == agents::UserStatus::Removed;
    result.users.push_back(std::move(outcome));
  }
  return result;
}

namespace {

SeedResult one_seed(const ScenarioConfig& base, std::uint64_t seed) {
  ScenarioConfig config = base;
  config.seed = seed;
  auto report = engine::run(config);
  return outcomes_for_seed(config, report);
}

}  // namespace

std::vector<SeedResult> run_sweep_serial(const ScenarioConfig& base,
                                         std::uint64_t seed_begin,
                                         std::uint64_t seed_count) {
  std::vector<SeedResult> results(seed_count);
  for (std::uint64_t k = 0; k < seed_count; ++k) {
    results[k] = one_seed(base, seed_begin + k);
  }
  return results;
}

std::vector<SeedResult> run_sweep_parallel(const ScenarioConfig& base,
                                           std::uint64_t seed_begin,
                                           std::uint64_t seed_count) {
  // validate once up front so worker iterations cannot throw
  auto violations = base.violations();
  if (!violations.empty()) {
    return run_sweep_serial(base, seed_begin, seed_count);
  }

  std::vector<SeedResult> results(seed_count);
  const auto n = static_cast<std::int64_t>(seed_count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    // each run owns its world; results are slotted by seed index, so the
    // merge order is independent of thread scheduling
    results[static_cast<std::size_t>(k)] =
        one_seed(base, seed_begin + static_cast<std::uint64_t>(k));
  }
  return results;
}

std::vector<SeedResult> run_sweep(const ScenarioConfig& base,
                                  std::uint64_t seed_begin,
                                  std::uint64_t seed_count, bool parallel) {
  return parallel ? run_sweep_parallel(base, seed_begin, seed_count)
                  : run_sweep_serial(base, seed_begin, seed_count);
}

std::vector<TypeAggregate> summarize(const std::vector<SeedResult>& results,
                                     std::uint64_t censor_horizon) {
  constexpr behavior::UserKind kKinds[] = {behavior::UserKind::Trusted,
                                           behavior::UserKind::Innocent,
                                           behavior::UserKind::NonTrusted};
  std::vector<TypeAggregate> summary;
  for (auto kind : kKinds) {
    TypeAggregate agg;
    agg.kind = kind;
    double trust_sum = 0.0;
    double ttt_sum = 0.0;
    double censored_sum = 0.0;
    for (const auto& seed_result : results) {
      for (const auto& user : seed_result.users) {
        if (user.kind != kind) continue;
        agg.samples += 1;
        trust_sum += user.final_trust;
        if (user.time_to_threshold) {
          agg.crossed += 1;
          ttt_sum += static_cast<double>(*user.time_to_threshold);
          censored_sum += static_cast<double>(
              std::min(*user.time_to_threshold, censor_horizon));
        } else {
          censored_sum += static_cast<double>(censor_horizon);
        }
      }
    }
    if (agg.samples == 0) continue;
    agg.mean_final_trust = trust_sum / static_cast<double>(agg.samples);
    agg.crossed_fraction =
        static_cast<double>(agg.crossed) / static_cast<double>(agg.samples);
    agg.mean_time_to_threshold =
        agg.crossed > 0 ? ttt_sum / static_cast<double>(agg.crossed) : 0.0;
    agg.mean_time_censored = censored_sum / static_cast<double>(agg.samples);
    summary.push_back(agg);
  }
  return summary;
}

}  // namespace trustsim::sweep
