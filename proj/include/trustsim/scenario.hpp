#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trustsim/behavior.hpp"
#include "trustsim/trust.hpp"

namespace trustsim {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UserSpec {
  std::string user_id;
  std::string domain_id;
  behavior::UserType type;
  std::string password;
};

/// When a user is expelled from their domain. Strikes count negative
/// executed actions; strike_limit 0 disables that trigger. With
/// threshold_trigger set, a violation report that leaves the user's trust
/// at or below the user-layer threshold removes them immediately.
struct RemovalPolicy {
  int strike_limit = 3;
  bool threshold_trigger = true;
};

/// Everything a run needs: the population, per-layer parameters, workload
/// shape and the seed. Runs are pure functions of this struct.
struct ScenarioConfig {
  std::vector<UserSpec> users;
  std::vector<std::string> domains;
  trust::LayerParams user_layer;
  trust::LayerParams domain_layer;
  int request_count = 1;
  std::vector<behavior::TaskSpec> tasks;
  RemovalPolicy removal;
  behavior::SelectionPolicy selection_policy =
      behavior::SelectionPolicy::UniformRandom;
  double p_wrong = 0.0;
  std::uint64_t seed = 0;
  std::string rng_name = kSupportedRng;

  /// Every violated invariant, each message naming the offending field.
  std::vector<std::string> violations() const;
  bool valid() const { return violations().empty(); }
};

}  // namespace trustsim
