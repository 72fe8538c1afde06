#pragma once

// Reference scenarios shared by the test suites. The two-user scenario
// mirrors configs/two_users_150.json; the three-user one is the sweep
// scenario with one user of each kind on its own domain.

#include "trustsim/scenario.hpp"

namespace testutil {

inline trustsim::ScenarioConfig two_user_scenario(std::uint64_t seed = 42) {
  using namespace trustsim;
  ScenarioConfig config;
  config.domains = {"university_a", "university_b"};
  config.users = {
      {"u_trusted", "university_a",
       behavior::UserType::of(behavior::UserKind::Trusted), "alpha-7"},
      {"u_nontrusted", "university_b",
       behavior::UserType::of(behavior::UserKind::NonTrusted), "beta-9"},
  };
  config.user_layer = trust::LayerParams::two_weight(0.9, 0.8, 1.0, 0.2);
  config.domain_layer = trust::LayerParams::two_weight(1.0, 0.9, 1.0, 0.1);
  config.request_count = 150;
  config.tasks = {{"1001", behavior::TaskKind::TrustedTask}};
  config.removal = {3, false};
  config.seed = seed;
  return config;
}

inline trustsim::ScenarioConfig three_user_scenario(int request_count = 150,
                                                    std::uint64_t seed = 1) {
  using namespace trustsim;
  ScenarioConfig config;
  config.domains = {"dom_trusted", "dom_innocent", "dom_nontrusted"};
  config.users = {
      {"u_trusted", "dom_trusted",
       behavior::UserType::of(behavior::UserKind::Trusted), "pw-t"},
      {"u_innocent", "dom_innocent",
       behavior::UserType::of(behavior::UserKind::Innocent), "pw-i"},
      {"u_nontrusted", "dom_nontrusted",
       behavior::UserType::of(behavior::UserKind::NonTrusted), "pw-n"},
  };
  config.user_layer = trust::LayerParams::two_weight(0.9, 0.8, 1.0, 0.2);
  config.domain_layer = trust::LayerParams::two_weight(1.0, 0.9, 1.0, 0.1);
  config.request_count = request_count;
  config.tasks = {{"1001", behavior::TaskKind::TrustedTask}};
  // a high strike limit so expulsion follows the trust value, not the
  // strike counter
  config.removal = {10, true};
  config.seed = seed;
  return config;
}

}  // namespace testutil
