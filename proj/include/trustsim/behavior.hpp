#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustsim/rng.hpp"
#include "trustsim/trust.hpp"

namespace trustsim {
struct ScenarioConfig;
}

namespace trustsim::behavior {

enum class UserKind { Trusted, Innocent, NonTrusted };

const char* to_string(UserKind k);
std::optional<UserKind> kind_from_string(std::string_view s);

/// Stochastic user profile: the kind plus its probability of acting
/// positively on an executed task. Defaults: 0.8 / 0.5 / 0.2.
struct UserType {
  UserKind kind = UserKind::Trusted;
  double p_positive = 0.8;

  static UserType of(UserKind kind);
};

enum class TaskKind { TrustedTask, NonTrustedTask };

const char* to_string(TaskKind k);
std::optional<TaskKind> task_kind_from_string(std::string_view s);

/// A task a user may request. `kind` is carried through for bookkeeping and
/// has no effect on action sampling.
struct TaskSpec {
  std::string task_id;
  TaskKind kind = TaskKind::TrustedTask;
};

/// Positive with p_positive, otherwise Wrong with p_wrong and Malicious
/// with the remainder. Requires p_positive + p_wrong <= 1.
trust::ActionClass sample_action(const UserType& user, double p_wrong,
                                 Rng& rng);

enum class SelectionPolicy { UniformRandom, RoundRobin };

const char* to_string(SelectionPolicy p);
std::optional<SelectionPolicy> policy_from_string(std::string_view s);

struct WorkloadEntry {
  std::string user_id;
  TaskSpec task;
};

/// Pure function of (scenario, rng state): request_count entries, users
/// chosen by the scenario's selection policy, tasks from its task list.
std::vector<WorkloadEntry> make_workload(const ScenarioConfig& scenario,
                                         Rng& rng);

}  // namespace trustsim::behavior
