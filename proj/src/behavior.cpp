#include "trustsim/behavior.hpp"

#include "trustsim/scenario.hpp"

namespace trustsim::behavior {

const char* to_string(UserKind k) {
  switch (k) {
    case UserKind::Trusted: return "trusted";
    case UserKind::Innocent: return "innocent";
    case UserKind::NonTrusted: return "non_trusted";
  }
  return "?";
}

std::optional<UserKind> kind_from_string(std::string_view s) {
  if (s == "trusted") return UserKind::Trusted;
  if (s == "innocent") return UserKind::Innocent;
  if (s == "non_trusted") return UserKind::NonTrusted;
  return std::nullopt;
}

UserType UserType::of(UserKind kind) {
  switch (kind) {
    case UserKind::Trusted: return {kind, 0.8};
    case UserKind::Innocent: return {kind, 0.5};
    case UserKind::NonTrusted: return {kind, 0.2};
  }
  return {kind, 0.5};
}

const char* to_string(TaskKind k) {
  return k == TaskKind::TrustedTask ? "trusted" : "non_trusted";
}

std::optional<TaskKind> task_kind_from_string(std::string_view s) {
  if (s == "trusted") return TaskKind::TrustedTask;
  if (s == "non_trusted") return TaskKind::NonTrustedTask;
  return std::nullopt;
}

trust::ActionClass sample_action(const UserType& user, double p_wrong,
                                 Rng& rng) {
  double u = rng.next_unit();
  if (u < user.p_positive) return trust::ActionClass::Positive;
  if (u < user.p_positive + p_wrong) return trust::ActionClass::Wrong;
  return trust::ActionClass::Malicious;
}

const char* to_string(SelectionPolicy p) {
  return p == SelectionPolicy::UniformRandom ? "uniform_random" : "round_robin";
}

std::optional<SelectionPolicy> policy_from_string(std::string_view s) {
  if (s == "uniform_random") return SelectionPolicy::UniformRandom;
  if (s == "round_robin") return SelectionPolicy::RoundRobin;
  return std::nullopt;
}

std::vector<WorkloadEntry> make_workload(const ScenarioConfig& scenario,
                                         Rng& rng) {
  if (scenario.users.empty()) {
    throw ConfigError("users: must list at least one user");
  }
  if (scenario.tasks.empty()) {
    throw ConfigError("tasks: must list at least one task");
  }

  std::vector<WorkloadEntry> workload;
  workload.reserve(static_cast<std::size_t>(scenario.request_count));
  const std::size_t n_users = scenario.users.size();
  const std::size_t n_tasks = scenario.tasks.size();

  for (int i = 0; i < scenario.request_count; ++i) {
    std::size_t user_ix;
    std::size_t task_ix;
    if (scenario.selection_policy == SelectionPolicy::RoundRobin) {
      user_ix = static_cast<std::size_t>(i) % n_users;
      task_ix = static_cast<std::size_t>(i) % n_tasks;
    } else {
      // one user draw then one task draw per entry, in that order
      user_ix = rng.next_index(n_users);
      task_ix = rng.next_index(n_tasks);
    }
    workload.push_back(
        {scenario.users[user_ix].user_id, scenario.tasks[task_ix]});
  }
  return workload;
}

}  // namespace trustsim::behavior
