#include "trustsim/scenario.hpp"

#include <cmath>
#include <set>

namespace trustsim {

namespace {

// ids land in tab- and comma-separated output files
bool clean_id(const std::string& id) {
  if (id.empty()) return false;
  for (unsigned char c : id) {
    if (c <= ' ' || c > '~' || c == ',') return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> ScenarioConfig::violations() const {
  std::vector<std::string> out;

  for (const auto& v : user_layer.violations()) {
    out.push_back("user_layer." + v);
  }
  for (const auto& v : domain_layer.violations()) {
    out.push_back("domain_layer." + v);
  }

  if (request_count < 1) {
    out.push_back("request_count: must be >= 1");
  }
  if (!std::isfinite(p_wrong) || p_wrong < 0.0 || p_wrong > 1.0) {
    out.push_back("p_wrong: must be in [0,1]");
  }
  if (removal.strike_limit < 0) {
    out.push_back("removal.strike_limit: must be >= 0 (0 disables strikes)");
  }
  if (rng_name != kSupportedRng) {
    out.push_back("rng: unsupported generator '" + rng_name + "' (expected " +
                  kSupportedRng + ")");
  }

  if (domains.empty()) {
    out.push_back("domains: must list at least one domain");
  }
  std::set<std::string> domain_ids;
  for (const auto& d : domains) {
    if (!clean_id(d)) {
      out.push_back(
          "domains: domain_id must be non-empty printable ASCII without "
          "spaces or commas");
    } else if (!domain_ids.insert(d).second) {
      out.push_back("domains: duplicate domain_id '" + d + "'");
    }
  }

  if (users.empty()) {
    out.push_back("users: must list at least one user");
  }
  std::set<std::string> user_ids;
  for (const auto& u : users) {
    const std::string tag = "users[" + u.user_id + "]";
    if (!clean_id(u.user_id)) {
      out.push_back(
          "users: user_id must be non-empty printable ASCII without spaces "
          "or commas");
    } else if (!user_ids.insert(u.user_id).second) {
      out.push_back("users: duplicate user_id '" + u.user_id + "'");
    }
    if (!domain_ids.contains(u.domain_id)) {
      out.push_back(tag + ".domain_id: '" + u.domain_id +
                    "' is not a configured domain");
    }
    if (!std::isfinite(u.type.p_positive) || u.type.p_positive < 0.0 ||
        u.type.p_positive > 1.0) {
      out.push_back(tag + ".p_positive: must be in [0,1]");
    } else if (std::isfinite(p_wrong) && u.type.p_positive + p_wrong > 1.0) {
      out.push_back(tag + ".p_positive: p_positive + p_wrong must be <= 1");
    }
  }

  if (tasks.empty()) {
    out.push_back("tasks: must list at least one task");
  }
  for (const auto& t : tasks) {
    if (!clean_id(t.task_id)) {
      out.push_back(
          "tasks: task_id must be non-empty printable ASCII without spaces "
          "or commas");
    }
  }

  return out;
}

}  // namespace trustsim
