#include "trustsim/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace trustsim::config {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto a : allowed) {
      if (item.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

const json& require(const json& obj, const std::string& where,
                    const std::string& name) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw ConfigError(where + ": missing field '" + name + "'");
  }
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) {
    throw ConfigError(where + ": expected a number");
  }
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) {
    throw ConfigError(where + ": expected a string");
  }
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) {
    throw ConfigError(where + ": expected a boolean");
  }
  return v.get<bool>();
}

trust::LayerParams parse_layer(const json& obj, const std::string& where) {
  if (!obj.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  check_keys(obj, where,
             {"w_positive", "w_wrong", "w_malicious", "m", "threshold",
              "initial_trust"});
  trust::LayerParams p;
  p.w_positive = as_number(require(obj, where, "w_positive"), where + ".w_positive");
  p.w_malicious =
      as_number(require(obj, where, "w_malicious"), where + ".w_malicious");
  // the wrong-action weight follows the malicious one unless configured
  p.w_wrong = obj.contains("w_wrong")
                  ? as_number(obj.at("w_wrong"), where + ".w_wrong")
                  : p.w_malicious;
  p.m = obj.contains("m") ? as_number(obj.at("m"), where + ".m") : 1.0;
  p.threshold = as_number(require(obj, where, "threshold"), where + ".threshold");
  p.initial_trust =
      obj.contains("initial_trust")
          ? as_number(obj.at("initial_trust"), where + ".initial_trust")
          : 1.0;
  return p;
}

behavior::TaskSpec parse_task(const json& v, const std::string& where) {
  behavior::TaskSpec task;
  if (v.is_string()) {
    task.task_id = v.get<std::string>();
    return task;
  }
  if (!v.is_object()) {
    throw ConfigError(where + ": expected a task id string or an object");
  }
  check_keys(v, where, {"task_id", "kind"});
  task.task_id = as_string(require(v, where, "task_id"), where + ".task_id");
  if (v.contains("kind")) {
    auto kind =
        behavior::task_kind_from_string(as_string(v.at("kind"), where + ".kind"));
    if (!kind) {
      throw ConfigError(where + ".kind: expected 'trusted' or 'non_trusted'");
    }
    task.kind = *kind;
  }
  return task;
}

UserSpec parse_user(const json& v, const std::string& where) {
  if (!v.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  check_keys(v, where,
             {"user_id", "domain_id", "user_type", "password", "p_positive"});
  UserSpec user;
  user.user_id = as_string(require(v, where, "user_id"), where + ".user_id");
  user.domain_id =
      as_string(require(v, where, "domain_id"), where + ".domain_id");
  user.password =
      as_string(require(v, where, "password"), where + ".password");
  auto kind = behavior::kind_from_string(
      as_string(require(v, where, "user_type"), where + ".user_type"));
  if (!kind) {
    throw ConfigError(where +
                      ".user_type: expected 'trusted', 'innocent' or "
                      "'non_trusted'");
  }
  user.type = behavior::UserType::of(*kind);
  if (v.contains("p_positive")) {
    user.type.p_positive = as_number(v.at("p_positive"), where + ".p_positive");
  }
  return user;
}

}  // namespace

ScenarioConfig parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  check_keys(doc, "config",
             {"users", "domains", "user_layer", "domain_layer",
              "request_count", "tasks", "removal", "selection_policy",
              "p_wrong", "seed", "rng"});

  ScenarioConfig config;

  const json& users = require(doc, "config", "users");
  if (!users.is_array()) {
    throw ConfigError("users: expected an array");
  }
  for (std::size_t i = 0; i < users.size(); ++i) {
    config.users.push_back(
        parse_user(users[i], "users[" + std::to_string(i) + "]"));
  }

  const json& domains = require(doc, "config", "domains");
  if (!domains.is_array()) {
    throw ConfigError("domains: expected an array");
  }
  for (std::size_t i = 0; i < domains.size(); ++i) {
    config.domains.push_back(
        as_string(domains[i], "domains[" + std::to_string(i) + "]"));
  }

  config.user_layer =
      parse_layer(require(doc, "config", "user_layer"), "user_layer");
  config.domain_layer =
      parse_layer(require(doc, "config", "domain_layer"), "domain_layer");

  const json& request_count = require(doc, "config", "request_count");
  if (!request_count.is_number_integer()) {
    throw ConfigError("request_count: expected an integer");
  }
  config.request_count = request_count.get<int>();

  const json& tasks = require(doc, "config", "tasks");
  if (!tasks.is_array()) {
    throw ConfigError("tasks: expected an array");
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    config.tasks.push_back(
        parse_task(tasks[i], "tasks[" + std::to_string(i) + "]"));
  }

  if (doc.contains("removal")) {
    const json& removal = doc.at("removal");
    if (!removal.is_object()) {
      throw ConfigError("removal: expected an object");
    }
    check_keys(removal, "removal", {"strike_limit", "threshold_trigger"});
    if (removal.contains("strike_limit")) {
      if (!removal.at("strike_limit").is_number_integer()) {
        throw ConfigError("removal.strike_limit: expected an integer");
      }
      config.removal.strike_limit = removal.at("strike_limit").get<int>();
    }
    if (removal.contains("threshold_trigger")) {
      config.removal.threshold_trigger =
          as_bool(removal.at("threshold_trigger"), "removal.threshold_trigger");
    }
  }

  if (doc.contains("selection_policy")) {
    auto policy = behavior::policy_from_string(
        as_string(doc.at("selection_policy"), "selection_policy"));
    if (!policy) {
      throw ConfigError(
          "selection_policy: expected 'uniform_random' or 'round_robin'");
    }
    config.selection_policy = *policy;
  }

  if (doc.contains("p_wrong")) {
    config.p_wrong = as_number(doc.at("p_wrong"), "p_wrong");
  }

  const json& seed = require(doc, "config", "seed");
  if (!seed.is_number_integer() ||
      (seed.is_number_integer() && !seed.is_number_unsigned() &&
       seed.get<std::int64_t>() < 0)) {
    throw ConfigError("seed: expected a non-negative integer");
  }
  config.seed = seed.get<std::uint64_t>();

  if (doc.contains("rng")) {
    config.rng_name = as_string(doc.at("rng"), "rng");
  }

  return config;
}

ScenarioConfig load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string to_json(const ScenarioConfig& config) {
  ordered_json doc;
  doc["seed"] = config.seed;
  doc["rng"] = config.rng_name;
  doc["request_count"] = config.request_count;
  doc["selection_policy"] = behavior::to_string(config.selection_policy);
  doc["p_wrong"] = config.p_wrong;

  doc["tasks"] = ordered_json::array();
  for (const auto& t : config.tasks) {
    doc["tasks"].push_back(
        {{"task_id", t.task_id}, {"kind", behavior::to_string(t.kind)}});
  }
  doc["domains"] = config.domains;
  doc["users"] = ordered_json::array();
  for (const auto& u : config.users) {
    doc["users"].push_back({{"user_id", u.user_id},
                            {"domain_id", u.domain_id},
                            {"user_type", behavior::to_string(u.type.kind)},
                            {"password", u.password},
                            {"p_positive", u.type.p_positive}});
  }

  auto layer = [](const trust::LayerParams& p) {
    return ordered_json{{"w_positive", p.w_positive},
                        {"w_wrong", p.w_wrong},
                        {"w_malicious", p.w_malicious},
                        {"m", p.m},
                        {"threshold", p.threshold},
                        {"initial_trust", p.initial_trust}};
  };
  doc["user_layer"] = layer(config.user_layer);
  doc["domain_layer"] = layer(config.domain_layer);
  doc["removal"] = {{"strike_limit", config.removal.strike_limit},
                    {"threshold_trigger", config.removal.threshold_trigger}};
  return doc.dump(2) + "\n";
}

}  // namespace trustsim::config
