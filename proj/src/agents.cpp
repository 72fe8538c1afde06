#include "trustsim/agents.hpp"

#include <algorithm>

#include "trustsim/text.hpp"

namespace trustsim::agents {

const char* to_string(UserStatus s) {
  return s == UserStatus::Active ? "Active" : "Removed";
}

std::optional<UserStatus> status_from_string(std::string_view s) {
  if (s == "Active") return UserStatus::Active;
  if (s == "Removed") return UserStatus::Removed;
  return std::nullopt;
}

const char* to_string(DecisionStage s) {
  switch (s) {
    case DecisionStage::DroppedAuth: return "dropped_auth";
    case DecisionStage::DroppedRemovedUser: return "dropped_removed_user";
    case DecisionStage::DroppedUserTrust: return "dropped_user_trust";
    case DecisionStage::DroppedDomainTrust: return "dropped_domain_trust";
    case DecisionStage::Delivered: return "delivered";
  }
  return "?";
}

const char* to_string(RemovalReason r) {
  return r == RemovalReason::Strikes ? "strikes" : "threshold";
}

const char* to_string(ProtocolStep s) {
  switch (s) {
    case ProtocolStep::CredentialsToProxy: return "credentials_to_proxy";
    case ProtocolStep::ProxyAuthCheck: return "proxy_auth_check";
    case ProtocolStep::RequestToBrokerAgent: return "request_to_broker_agent";
    case ProtocolStep::UserTrustLookup: return "user_trust_lookup";
    case ProtocolStep::UserTrustResult: return "user_trust_result";
    case ProtocolStep::ForwardToProvider: return "forward_to_provider";
    case ProtocolStep::RequestAtProvider: return "request_at_provider";
    case ProtocolStep::HandOffToProviderAgent:
      return "handoff_to_provider_agent";
    case ProtocolStep::DomainTrustLookup: return "domain_trust_lookup";
    case ProtocolStep::DomainTrustResult: return "domain_trust_result";
    case ProtocolStep::DomainDropNotice: return "domain_drop_notice";
    case ProtocolStep::TrustSatisfied: return "trust_satisfied";
    case ProtocolStep::ProviderSendsData: return "provider_sends_data";
    case ProtocolStep::DataViaProxy: return "data_via_proxy";
    case ProtocolStep::DataDelivered: return "data_delivered";
    case ProtocolStep::ViolationReported: return "violation_reported";
    case ProtocolStep::StrikeRecorded: return "strike_recorded";
    case ProtocolStep::UserRemoved: return "user_removed";
    case ProtocolStep::ReportIgnored: return "report_ignored";
  }
  return "?";
}

std::optional<ProtocolStep> step_from_string(std::string_view s) {
  static constexpr ProtocolStep kAll[] = {
      ProtocolStep::CredentialsToProxy,
      ProtocolStep::ProxyAuthCheck,
      ProtocolStep::RequestToBrokerAgent,
      ProtocolStep::UserTrustLookup,
      ProtocolStep::UserTrustResult,
      ProtocolStep::ForwardToProvider,
      ProtocolStep::RequestAtProvider,
      ProtocolStep::HandOffToProviderAgent,
      ProtocolStep::DomainTrustLookup,
      ProtocolStep::DomainTrustResult,
      ProtocolStep::DomainDropNotice,
      ProtocolStep::TrustSatisfied,
      ProtocolStep::ProviderSendsData,
      ProtocolStep::DataViaProxy,
      ProtocolStep::DataDelivered,
      ProtocolStep::ViolationReported,
      ProtocolStep::StrikeRecorded,
      ProtocolStep::UserRemoved,
      ProtocolStep::ReportIgnored,
  };
  for (ProtocolStep step : kAll) {
    if (s == to_string(step)) return step;
  }
  return std::nullopt;
}

UserRecord* WorldState::find_user(std::string_view user_id) {
  for (auto& u : users) {
    if (u.user_id == user_id) return &u;
  }
  return nullptr;
}

const UserRecord* WorldState::find_user(std::string_view user_id) const {
  return const_cast<WorldState*>(this)->find_user(user_id);
}

DomainRecord* WorldState::find_domain(std::string_view domain_id) {
  for (auto& d : domains) {
    if (d.domain_id == domain_id) return &d;
  }
  return nullptr;
}

const DomainRecord* WorldState::find_domain(std::string_view domain_id) const {
  return const_cast<WorldState*>(this)->find_domain(domain_id);
}

std::optional<DecisionStage> proxy_authenticate(const WorldState& world,
                                                const RequestEnvelope& env) {
  const UserRecord* user = world.find_user(env.user_id);
  if (user == nullptr) return DecisionStage::DroppedAuth;
  if (user->status == UserStatus::Removed) {
    return DecisionStage::DroppedRemovedUser;
  }
  if (env.credential.user_id != user->credential.user_id ||
      env.credential.password != user->credential.password) {
    return DecisionStage::DroppedAuth;
  }
  return std::nullopt;
}

bool broker_gate(const WorldState& world, std::string_view user_id) {
  const UserRecord* user = world.find_user(user_id);
  if (user == nullptr) return false;
  return trust::passes_threshold(user->ledger, world.user_layer);
}

bool provider_gate(const WorldState& world, std::string_view domain_id) {
  const DomainRecord* domain = world.find_domain(domain_id);
  if (domain == nullptr) return false;  // unknown domain is a drop
  return trust::passes_threshold(domain->ledger, world.domain_layer);
}

std::optional<ViolationReport> record_outcome(WorldState& world,
                                              const RequestEnvelope& env,
                                              trust::ActionClass action) {
  if (DomainRecord* domain = world.find_domain(env.domain_id)) {
    domain->ledger =
        trust::update_trust(domain->ledger, action, world.domain_layer);
  }
  if (UserRecord* user = world.find_user(env.user_id)) {
    user->ledger = trust::update_trust(user->ledger, action, world.user_layer);
  }
  if (trust::is_negative(action)) {
    return ViolationReport{env.user_id, env.domain_id, action, env.request_id};
  }
  return std::nullopt;
}

void broker_handle_report(WorldState& world, const ViolationReport& report,
                          std::vector<AuditEntry>& events) {
  UserRecord* user = world.find_user(report.user_id);
  if (user == nullptr) {
    events.push_back({report.request_id, ProtocolStep::ReportIgnored,
                      report.user_id, "unknown user"});
    return;
  }
  if (user->status == UserStatus::Removed) {
    events.push_back({report.request_id, ProtocolStep::ReportIgnored,
                      report.user_id, "user already removed"});
    return;
  }

  user->strikes += 1;
  events.push_back({report.request_id, ProtocolStep::StrikeRecorded,
                    user->user_id,
                    "strikes=" + std::to_string(user->strikes)});

  const bool by_strikes = world.removal.strike_limit > 0 &&
                          user->strikes >= world.removal.strike_limit;
  const bool by_threshold = world.removal.threshold_trigger &&
                            user->ledger.value <= world.user_layer.threshold;
  if (by_strikes || by_threshold) {
    user->status = UserStatus::Removed;
    RemovalReason reason =
        by_strikes ? RemovalReason::Strikes : RemovalReason::Threshold;
    world.removals.push_back({user->user_id, report.request_id, reason});
    events.push_back({report.request_id, ProtocolStep::UserRemoved,
                      user->user_id, std::string("reason=") + to_string(reason)});
  }
}

Decision process_request(WorldState& world, const RequestEnvelope& env,
                         Rng& rng, std::vector<AuditEntry>& events) {
  const auto rid = env.request_id;
  events.push_back({rid, ProtocolStep::CredentialsToProxy, env.user_id,
                    "task=" + env.task.task_id});

  auto auth_drop = proxy_authenticate(world, env);
  events.push_back({rid, ProtocolStep::ProxyAuthCheck, env.user_id,
                    auth_drop ? to_string(*auth_drop) : "pass"});
  if (auth_drop) {
    return {*auth_drop, std::nullopt};
  }

  UserRecord& user = *world.find_user(env.user_id);
  events.push_back({rid, ProtocolStep::RequestToBrokerAgent, env.user_id, ""});
  events.push_back({rid, ProtocolStep::UserTrustLookup, env.user_id,
                    "value=" + format_double(user.ledger.value)});
  const bool user_ok = broker_gate(world, env.user_id);
  events.push_back(
      {rid, ProtocolStep::UserTrustResult, env.user_id,
       user_ok ? "pass"
               : "fail threshold=" + format_double(world.user_layer.threshold)});
  if (!user_ok) {
    return {DecisionStage::DroppedUserTrust, std::nullopt};
  }

  events.push_back({rid, ProtocolStep::ForwardToProvider, env.user_id, ""});
  events.push_back({rid, ProtocolStep::RequestAtProvider, env.domain_id, ""});
  events.push_back(
      {rid, ProtocolStep::HandOffToProviderAgent, env.domain_id, ""});
  const DomainRecord* domain = world.find_domain(env.domain_id);
  events.push_back({rid, ProtocolStep::DomainTrustLookup, env.domain_id,
                    domain ? "value=" + format_double(domain->ledger.value)
                           : "unknown domain"});
  const bool domain_ok = provider_gate(world, env.domain_id);
  events.push_back({rid, ProtocolStep::DomainTrustResult, env.domain_id,
                    domain_ok ? "pass"
                              : "fail threshold=" +
                                    format_double(world.domain_layer.threshold)});
  if (!domain_ok) {
    // step 11: drop and tell the broker agent; no task ran, so there is no
    // action to report and no ledger changes
    events.push_back({rid, ProtocolStep::DomainDropNotice, env.user_id,
                      "domain=" + env.domain_id});
    return {DecisionStage::DroppedDomainTrust, std::nullopt};
  }

  events.push_back({rid, ProtocolStep::TrustSatisfied, env.domain_id, ""});
  const trust::ActionClass action =
      behavior::sample_action(user.type, world.p_wrong, rng);
  events.push_back({rid, ProtocolStep::ProviderSendsData, env.user_id,
                    "task=" + env.task.task_id + " action=" +
                        trust::to_string(action)});

  auto report = record_outcome(world, env, action);

  events.push_back({rid, ProtocolStep::DataViaProxy, env.user_id, ""});
  events.push_back(
      {rid, ProtocolStep::DataDelivered, env.user_id,
       "user_value=" + format_double(user.ledger.value) + " domain_value=" +
           format_double(world.find_domain(env.domain_id)->ledger.value)});

  if (report) {
    events.push_back({rid, ProtocolStep::ViolationReported, env.user_id,
                      std::string("action=") + trust::to_string(report->action) +
                          " domain=" + report->domain_id});
    broker_handle_report(world, *report, events);
  }
  return {DecisionStage::Delivered, action};
}

}  // namespace trustsim::agents
