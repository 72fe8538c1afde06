#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustsim/behavior.hpp"
#include "trustsim/rng.hpp"
#include "trustsim/scenario.hpp"
#include "trustsim/trust.hpp"

namespace trustsim::agents {

struct Credential {
  std::string user_id;
  std::string password;
};

enum class UserStatus { Active, Removed };

const char* to_string(UserStatus s);
std::optional<UserStatus> status_from_string(std::string_view s);

/// One row of the user trust table, plus the credential the proxy checks.
struct UserRecord {
  std::string user_id;
  std::string domain_id;
  Credential credential;
  behavior::UserType type;
  trust::TrustLedger ledger;
  UserStatus status = UserStatus::Active;
  int strikes = 0;
};

/// One row of the domain trust table.
struct DomainRecord {
  std::string domain_id;
  trust::TrustLedger ledger;
};

struct RequestEnvelope {
  std::uint64_t request_id = 0;
  std::string user_id;
  Credential credential;
  behavior::TaskSpec task;
  std::string domain_id;
};

/// Where the pipeline resolved a request, in pipeline order.
enum class DecisionStage {
  DroppedAuth,
  DroppedRemovedUser,
  DroppedUserTrust,
  DroppedDomainTrust,
  Delivered,
};

inline constexpr std::size_t kStageCount = 5;

const char* to_string(DecisionStage s);

/// Outcome of one request. `action` is the sampled behavior and is present
/// exactly when the task executed, i.e. the stage is Delivered.
struct Decision {
  DecisionStage stage = DecisionStage::DroppedAuth;
  std::optional<trust::ActionClass> action;
};

/// Provider-side notice about a negative executed action, routed back to
/// the broker agent. `action` is always Wrong or Malicious.
struct ViolationReport {
  std::string user_id;
  std::string domain_id;
  trust::ActionClass action = trust::ActionClass::Wrong;
  std::uint64_t request_id = 0;
};

enum class RemovalReason { Strikes, Threshold };

const char* to_string(RemovalReason r);

struct RemovalRecord {
  std::string user_id;
  std::uint64_t request_id = 0;
  RemovalReason reason = RemovalReason::Strikes;
};

/// Audit vocabulary: the fifteen stations of the request/delivery flow,
/// plus the bookkeeping events that follow a violation.
enum class ProtocolStep {
  CredentialsToProxy,      // 1
  ProxyAuthCheck,          // 2
  RequestToBrokerAgent,    // 3
  UserTrustLookup,         // 4
  UserTrustResult,         // 5
  ForwardToProvider,       // 6
  RequestAtProvider,       // 7
  HandOffToProviderAgent,  // 8
  DomainTrustLookup,       // 9
  DomainTrustResult,       // 10
  DomainDropNotice,        // 11
  TrustSatisfied,          // 12
  ProviderSendsData,       // 13
  DataViaProxy,            // 14
  DataDelivered,           // 15
  ViolationReported,
  StrikeRecorded,
  UserRemoved,
  ReportIgnored,
};

const char* to_string(ProtocolStep s);
std::optional<ProtocolStep> step_from_string(std::string_view s);

struct AuditEntry {
  std::uint64_t request_id = 0;
  ProtocolStep step = ProtocolStep::CredentialsToProxy;
  std::string entity;
  std::string detail;

  bool operator==(const AuditEntry&) const = default;
};

/// Credential store, user and domain trust tables, removal records and the
/// per-layer parameters: everything the agents read and write during a run.
struct WorldState {
  trust::LayerParams user_layer;
  trust::LayerParams domain_layer;
  RemovalPolicy removal;
  double p_wrong = 0.0;
  std::vector<UserRecord> users;
  std::vector<DomainRecord> domains;
  std::vector<RemovalRecord> removals;

  UserRecord* find_user(std::string_view user_id);
  const UserRecord* find_user(std::string_view user_id) const;
  DomainRecord* find_domain(std::string_view domain_id);
  const DomainRecord* find_domain(std::string_view domain_id) const;
};

/// Proxy credential check. nullopt means pass; otherwise the drop stage
/// (DroppedRemovedUser for expelled users, DroppedAuth for anything else).
/// Read-only: unknown users and bad passwords are drops, not faults.
std::optional<DecisionStage> proxy_authenticate(const WorldState& world,
                                                const RequestEnvelope& env);

/// Broker-agent gate on the user's trust value. Read-only.
bool broker_gate(const WorldState& world, std::string_view user_id);

/// Provider-agent gate on the domain's trust value. Read-only. Unknown
/// domains fail the gate.
bool provider_gate(const WorldState& world, std::string_view domain_id);

/// Records one executed task: the domain ledger and then the user ledger
/// take the action under their own layer parameters. Negative actions
/// yield a ViolationReport for the broker agent.
std::optional<ViolationReport> record_outcome(WorldState& world,
                                              const RequestEnvelope& env,
                                              trust::ActionClass action);

/// Broker-agent reaction to a violation report: one strike, and removal
/// once the policy's strike or threshold trigger fires. Removal is
/// permanent for the run. Reports for unknown users are ignored with an
/// audit entry.
void broker_handle_report(WorldState& world, const ViolationReport& report,
                          std::vector<AuditEntry>& events);

/// The full pipeline for one request: authenticate, gate on user trust,
/// gate on domain trust, sample the behavior, record the outcome, handle
/// any violation report. Every step taken lands in `events` in order.
Decision process_request(WorldState& world, const RequestEnvelope& env,
                         Rng& rng, std::vector<AuditEntry>& events);

}  // namespace trustsim::agents
