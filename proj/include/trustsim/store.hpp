#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trustsim/agents.hpp"
#include "trustsim/scenario.hpp"
#include "trustsim/trust.hpp"

namespace trustsim::store {

/// Malformed or invariant-violating table/audit data. `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class TableKind { UTT, DTT };

const char* to_string(TableKind k);

/// One persisted ledger row. `status` and `strikes` are carried for user
/// tables and absent for domain tables.
struct TableEntry {
  std::string entity_id;
  std::uint64_t negative_count = 0;
  std::uint64_t total_count = 0;
  double value = 1.0;
  std::optional<agents::UserStatus> status;
  std::optional<int> strikes;

  bool operator==(const TableEntry&) const = default;
};

struct TrustTableSnapshot {
  TableKind kind = TableKind::UTT;
  int schema_version = 1;
  std::vector<TableEntry> entries;

  bool operator==(const TrustTableSnapshot&) const = default;
};

TrustTableSnapshot utt_snapshot(const agents::WorldState& world);
TrustTableSnapshot dtt_snapshot(const agents::WorldState& world);

/// Line-delimited text: a `#kind=UTT schema=1` header, then one
/// tab-separated row per entity:
///
///   entity_id  negative_count  total_count  value  status  strikes
///
/// Domain rows carry "-" in the status and strikes columns. Values are
/// shortest round-trip decimals, so save -> load is lossless.
void save_tables(const TrustTableSnapshot& snapshot, std::ostream& out);
void save_tables(const TrustTableSnapshot& snapshot,
                 const std::filesystem::path& destination);

/// Parses and validates a snapshot. Throws ParseError with the offending
/// line number on malformed input or invariant violations (counters,
/// value range).
TrustTableSnapshot load_tables(std::istream& in);
TrustTableSnapshot load_tables(const std::filesystem::path& source);

/// Stored values are caches over the counters. Returns one warning per
/// entry whose value cannot be reproduced from its counters under the
/// given layer parameters.
std::vector<std::string> consistency_warnings(
    const TrustTableSnapshot& snapshot, const trust::LayerParams& params);

/// Audit log: one `request_id<TAB>step<TAB>entity<TAB>detail` line per
/// protocol event, append-friendly.
void save_audit(const std::vector<agents::AuditEntry>& events,
                std::ostream& out);
void save_audit(const std::vector<agents::AuditEntry>& events,
                const std::filesystem::path& destination);
std::vector<agents::AuditEntry> load_audit(std::istream& in);

}  // namespace trustsim::store
