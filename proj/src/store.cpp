#include "trustsim/store.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "trustsim/text.hpp"

namespace trustsim::store {

const char* to_string(TableKind k) { return k == TableKind::UTT ? "UTT" : "DTT"; }

TrustTableSnapshot utt_snapshot(const agents::WorldState& world) {
  TrustTableSnapshot snapshot;
  snapshot.kind = TableKind::UTT;
  for (const auto& u : world.users) {
    snapshot.entries.push_back({u.user_id, u.ledger.negative_count,
                                u.ledger.total_count, u.ledger.value, u.status,
                                u.strikes});
  }
  return snapshot;
}

TrustTableSnapshot dtt_snapshot(const agents::WorldState& world) {
  TrustTableSnapshot snapshot;
  snapshot.kind = TableKind::DTT;
  for (const auto& d : world.domains) {
    snapshot.entries.push_back({d.domain_id, d.ledger.negative_count,
                                d.ledger.total_count, d.ledger.value,
                                std::nullopt, std::nullopt});
  }
  return snapshot;
}

void save_tables(const TrustTableSnapshot& snapshot, std::ostream& out) {
  out << "#kind=" << to_string(snapshot.kind)
      << " schema=" << snapshot.schema_version << "\n";
  for (const auto& e : snapshot.entries) {
    out << e.entity_id << '\t' << e.negative_count << '\t' << e.total_count
        << '\t' << format_double(e.value) << '\t'
        << (e.status ? agents::to_string(*e.status) : "-") << '\t'
        << (e.strikes ? std::to_string(*e.strikes) : "-") << '\n';
  }
}

void save_tables(const TrustTableSnapshot& snapshot,
                 const std::filesystem::path& destination) {
  std::ofstream out(destination);
  if (!out) {
    throw IoError("cannot write " + destination.string());
  }
  save_tables(snapshot, out);
  out.flush();
  if (!out) {
    throw IoError("write failed for " + destination.string());
  }
}

namespace {

TableEntry parse_entry(std::string_view line, int line_no) {
  auto fields = split(line, '\t');
  if (fields.size() != 6) {
    throw ParseError(line_no, "expected 6 tab-separated fields, got " +
                                  std::to_string(fields.size()));
  }
  TableEntry e;
  e.entity_id = std::string(fields[0]);
  if (e.entity_id.empty()) {
    throw ParseError(line_no, "entity_id must be non-empty");
  }
  if (!parse_u64(fields[1], e.negative_count)) {
    throw ParseError(line_no, "bad negative_count '" +
                                  std::string(fields[1]) + "'");
  }
  if (!parse_u64(fields[2], e.total_count)) {
    throw ParseError(line_no,
                     "bad total_count '" + std::string(fields[2]) + "'");
  }
  if (!parse_double(fields[3], e.value)) {
    throw ParseError(line_no, "bad value '" + std::string(fields[3]) + "'");
  }
  if (fields[4] != "-") {
    auto status = agents::status_from_string(fields[4]);
    if (!status) {
      throw ParseError(line_no, "bad status '" + std::string(fields[4]) + "'");
    }
    e.status = status;
  }
  if (fields[5] != "-") {
    std::uint64_t strikes = 0;
    if (!parse_u64(fields[5], strikes)) {
      throw ParseError(line_no,
                       "bad strikes '" + std::string(fields[5]) + "'");
    }
    e.strikes = static_cast<int>(strikes);
  }

  if (e.negative_count > e.total_count) {
    throw ParseError(line_no, "negative_count " +
                                  std::to_string(e.negative_count) +
                                  " exceeds total_count " +
                                  std::to_string(e.total_count));
  }
  if (!std::isfinite(e.value) || e.value < 0.0 || e.value > 1.0) {
    throw ParseError(line_no, "value must be in [0,1]");
  }
  return e;
}

}  // namespace

TrustTableSnapshot load_tables(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(1, "missing header line");
  }
  TrustTableSnapshot snapshot;
  {
    auto fields = split(line, ' ');
    if (fields.size() != 2 || !fields[0].starts_with("#kind=") ||
        !fields[1].starts_with("schema=")) {
      throw ParseError(1, "expected header '#kind=<UTT|DTT> schema=<n>'");
    }
    auto kind = fields[0].substr(6);
    if (kind == "UTT") {
      snapshot.kind = TableKind::UTT;
    } else if (kind == "DTT") {
      snapshot.kind = TableKind::DTT;
    } else {
      throw ParseError(1, "unknown table kind '" + std::string(kind) + "'");
    }
    std::uint64_t schema = 0;
    if (!parse_u64(fields[1].substr(7), schema) || schema != 1) {
      throw ParseError(1, "unsupported schema '" + std::string(fields[1]) + "'");
    }
    snapshot.schema_version = static_cast<int>(schema);
  }

  std::set<std::string> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    TableEntry entry = parse_entry(line, line_no);
    if (!seen.insert(entry.entity_id).second) {
      throw ParseError(line_no,
                       "duplicate entity_id '" + entry.entity_id + "'");
    }
    snapshot.entries.push_back(std::move(entry));
  }
  return snapshot;
}

TrustTableSnapshot load_tables(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) {
    throw IoError("cannot read " + source.string());
  }
  return load_tables(in);
}

std::vector<std::string> consistency_warnings(
    const TrustTableSnapshot& snapshot, const trust::LayerParams& params) {
  std::vector<std::string> warnings;
  constexpr double kTol = 1e-9;
  for (const auto& e : snapshot.entries) {
    if (e.total_count == 0) {
      if (std::abs(e.value - params.initial_trust) > kTol) {
        warnings.push_back(e.entity_id + ": value " + format_double(e.value) +
                           " differs from initial trust " +
                           format_double(params.initial_trust));
      }
      continue;
    }
    // the latest action's weight is not stored, so accept any class weight
    // the counters admit
    std::vector<double> candidates;
    if (e.negative_count < e.total_count) candidates.push_back(params.w_positive);
    if (e.negative_count > 0) {
      candidates.push_back(params.w_wrong);
      candidates.push_back(params.w_malicious);
    }
    bool ok = false;
    for (double w : candidates) {
      if (std::abs(e.value - trust::action_value(e.negative_count,
                                                 e.total_count, w, params.m)) <=
          kTol) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      warnings.push_back(e.entity_id + ": value " + format_double(e.value) +
                         " is not reproducible from counters " +
                         std::to_string(e.negative_count) + "/" +
                         std::to_string(e.total_count));
    }
  }
  return warnings;
}

void save_audit(const std::vector<agents::AuditEntry>& events,
                std::ostream& out) {
  for (const auto& e : events) {
    out << e.request_id << '\t' << agents::to_string(e.step) << '\t'
        << e.entity << '\t' << e.detail << '\n';
  }
}

void save_audit(const std::vector<agents::AuditEntry>& events,
                const std::filesystem::path& destination) {
  std::ofstream out(destination);
  if (!out) {
    throw IoError("cannot write " + destination.string());
  }
  save_audit(events, out);
  out.flush();
  if (!out) {
    throw IoError("write failed for " + destination.string());
  }
}

std::vector<agents::AuditEntry> load_audit(std::istream& in) {
  std::vector<agents::AuditEntry> events;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() < 4) {
      throw ParseError(line_no, "expected 4 tab-separated fields");
    }
    agents::AuditEntry e;
    if (!parse_u64(fields[0], e.request_id)) {
      throw ParseError(line_no,
                       "bad request_id '" + std::string(fields[0]) + "'");
    }
    auto step = agents::step_from_string(fields[1]);
    if (!step) {
      throw ParseError(line_no, "unknown step '" + std::string(fields[1]) + "'");
    }
    e.step = *step;
    e.entity = std::string(fields[2]);
    // details may contain tabs; stitch the remainder back together
    std::string detail(fields[3]);
    for (std::size_t i = 4; i < fields.size(); ++i) {
      detail += '\t';
      detail += std::string(fields[i]);
    }
    e.detail = std::move(detail);
    events.push_back(std::move(e));
  }
  return events;
}

}  // namespace trustsim::store
