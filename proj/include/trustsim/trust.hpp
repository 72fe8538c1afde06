#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trustsim::trust {

/// Behavior classes an executed task can exhibit. Wrong and Malicious are
/// the two negative classes; they differ only in weight.
enum class ActionClass { Positive, Wrong, Malicious };

inline bool is_negative(ActionClass a) { return a != ActionClass::Positive; }

const char* to_string(ActionClass a);
std::optional<ActionClass> action_from_string(std::string_view s);

/// Weighting and gating parameters for one tier (user or domain layer).
///
/// The action value of an entity is
///
///     V = (1 - negative/total) * w^m
///
/// where w is the weight of the latest action and m the security level.
/// Valid ranges: weights in [0,1], m >= 1, threshold in [0,1),
/// initial_trust in [0,1].
struct LayerParams {
  double w_positive = 1.0;
  double w_wrong = 0.8;
  double w_malicious = 0.8;
  double m = 1.0;
  double threshold = 0.1;
  double initial_trust = 1.0;

  /// Common two-weight setup: one weight for positive actions, one shared
  /// by both negative classes.
  static LayerParams two_weight(double w_pos, double w_neg, double m,
                                double threshold, double initial_trust = 1.0);

  /// Every violated invariant, one message per field. Empty when valid.
  std::vector<std::string> violations() const;
  bool valid() const { return violations().empty(); }
};

/// Per-entity action counters plus the current action value.
/// `history` keeps the full action sequence for replay and audit.
struct TrustLedger {
  std::uint64_t negative_count = 0;
  std::uint64_t total_count = 0;
  double value = 1.0;
  std::vector<ActionClass> history;

  bool consistent() const;
};

/// Ledger with no recorded actions, valued at the layer's initial trust.
TrustLedger fresh_ledger(const LayerParams& params);

/// Weight assigned to an action class under the given layer.
double action_weight(ActionClass a, const LayerParams& params);

/// The action-value formula on raw counters. `total_count` must be >= 1;
/// `weight` is the weight of the latest action.
double action_value(std::uint64_t negative_count, std::uint64_t total_count,
                    double weight, double m);

/// Records one action: counters are bumped first, then the value is
/// recomputed wholly from the counters (no blending with the prior value).
TrustLedger update_trust(TrustLedger ledger, ActionClass action,
                         const LayerParams& params);

/// Strict comparison: value must exceed the threshold, equality fails.
bool passes_threshold(const TrustLedger& ledger, const LayerParams& params);

/// Value after each step of folding update_trust over a fresh ledger.
std::vector<double> replay(const std::vector<ActionClass>& history,
                           const LayerParams& params);

/// Round-half-up to one decimal; integral results lose the ".0".
std::string format_value_1dp(double value);

}  // namespace trustsim::trust
