#include "trustsim/trust.hpp"

#include <algorithm>
#include <cmath>

namespace trustsim::trust {

const char* to_string(ActionClass a) {
  switch (a) {
    case ActionClass::Positive: return "positive";
    case ActionClass::Wrong: return "wrong";
    case ActionClass::Malicious: return "malicious";
  }
  return "?";
}

std::optional<ActionClass> action_from_string(std::string_view s) {
  if (s == "positive") return ActionClass::Positive;
  if (s == "wrong") return ActionClass::Wrong;
  if (s == "malicious") return ActionClass::Malicious;
  return std::nullopt;
}

LayerParams LayerParams::two_weight(double w_pos, double w_neg, double m,
                                    double threshold, double initial_trust) {
  LayerParams p;
  p.w_positive = w_pos;
  p.w_wrong = w_neg;
  p.w_malicious = w_neg;
  p.m = m;
  p.threshold = threshold;
  p.initial_trust = initial_trust;
  return p;
}

namespace {

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

void check_unit(std::vector<std::string>& out, const char* field, double x) {
  if (!in_unit(x)) {
    out.push_back(std::string(field) + " must be in [0,1]");
  }
}

}  // namespace

std::vector<std::string> LayerParams::violations() const {
  std::vector<std::string> out;
  check_unit(out, "w_positive", w_positive);
  check_unit(out, "w_wrong", w_wrong);
  check_unit(out, "w_malicious", w_malicious);
  if (!std::isfinite(m) || m < 1.0) {
    out.push_back("m must be >= 1");
  }
  if (!std::isfinite(threshold) || threshold < 0.0 || threshold >= 1.0) {
    out.push_back("threshold must be in [0,1)");
  }
  check_unit(out, "initial_trust", initial_trust);
  return out;
}

bool TrustLedger::consistent() const {
  if (negative_count > total_count) return false;
  if (!in_unit(value)) return false;
  if (!history.empty()) {
    if (history.size() != total_count) return false;
    auto negatives = static_cast<std::uint64_t>(
        std::count_if(history.begin(), history.end(),
                      [](ActionClass a) { return is_negative(a); }));
    if (negatives != negative_count) return false;
  }
  return true;
}

TrustLedger fresh_ledger(const LayerParams& params) {
  TrustLedger ledger;
  ledger.value = params.initial_trust;
  return ledger;
}

double action_weight(ActionClass a, const LayerParams& params) {
  switch (a) {
    case ActionClass::Positive: return params.w_positive;
    case ActionClass::Wrong: return params.w_wrong;
    case ActionClass::Malicious: return params.w_malicious;
  }
  return 0.0;
}

double action_value(std::uint64_t negative_count, std::uint64_t total_count,
                    double weight, double m) {
  double past = 1.0 - static_cast<double>(negative_count) /
                          static_cast<double>(total_count);
  return past * std::pow(weight, m);
}

TrustLedger update_trust(TrustLedger ledger, ActionClass action,
                         const LayerParams& params) {
  ledger.total_count += 1;
  if (is_negative(action)) {
    ledger.negative_count += 1;
  }
  ledger.value = action_value(ledger.negative_count, ledger.total_count,
                              action_weight(action, params), params.m);
  ledger.history.push_back(action);
  return ledger;
}

bool passes_threshold(const TrustLedger& ledger, const LayerParams& params) {
  return ledger.value > params.threshold;
}

std::vector<double> replay(const std::vector<ActionClass>& history,
                           const LayerParams& params) {
  std::vector<double> values;
  values.reserve(history.size());
  TrustLedger ledger = fresh_ledger(params);
  for (ActionClass a : history) {
    ledger = update_trust(ledger, a, params);
    values.push_back(ledger.value);
  }
  return values;
}

std::string format_value_1dp(double value) {
  auto tenths = static_cast<long>(std::floor(value * 10.0 + 0.5));
  if (tenths % 10 == 0) {
    return std::to_string(tenths / 10);
  }
  std::string s = std::to_string(tenths / 10);
  s += '.';
  s += static_cast<char>('0' + std::labs(tenths % 10));
  return s;
}

}  // namespace trustsim::trust
