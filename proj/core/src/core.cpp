#include "airsum/core.hpp"

#include <cmath>
#include <stdexcept>

namespace airsum {

double AlphabetSpec::expected_level() const {
  if (pmf.empty()) return 0.5 * (size - 1);
  double m = 0.0;
  for (int s = 0; s < size; ++s) m += pmf[s] * s;
  return m;
}

double AlphabetSpec::level_variance() const {
  if (pmf.empty()) {
    // uniform over 0..q-1
    double q = size;
    return (q * q - 1.0) / 12.0;
  }
  double m = expected_level();
  double v = 0.0;
  for (int s = 0; s < size; ++s) v += pmf[s] * (s - m) * (s - m);
  return v;
}

BigInt DigitPlan::denominator(int m) const {
  if (m < 0 || m > size()) throw std::out_of_range("denominator: bad position");
  BigInt d = 1;
  for (int i = 0; i < m; ++i) d *= slots[i].radix();
  return d;
}

std::vector<int> DigitPlan::information_slots() const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i) {
    if (slots[i].role == SlotRole::information) idx.push_back(i);
  }
  return idx;
}

int DigitPlan::information_count() const {
  int n = 0;
  for (const auto& s : slots) n += (s.role == SlotRole::information) ? 1 : 0;
  return n;
}

int output_alphabet_size(const std::vector<AlphabetSpec>& alphabets) {
  if (alphabets.empty()) {
    throw std::invalid_argument("output_alphabet_size: no alphabets");
  }
  int L = 1;
  for (const auto& a : alphabets) {
    if (a.size < 2) throw std::invalid_argument("output_alphabet_size: q < 2");
    L += a.size - 1;
  }
  return L;
}

DigitPlan make_unshielded_plan(int B, int M) {
  if (B < 2) throw std::invalid_argument("make_unshielded_plan: base < 2");
  if (M < 1) throw std::invalid_argument("make_unshielded_plan: M < 1");
  DigitPlan plan;
  plan.slots.assign(M, DigitSlot{B, 0, 0, SlotRole::information});
  return plan;
}

DigitPlan make_fixed_guard_plan(int B, int M, int beta_bar) {
  if (B < 2) throw std::invalid_argument("make_fixed_guard_plan: base < 2");
  if (M < 1) throw std::invalid_argument("make_fixed_guard_plan: M < 1");
  if (beta_bar < 1) {
    throw std::invalid_argument(
        "make_fixed_guard_plan: beta_bar < 1, use an unshielded plan");
  }
  DigitPlan plan;
  plan.slots.reserve(M);
  plan.slots.push_back(DigitSlot{B, 0, 0, SlotRole::information});
  for (int m = 2; m <= M; ++m) {
    plan.slots.push_back(DigitSlot{B, beta_bar, 2 * beta_bar, SlotRole::information});
  }
  return plan;
}

std::vector<int> variable_guard_positions(int mu) {
  std::vector<int> pos;
  for (int j = 1;; ++j) {
    long long p = static_cast<long long>(j) * (j + 3) / 2;
    if (p > mu) break;
    pos.push_back(static_cast<int>(p));
  }
  return pos;
}

DigitPlan make_variable_length_plan(int B, int mu) {
  if (B < 2) throw std::invalid_argument("make_variable_length_plan: base < 2");
  if (mu < 1) throw std::invalid_argument("make_variable_length_plan: mu < 1");
  DigitPlan plan;
  plan.slots.reserve(mu);
  auto guards = variable_guard_positions(mu);
  std::size_t g = 0;
  for (int m = 1; m <= mu; ++m) {
    bool is_guard = g < guards.size() && guards[g] == m;
    if (is_guard) ++g;
    plan.slots.push_back(DigitSlot{
        B + m - 1, 0, 0, is_guard ? SlotRole::guard : SlotRole::information});
  }
  return plan;
}

int guard_slot_level(const DigitSlot& slot) { return (slot.radix() - 1) / 2; }

DigitPlan make_plan(const SchemeSpec& scheme, int L) {
  int B = scheme.base.value_or(L);
  switch (scheme.kind) {
    case SchemeKind::unshielded:
      return make_unshielded_plan(B, scheme.length);
    case SchemeKind::fixed_guard:
      return make_fixed_guard_plan(B, scheme.length, scheme.beta_bar);
    case SchemeKind::variable_length:
      return make_variable_length_plan(B, scheme.length);
  }
  throw std::invalid_argument("make_plan: unknown scheme");
}

std::optional<PlanViolation> validate_plan(const DigitPlan& plan,
                                           const SystemConfig& config) {
  if (plan.size() == 0) return PlanViolation{0, "plan has no slots"};
  int L = 0;
  try {
    L = output_alphabet_size(config.alphabets);
  } catch (const std::exception& e) {
    return PlanViolation{0, e.what()};
  }
  for (int i = 0; i < plan.size(); ++i) {
    const auto& s = plan.slots[i];
    if (s.guard_low < 0 || s.guard_span < 0) {
      return PlanViolation{i + 1, "negative guard parameters"};
    }
    if (s.guard_low > s.guard_span + 1) {
      return PlanViolation{i + 1, "guard_low exceeds guard_span + 1"};
    }
    if (s.radix() < 2) return PlanViolation{i + 1, "radix < 2"};
    if (s.role == SlotRole::information && s.base < L) {
      return PlanViolation{i + 1, "B < L"};
    }
  }
  return std::nullopt;
}

std::optional<std::string> validate_config(const SystemConfig& config) {
  if (config.K < 1) return "K < 1";
  if (static_cast<int>(config.alphabets.size()) != config.K) {
    return "alphabet count does not match K";
  }
  for (const auto& a : config.alphabets) {
    if (a.size < 2) return "alphabet size < 2";
    if (a.pre_spacing == 0) return "pre_spacing is zero";
    if (!a.pmf.empty()) {
      if (static_cast<int>(a.pmf.size()) != a.size) return "pmf length mismatch";
      double sum = 0.0;
      for (double p : a.pmf) {
        if (p < 0.0) return "negative pmf entry";
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) return "pmf does not sum to 1";
    }
  }
  if (!(config.snr > 0.0)) return "snr must be positive";
  if (config.trials < 1) return "trials < 1";
  if (auto v = validate_plan(config.plan, config)) {
    return "slot " + std::to_string(v->slot) + ": " + v->message;
  }
  return std::nullopt;
}

const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::unshielded: return "unshielded";
    case SchemeKind::fixed_guard: return "fixed_guard";
    case SchemeKind::variable_length: return "variable_length";
  }
  return "unknown";
}

}  // namespace airsum
