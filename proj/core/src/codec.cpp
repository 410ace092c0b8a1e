#include "airsum/codec.hpp"

#include <algorithm>
#include <stdexcept>

namespace airsum {

EncoderContext::EncoderContext(const DigitPlan& p, int K_, int L_)
    : plan(p), K(K_), L(L_), scale(BigInt(K_) * p.full_denominator()) {
  BigInt w = plan.full_denominator();
  weights.reserve(plan.size());
  // W_m = D_M / D_m built as a running quotient
  for (int m = 0; m < plan.size(); ++m) {
    w /= plan.slots[m].radix();
    weights.push_back(w);
  }
  guard_constant = 0;
  for (int m = 0; m < plan.size(); ++m) {
    const auto& slot = plan.slots[m];
    if (slot.role == SlotRole::information) {
      info_slots.push_back(m);
      guard_constant += BigInt(slot.guard_low) * weights[m];
    } else {
      guard_constant += BigInt(guard_slot_level(slot)) * weights[m];
    }
  }
}

long long preprocess(int symbol, const AlphabetSpec& alphabet) {
  if (symbol < 0 || symbol >= alphabet.size) {
    throw std::out_of_range("preprocess: symbol outside alphabet");
  }
  return alphabet.pre_offset + alphabet.pre_spacing * symbol;
}

BigInt encode_block_row(const EncoderContext& ctx, const SourceBlock& block, int k) {
  if (block.info_count != static_cast<int>(ctx.info_slots.size())) {
    throw std::invalid_argument("encode_block_row: block shape mismatch");
  }
  BigInt acc = ctx.guard_constant;
  for (int j = 0; j < block.info_count; ++j) {
    int s = block.at(k, j);
    if (s < 0) throw std::invalid_argument("encode_block_row: negative symbol");
    acc += BigInt(static_cast<long long>(ctx.K) * s) * ctx.weights[ctx.info_slots[j]];
  }
  return acc;
}

BigInt encode_block_row(const SourceBlock& block, int k, const DigitPlan& plan, int K) {
  // L only matters for decoding; 2 keeps the context valid.
  EncoderContext ctx(plan, K, 2);
  return encode_block_row(ctx, block, k);
}

BlockStatistics block_statistics(const DigitPlan& plan,
                                 const std::vector<AlphabetSpec>& alphabets) {
  BlockStatistics st;
  st.gamma.reserve(alphabets.size());
  st.variance.reserve(alphabets.size());
  int K = static_cast<int>(alphabets.size());
  for (const auto& a : alphabets) {
    double mean_level = a.expected_level();
    double var_level = a.level_variance();
    double gamma = 0.0, var = 0.0;
    double inv_d = 1.0;
    for (const auto& slot : plan.slots) {
      inv_d /= slot.radix();
      if (slot.role == SlotRole::information) {
        gamma += (mean_level + static_cast<double>(slot.guard_low) / K) * inv_d;
        var += var_level * inv_d * inv_d;
      } else {
        gamma += (static_cast<double>(guard_slot_level(slot)) / K) * inv_d;
      }
    }
    st.gamma.push_back(gamma);
    st.variance.push_back(var);
  }
  return st;
}

double power_scale(const std::vector<double>& variances) {
  if (variances.empty()) throw std::domain_error("power_scale: no variances");
  double vmax = *std::max_element(variances.begin(), variances.end());
  if (!(vmax > 0.0)) {
    throw std::domain_error("power_scale: all variances zero, degenerate sources");
  }
  return 1.0 / std::sqrt(vmax);
}

GridReal modulate(const BigInt& numerator, const GridReal& gamma,
                  const GridScale& scale) {
  return grid_from_numerator(numerator, scale) - gamma;
}

DecodeResult decode_digits(const GridReal& y_over_eta, const GridReal& gamma_bar,
                           const GridScale& scale, const DigitPlan& plan, int L) {
  BigInt num = y_over_eta.ticks + gamma_bar.ticks;
  if (num < 0) num = 0;
  if (num >= scale.unit) num = scale.unit - 1;

  DecodeResult res;
  res.raw_digits.reserve(plan.size());
  res.estimates.reserve(plan.information_count());
  BigInt q, r;
  for (const auto& slot : plan.slots) {
    num *= slot.radix();
    boost::multiprecision::divide_qr(num, scale.unit, q, r);
    int digit = q.convert_to<int>();
    num = r;
    res.raw_digits.push_back(digit);
    if (slot.role == SlotRole::information) {
      res.estimates.push_back(std::clamp(digit - slot.guard_low, 0, L - 1));
    }
  }
  res.guard_violation = detect_guard_violation(res, plan, L);
  return res;
}

DecodeResult decode_digits(double y, double eta, double gamma_bar,
                           const DigitPlan& plan, int L, int K) {
  if (!(eta > 0.0)) throw std::invalid_argument("decode_digits: eta must be positive");
  GridScale scale(BigInt(K) * plan.full_denominator());
  GridReal d = grid_from_double(gamma_bar + y / eta, scale);
  return decode_digits(d, GridReal(BigInt(0)), scale, plan, L);
}

std::optional<int> detect_guard_violation(const DecodeResult& result,
                                          const DigitPlan& plan, int L,
                                          int width) {
  int w = width > 0 ? width : L;
  for (int m = 0; m < plan.size(); ++m) {
    const auto& slot = plan.slots[m];
    if (slot.role != SlotRole::information) continue;
    int r = result.raw_digits[m];
    if (r < slot.guard_low || r > slot.guard_low + w - 1) return m + 1;
  }
  return std::nullopt;
}

std::vector<long long> postprocess(const std::vector<int>& estimates,
                                   const std::vector<long long>& table) {
  std::vector<long long> out;
  out.reserve(estimates.size());
  for (int u : estimates) {
    if (u < 0 || u >= static_cast<int>(table.size())) {
      throw std::out_of_range("postprocess: estimate outside table domain");
    }
    out.push_back(table[u]);
  }
  return out;
}

}  // namespace airsum
