#pragma once

#include <optional>
#include <vector>

#include "airsum/core.hpp"
#include "airsum/grid_real.hpp"

namespace airsum {

// Symbols for the information slots only, row-major: symbols[k * count + j]
// holds transmitter k's level for information slot j (0-based ordinal).
struct SourceBlock {
  int K = 1;
  int info_count = 0;
  std::vector<int> symbols;

  int at(int k, int j) const { return symbols[k * info_count + j]; }
};

struct BlockStatistics {
  std::vector<double> gamma;     // per-transmitter mean of b_k
  std::vector<double> variance;  // per-transmitter variance of b_k
};

struct DecodeResult {
  std::vector<int> raw_digits;  // one per slot
  std::vector<int> estimates;   // one per information slot, clamped to [0, L-1]
  std::optional<int> guard_violation;  // smallest violating slot, 1-based
};

// Precomputed per-plan constants shared by every encode call: weights
// W_m = D_M / D_m and the constant guard contribution.
struct EncoderContext {
  DigitPlan plan;
  int K = 1;
  int L = 2;
  GridScale scale;                 // kd = K * D_M
  std::vector<BigInt> weights;     // W_m per slot
  std::vector<int> info_slots;     // 0-based indices
  BigInt guard_constant;           // sum over slots of the symbol-free numerator part

  EncoderContext(const DigitPlan& p, int K_, int L_);
};

long long preprocess(int symbol, const AlphabetSpec& alphabet);

// Exact numerator N_k with b_k = N_k / (K * D_M):
// N_k = sum_m (K * s_k[m] + beta_m) * W_m over information slots, plus the
// fixed mid-range levels of guard slots.
BigInt encode_block_row(const EncoderContext& ctx, const SourceBlock& block, int k);
BigInt encode_block_row(const SourceBlock& block, int k, const DigitPlan& plan, int K);

BlockStatistics block_statistics(const DigitPlan& plan,
                                 const std::vector<AlphabetSpec>& alphabets);

// Common power scale 1 / sqrt(max_k Var(b_k)). Throws std::domain_error when
// every variance is zero.
double power_scale(const std::vector<double>& variances);

// Baseband sample as the grid value x_k / eta = b_k - gamma_k; the caller
// multiplies by eta only when a plain double is needed.
GridReal modulate(const BigInt& numerator, const GridReal& gamma,
                  const GridScale& scale);

// d = gamma_bar + y/eta, clamped into [0, 1), then peeled digit by digit:
// d *= radix_m, r_m = floor(d), d -= r_m. Estimates are r_m - beta_m clamped
// into [0, L-1] for information slots. The signal path stays exact because
// both operands live on the grid.
DecodeResult decode_digits(const GridReal& y_over_eta, const GridReal& gamma_bar,
                           const GridScale& scale, const DigitPlan& plan, int L);

// Convenience entry for plain doubles. The conversion rounds once onto the
// grid, so exactness guarantees only hold when y/eta + gamma_bar happens to
// be representable; simulations use the grid entry point above.
DecodeResult decode_digits(double y, double eta, double gamma_bar,
                           const DigitPlan& plan, int L, int K);

// Smallest information slot (1-based) whose raw digit left the admissible
// window [beta_m, beta_m + width - 1]; width defaults to L when <= 0.
std::optional<int> detect_guard_violation(const DecodeResult& result,
                                          const DigitPlan& plan, int L,
                                          int width = 0);

// Element-wise table lookup; table must cover [0, L-1].
std::vector<long long> postprocess(const std::vector<int>& estimates,
                                   const std::vector<long long>& table);

}  // namespace airsum
