#pragma once

#include <vector>

#include "airsum/core.hpp"

namespace airsum {

// Standard normal tail Pr(N(0,1) > x).
double q_function(double x);

// Carry-propagation model of the summed digit sequence. p_tilde is the
// reciprocal of the probability that a summed digit sits at an extreme
// (0 or B-1); it may be infinite when an extreme is unreachable, in which
// case propagation terms vanish.
struct PropagationModel {
  double p_tilde = 2.0;
  double c0 = 1.0;  // 2 * (1 - 1/p_tilde)
};

PropagationModel make_propagation_model(double p_tilde);
PropagationModel propagation_model_from(const std::vector<AlphabetSpec>& alphabets,
                                        int B);

// Distribution of the summed digit u = sum_k s_k (independent transmitters),
// length output_alphabet_size(alphabets).
std::vector<double> summed_digit_pmf(const std::vector<AlphabetSpec>& alphabets);

// Probability that the first noise-perturbed digit, reading from the least
// significant end, appears at depth m: 2Q(sqrt(snr)/B^m) - 2Q(sqrt(snr)/B^(m-1)).
double first_nonzero_digit_prob(int m, double snr, int B);

// Union-bound series for an unshielded prefix of length R out of M digits:
// c0 * sum_{m=R}^{M+1} Q(sqrt(snr)/B^m) * p_tilde^(R-m), clamped to [0, 1].
double pe_unshielded_series(int R, int M, double snr, int B,
                            const PropagationModel& model);

// Depth at which noise magnitude matches digit resolution.
int m_star(double snr, int B);

struct FloorResult {
  double value = 0.0;
  int m_star = 0;
};

// Single-term lower bound c0 * Q(1) * p_tilde^(m_star - R), clamped to [0, 1].
FloorResult pe_unshielded_floor(int R, double snr, int B,
                                const PropagationModel& model);

// Guarded-prefix failure probability 2Q(sqrt(snr)/D_R) with the plan's
// cumulative denominator. R = 0 degenerates to 2Q(sqrt(snr)).
double pe_shielded(int R, double snr, const DigitPlan& plan);

// Prefix-rate upper bound for unshielded coding with K identical q-ary
// uniform sources: 0.5*log2(snr)/(log2 q + log2 K) - log2(c0 Q(1)/eps)/K.
double rate_unshielded_upper(double eps, double snr, int q, int K);

struct ShieldedRate {
  double rate = 0.0;
  double gap = 0.0;
};

// 0.5*log2(snr)/log2(B+2*beta_bar) - gap, gap = log2(2 ln(1/eps)) / (2 log2(B+2*beta_bar)).
ShieldedRate rate_shielded_lower(double eps, double snr, int B, int beta_bar);

struct VariableRate {
  long long mu = 0;
  long long R = 0;
  double gap = 0.0;
};

// mu = ceil((0.5*log2(snr) - 0.5*log2(2 ln(1/eps))) / log2 B), R = mu - ceil(sqrt(2 mu)).
VariableRate rate_variable_lower(double eps, double snr, int B);

}  // namespace airsum
