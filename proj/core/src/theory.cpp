#include "airsum/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace airsum {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }
}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

PropagationModel make_propagation_model(double p_tilde) {
  if (!(p_tilde > 1.0)) {
    throw std::invalid_argument("make_propagation_model: p_tilde must exceed 1");
  }
  return PropagationModel{p_tilde, 2.0 * (1.0 - 1.0 / p_tilde)};
}

std::vector<double> summed_digit_pmf(const std::vector<AlphabetSpec>& alphabets) {
  std::vector<double> pmf{1.0};
  for (const auto& a : alphabets) {
    std::vector<double> next(pmf.size() + a.size - 1, 0.0);
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      for (int s = 0; s < a.size; ++s) {
        double p = a.pmf.empty() ? 1.0 / a.size : a.pmf[s];
        next[i + s] += pmf[i] * p;
      }
    }
    pmf.swap(next);
  }
  return pmf;
}

PropagationModel propagation_model_from(const std::vector<AlphabetSpec>& alphabets,
                                        int B) {
  auto pmf = summed_digit_pmf(alphabets);
  double p0 = pmf.front();
  double ptop = (B - 1) < static_cast<int>(pmf.size()) ? pmf[B - 1] : 0.0;
  double pmin = std::min(p0, ptop);
  if (pmin <= 0.0) {
    // an extreme digit is unreachable, carries never propagate
    return PropagationModel{std::numeric_limits<double>::infinity(), 2.0};
  }
  return make_propagation_model(1.0 / pmin);
}

double first_nonzero_digit_prob(int m, double snr, int B) {
  if (m < 1) throw std::invalid_argument("first_nonzero_digit_prob: m < 1");
  double rsnr = std::sqrt(snr);
  double bm = std::pow(static_cast<double>(B), m);
  return 2.0 * q_function(rsnr / bm) - 2.0 * q_function(rsnr / (bm / B));
}

double pe_unshielded_series(int R, int M, double snr, int B,
                            const PropagationModel& model) {
  if (R < 1 || R > M) throw std::invalid_argument("pe_unshielded_series: bad R");
  double rsnr = std::sqrt(snr);
  double bm = std::pow(static_cast<double>(B), R);
  double atten = 1.0;
  double sum = 0.0;
  for (int m = R; m <= M + 1; ++m) {
    sum += q_function(rsnr / bm) * atten;
    bm *= B;
    atten /= model.p_tilde;  // p_tilde may be +inf, later terms drop out
  }
  return clamp01(model.c0 * sum);
}

int m_star(double snr, int B) {
  double rsnr = std::sqrt(snr);
  if (!std::isfinite(rsnr)) throw std::invalid_argument("m_star: snr must be finite");
  int m = 0;
  if (rsnr >= 1.0) {
    double p = 1.0;
    while (p * B <= rsnr) {
      p *= B;
      ++m;
    }
  } else {
    double p = 1.0;
    while (p > rsnr) {
      p /= B;
      --m;
    }
  }
  return m;
}

FloorResult pe_unshielded_floor(int R, double snr, int B,
                                const PropagationModel& model) {
  if (R < 1) throw std::invalid_argument("pe_unshielded_floor: R < 1");
  int ms = m_star(snr, B);
  double value = model.c0 * q_function(1.0) *
                 std::pow(model.p_tilde, static_cast<double>(ms - R));
  return FloorResult{clamp01(value), ms};
}

double pe_shielded(int R, double snr, const DigitPlan& plan) {
  if (R < 0 || R > plan.size()) throw std::invalid_argument("pe_shielded: bad R");
  double dr = plan.denominator(R).convert_to<double>();
  return clamp01(2.0 * q_function(std::sqrt(snr) / dr));
}

double rate_unshielded_upper(double eps, double snr, int q, int K) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("rate_unshielded_upper: eps outside (0,1)");
  }
  double p_tilde = std::pow(static_cast<double>(q), K);
  double c0 = 2.0 * (1.0 - 1.0 / p_tilde);
  double main_term = 0.5 * std::log2(snr) / (std::log2(q) + std::log2(K));
  double gap = std::log2(c0 * q_function(1.0) / eps) / K;
  return main_term - gap;
}

ShieldedRate rate_shielded_lower(double eps, double snr, int B, int beta_bar) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("rate_shielded_lower: eps outside (0,1)");
  }
  double rho = B + 2.0 * beta_bar;
  double gap = std::log2(2.0 * std::log(1.0 / eps)) / (2.0 * std::log2(rho));
  return ShieldedRate{0.5 * std::log2(snr) / std::log2(rho) - gap, gap};
}

VariableRate rate_variable_lower(double eps, double snr, int B) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("rate_variable_lower: eps outside (0,1)");
  }
  double logb = std::log2(static_cast<double>(B));
  double head = 0.5 * std::log2(snr);
  double gap = 0.5 * std::log2(2.0 * std::log(1.0 / eps)) / logb;
  auto mu = static_cast<long long>(std::ceil((head - gap * logb) / logb));
  if (mu < 0) mu = 0;
  long long guards = static_cast<long long>(
      std::ceil(std::sqrt(2.0 * static_cast<double>(mu))));
  long long R = std::max<long long>(0, mu - guards);
  return VariableRate{mu, R, gap};
}

}  // namespace airsum
