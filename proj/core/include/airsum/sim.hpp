#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "airsum/core.hpp"

namespace airsum {

// First-error-position histogram over information ordinals (1-based); the
// trailing bucket counts error-free trials. Cumulative sums give the prefix
// error estimate for every R at once.
struct PrefixErrorStats {
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> first_error;
  std::vector<std::uint64_t> guard_flag;

  int info_count() const { return static_cast<int>(first_error.size()) - 1; }
  void merge(const PrefixErrorStats& other);
  double pe_hat(int R) const;
  double guard_rate(int R) const;
};

struct EstimateCI {
  double p_hat = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Worker count resolution order: explicit argument, AIRSUM_WORKERS, then
// hardware concurrency. Results never depend on the partitioning because
// every trial derives its own rng stream.
int resolve_workers(int requested = 0);

PrefixErrorStats run_experiment(const SystemConfig& config, int workers = 0);

// Wilson score interval at 95%.
EstimateCI estimate_pe(const PrefixErrorStats& stats, int R);

// Largest R with pe_hat(R) <= eps, 0 when even R=1 fails.
int empirical_epsilon_rate(const PrefixErrorStats& stats, double eps);

enum class SweepAxis { snr, K, beta_bar, epsilon };

// Template from which sweep points rebuild their configuration. The alphabet
// is replicated per transmitter; base defaults to the output alphabet size.
struct SweepTemplate {
  SchemeSpec scheme;
  int K = 2;
  AlphabetSpec alphabet;
  double snr = 100.0;  // linear
  double epsilon = 1e-2;
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 0;
};

struct SweepPoint {
  double value = 0.0;
  std::optional<std::string> error;
  PrefixErrorStats stats;
  std::map<std::string, double> analytic;
};

std::vector<SweepPoint> sweep(const SweepTemplate& base, SweepAxis axis,
                              const std::vector<double>& values,
                              int workers = 0);

}  // namespace airsum
