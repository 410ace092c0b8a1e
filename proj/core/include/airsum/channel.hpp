#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "airsum/grid_real.hpp"

namespace airsum {

struct NoiseSpec {
  double sigma = 0.0;
};

inline double noise_sigma(double eta, double snr) { return eta / std::sqrt(snr); }

std::uint64_t splitmix64(std::uint64_t x);

// One independent stream per trial. Seeding is a documented 64-bit mix:
// mt19937_64(splitmix64(master_seed ^ splitmix64(trial_index + 1))).
// splitmix64 is a bijection, so distinct trial indices can never collide
// under a fixed master seed, and the stream does not depend on which worker
// runs the trial.
struct TrialRng {
  std::mt19937_64 engine;
};

TrialRng derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index);

// 53-bit mantissa uniform in [0, 1).
double uniform_double(TrialRng& rng);

// Marsaglia polar method, first value of the pair; the second is discarded
// so call sequences stay stateless. std::normal_distribution is avoided
// because its draw sequence is not pinned down by the standard.
double sample_gaussian(TrialRng& rng);

double sample_noise(double sigma, TrialRng& rng);

// Uniform level in [0, q-1] via modulo; the bias is below q * 2^-64.
int sample_symbol(int q, TrialRng& rng);

// y = sum_k x_k + z. The grid form is exact; the double form is a plain sum
// for callers working outside the grid.
GridReal transmit(const std::vector<GridReal>& x_over_eta, const GridReal& noise_over_eta);
double transmit(const std::vector<double>& x, double z);

}  // namespace airsum
