#include "airsum/channel.hpp"

#include <cmath>

namespace airsum {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

TrialRng derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  std::uint64_t s = splitmix64(master_seed ^ splitmix64(trial_index + 1));
  return TrialRng{std::mt19937_64(s)};
}

double uniform_double(TrialRng& rng) {
  return static_cast<double>(rng.engine() >> 11) * 0x1.0p-53;
}

double sample_gaussian(TrialRng& rng) {
  for (;;) {
    double u = 2.0 * uniform_double(rng) - 1.0;
    double v = 2.0 * uniform_double(rng) - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double sample_noise(double sigma, TrialRng& rng) {
  if (sigma == 0.0) return 0.0;
  return sigma * sample_gaussian(rng);
}

int sample_symbol(int q, TrialRng& rng) {
  return static_cast<int>(rng.engine() % static_cast<std::uint64_t>(q));
}

GridReal transmit(const std::vector<GridReal>& x_over_eta,
                  const GridReal& noise_over_eta) {
  GridReal y = noise_over_eta;
  for (const auto& x : x_over_eta) y = y + x;
  return y;
}

double transmit(const std::vector<double>& x, double z) {
  double y = z;
  for (double v : x) y += v;
  return y;
}

}  // namespace airsum
