#include "airsum/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "airsum/channel.hpp"
#include "airsum/codec.hpp"
#include "airsum/theory.hpp"

namespace airsum {

void PrefixErrorStats::merge(const PrefixErrorStats& other) {
  if (first_error.empty()) {
    *this = other;
    return;
  }
  if (other.first_error.size() != first_error.size()) {
    throw std::invalid_argument("merge: histogram shape mismatch");
  }
  trials += other.trials;
  for (std::size_t i = 0; i < first_error.size(); ++i) {
    first_error[i] += other.first_error[i];
    guard_flag[i] += other.guard_flag[i];
  }
}

double PrefixErrorStats::pe_hat(int R) const {
  if (R < 1 || R > info_count()) throw std::out_of_range("pe_hat: bad R");
  std::uint64_t c = 0;
  for (int i = 0; i < R; ++i) c += first_error[i];
  return static_cast<double>(c) / static_cast<double>(trials);
}

double PrefixErrorStats::guard_rate(int R) const {
  if (R < 1 || R > info_count()) throw std::out_of_range("guard_rate: bad R");
  std::uint64_t c = 0;
  for (int i = 0; i < R; ++i) c += guard_flag[i];
  return static_cast<double>(c) / static_cast<double>(trials);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("AIRSUM_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

struct TrialWorkspace {
  const SystemConfig& cfg;
  EncoderContext enc;
  std::vector<GridReal> gamma_grid;
  GridReal gamma_bar;
  double inv_rsnr;
  std::vector<int> qs;
  std::vector<int> ordinal_of_slot;  // 1-based info ordinal, 0 for guard slots

  explicit TrialWorkspace(const SystemConfig& c)
      : cfg(c),
        enc(c.plan, c.K, output_alphabet_size(c.alphabets)),
        gamma_bar(BigInt(0)) {
    auto stats = block_statistics(c.plan, c.alphabets);
    double eta = power_scale(stats.variance);
    (void)eta;  // sigma enters only through z/eta = g / sqrt(snr)
    for (int k = 0; k < c.K; ++k) {
      gamma_grid.push_back(grid_from_double(stats.gamma[k], enc.scale));
      gamma_bar = gamma_bar + gamma_grid.back();
      qs.push_back(c.alphabets[k].size);
    }
    inv_rsnr = 1.0 / std::sqrt(c.snr);
    ordinal_of_slot.assign(c.plan.size(), 0);
    int ord = 0;
    for (int m = 0; m < c.plan.size(); ++m) {
      if (c.plan.slots[m].role == SlotRole::information) {
        ordinal_of_slot[m] = ++ord;
      }
    }
  }
};

PrefixErrorStats run_range(const TrialWorkspace& ws, std::uint64_t lo,
                           std::uint64_t hi) {
  const auto& cfg = ws.cfg;
  int info = ws.enc.plan.information_count();
  PrefixErrorStats stats;
  stats.first_error.assign(info + 1, 0);
  stats.guard_flag.assign(info + 1, 0);
  stats.trials = hi - lo;

  SourceBlock block{cfg.K, info, std::vector<int>(cfg.K * info, 0)};
  std::vector<GridReal> x(cfg.K, GridReal(BigInt(0)));

  for (std::uint64_t t = lo; t < hi; ++t) {
    TrialRng rng = derive_trial_rng(cfg.master_seed, t);
    // draw order is part of the reproducibility contract:
    // transmitter-major symbols, then one gaussian
    for (int k = 0; k < cfg.K; ++k) {
      for (int j = 0; j < info; ++j) {
        block.symbols[k * info + j] = sample_symbol(ws.qs[k], rng);
      }
    }
    for (int k = 0; k < cfg.K; ++k) {
      x[k] = modulate(encode_block_row(ws.enc, block, k), ws.gamma_grid[k],
                      ws.enc.scale);
    }
    double z_tilde = sample_gaussian(rng) * ws.inv_rsnr;
    GridReal y = transmit(x, grid_from_double(z_tilde, ws.enc.scale));
    DecodeResult res =
        decode_digits(y, ws.gamma_bar, ws.enc.scale, ws.cfg.plan, ws.enc.L);

    int first = info;  // sentinel bucket: error free
    for (int j = 0; j < info; ++j) {
      int u = 0;
      for (int k = 0; k < cfg.K; ++k) u += block.at(k, j);
      if (res.estimates[j] != u) {
        first = j;
        break;
      }
    }
    ++stats.first_error[first];
    int flag = info;
    if (res.guard_violation) flag = ws.ordinal_of_slot[*res.guard_violation - 1] - 1;
    ++stats.guard_flag[flag];
  }
  return stats;
}

}  // namespace

PrefixErrorStats run_experiment(const SystemConfig& config, int workers) {
  if (auto err = validate_config(config)) {
    throw std::invalid_argument("run_experiment: " + *err);
  }
  TrialWorkspace ws(config);

  int nw = resolve_workers(workers);
  std::uint64_t n = config.trials;
  nw = static_cast<int>(std::min<std::uint64_t>(nw, n));

  if (nw <= 1) return run_range(ws, 0, n);

  std::vector<PrefixErrorStats> parts(nw);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  std::uint64_t chunk = n / nw, rem = n % nw, start = 0;
  for (int w = 0; w < nw; ++w) {
    std::uint64_t len = chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
    pool.emplace_back([&ws, &parts, w, start, len] {
      parts[w] = run_range(ws, start, start + len);
    });
    start += len;
  }
  for (auto& th : pool) th.join();

  PrefixErrorStats total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

EstimateCI estimate_pe(const PrefixErrorStats& stats, int R) {
  double p = stats.pe_hat(R);
  double n = static_cast<double>(stats.trials);
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return EstimateCI{p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

int empirical_epsilon_rate(const PrefixErrorStats& stats, double eps) {
  if (!(eps > 0.0 && eps < 1.0 + 1e-12)) {
    throw std::invalid_argument("empirical_epsilon_rate: eps outside (0,1]");
  }
  int best = 0;
  for (int R = 1; R <= stats.info_count(); ++R) {
    if (stats.pe_hat(R) <= eps) best = R;
  }
  return best;
}

namespace {

SystemConfig config_from(const SweepTemplate& t) {
  SystemConfig cfg;
  cfg.K = t.K;
  cfg.alphabets.assign(t.K, t.alphabet);
  int L = output_alphabet_size(cfg.alphabets);
  cfg.plan = make_plan(t.scheme, L);
  cfg.snr = t.snr;
  cfg.master_seed = t.master_seed;
  cfg.trials = t.trials;
  return cfg;
}

void fill_analytic(SweepPoint& point, const SweepTemplate& t,
                   const SystemConfig& cfg) {
  int L = output_alphabet_size(cfg.alphabets);
  int B = cfg.plan.slots.front().base;
  auto info = cfg.plan.information_slots();
  auto& out = point.analytic;
  if (t.scheme.kind == SchemeKind::unshielded) {
    auto model = propagation_model_from(cfg.alphabets, B);
    for (std::size_t j = 0; j < info.size(); ++j) {
      out["series_r" + std::to_string(j + 1)] = pe_unshielded_series(
          static_cast<int>(j + 1), cfg.plan.size(), cfg.snr, B, model);
      out["floor_r" + std::to_string(j + 1)] =
          pe_unshielded_floor(static_cast<int>(j + 1), cfg.snr, B, model).value;
    }
    out["m_star"] = m_star(cfg.snr, B);
    out["rate_upper"] =
        rate_unshielded_upper(t.epsilon, cfg.snr, t.alphabet.size, cfg.K);
    double p_tilde = std::pow(static_cast<double>(t.alphabet.size), cfg.K);
    double c0 = 2.0 * (1.0 - 1.0 / p_tilde);
    out["rate_gap"] = std::log2(c0 * q_function(1.0) / t.epsilon) / cfg.K;
  } else {
    for (std::size_t j = 0; j < info.size(); ++j) {
      out["shielded_r" + std::to_string(j + 1)] =
          pe_shielded(info[j] + 1, cfg.snr, cfg.plan);
    }
    if (t.scheme.kind == SchemeKind::fixed_guard) {
      auto r = rate_shielded_lower(t.epsilon, cfg.snr, B, t.scheme.beta_bar);
      out["rate_lower"] = r.rate;
      out["rate_gap"] = r.gap;
    } else {
      auto r = rate_variable_lower(t.epsilon, cfg.snr, B);
      out["rate_mu"] = static_cast<double>(r.mu);
      out["rate_r"] = static_cast<double>(r.R);
      out["rate_gap"] = r.gap;
    }
  }
  (void)L;
}

}  // namespace

std::vector<SweepPoint> sweep(const SweepTemplate& base, SweepAxis axis,
                              const std::vector<double>& values, int workers) {
  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (double v : values) {
    SweepPoint point;
    point.value = v;
    SweepTemplate t = base;
    switch (axis) {
      case SweepAxis::snr: t.snr = v; break;
      case SweepAxis::K: t.K = static_cast<int>(std::llround(v)); break;
      case SweepAxis::beta_bar:
        t.scheme.beta_bar = static_cast<int>(std::llround(v));
        break;
      case SweepAxis::epsilon: t.epsilon = v; break;
    }
    try {
      SystemConfig cfg = config_from(t);
      point.stats = run_experiment(cfg, workers);
      fill_analytic(point, t, cfg);
      point.analytic["empirical_rate"] =
          empirical_epsilon_rate(point.stats, t.epsilon);
    } catch (const std::exception& e) {
      point.error = e.what();
    }
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace airsum
