// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line; the process exits 0 only when every criterion passes. Tolerances and
// operating points are pinned here on purpose so regressions are loud.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "airsum/channel.hpp"
#include "airsum/codec.hpp"
#include "airsum/core.hpp"
#include "airsum/sim.hpp"
#include "airsum/theory.hpp"

using namespace airsum;

namespace {

bool all_pass = true;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[criterion %d] %s: %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) all_pass = false;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<AlphabetSpec> uniform_alphabets(int K, int q) {
  return std::vector<AlphabetSpec>(static_cast<std::size_t>(K),
                                   AlphabetSpec{q, {}, 0, 1});
}

bool next_block(std::vector<int>& symbols, int q) {
  for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) {
    if (++*it < q) return true;
    *it = 0;
  }
  return false;
}

struct Pipeline {
  EncoderContext ctx;
  double eta;
  std::vector<GridReal> gamma;
  GridReal gamma_bar;

  Pipeline(const DigitPlan& plan, const std::vector<AlphabetSpec>& alphabets)
      : ctx(plan, static_cast<int>(alphabets.size()),
            output_alphabet_size(alphabets)),
        eta(0.0),
        gamma_bar(BigInt(0)) {
    auto st = block_statistics(plan, alphabets);
    eta = power_scale(st.variance);
    for (double g : st.gamma) {
      gamma.push_back(grid_from_double(g, ctx.scale));
      gamma_bar = gamma_bar + gamma.back();
    }
  }
};

// ---------------------------------------------------------------------------
// criteria 1 and 7 share the exhaustive noiseless grid

struct ExhaustiveOutcome {
  long long configs = 0;
  long long blocks = 0;
  long long mismatches = 0;
  long long guard_flags = 0;
  double worst_power = 0.0;     // max over all (config, k) of E[x_k^2]
  double weakest_peak = 1e300;  // min over configs of max_k E[x_k^2]
};

ExhaustiveOutcome run_exhaustive_grid() {
  ExhaustiveOutcome out;
  for (int K = 1; K <= 3; ++K) {
    for (int q : {2, 3}) {
      int L = K * (q - 1) + 1;
      auto alphabets = uniform_alphabets(K, q);
      for (int M = 1; M <= 3; ++M) {
        DigitPlan plans[] = {make_unshielded_plan(L, M),
                             make_fixed_guard_plan(L, M, 1),
                             make_variable_length_plan(L, M)};
        for (const auto& plan : plans) {
          ++out.configs;
          Pipeline pipe(plan, alphabets);
          int info = plan.information_count();

          SourceBlock block{K, info, std::vector<int>(K * info, 0)};
          std::vector<GridReal> x(K, GridReal(BigInt(0)));
          do {
            ++out.blocks;
            for (int k = 0; k < K; ++k) {
              x[k] = modulate(encode_block_row(pipe.ctx, block, k),
                              pipe.gamma[k], pipe.ctx.scale);
            }
            GridReal y = transmit(x, GridReal(BigInt(0)));
            auto res = decode_digits(y, pipe.gamma_bar, pipe.ctx.scale, plan, L);
            for (int j = 0; j < info; ++j) {
              int u = 0;
              for (int k = 0; k < K; ++k) u += block.at(k, j);
              if (res.estimates[j] != u) {
                ++out.mismatches;
                break;
              }
            }
            if (res.guard_violation) ++out.guard_flags;
          } while (next_block(block.symbols, q));

          // per-transmitter mean square power over that transmitter's rows
          double peak = 0.0;
          for (int k = 0; k < K; ++k) {
            double acc = 0.0;
            long long rows = 0;
            SourceBlock row{1, info, std::vector<int>(info, 0)};
            do {
              ++rows;
              double v = pipe.eta *
                         grid_to_double(modulate(encode_block_row(row, 0, plan, K),
                                                 pipe.gamma[k], pipe.ctx.scale),
                                        pipe.ctx.scale);
              acc += v * v;
            } while (next_block(row.symbols, q));
            acc /= static_cast<double>(rows);
            out.worst_power = std::max(out.worst_power, acc);
            peak = std::max(peak, acc);
          }
          out.weakest_peak = std::min(out.weakest_peak, peak);
        }
      }
    }
  }
  return out;
}

void criterion_1(const ExhaustiveOutcome& grid) {
  bool pass = grid.mismatches == 0 && grid.guard_flags == 0;
  report(1, pass,
         std::to_string(grid.configs) + " configs, " +
             std::to_string(grid.blocks) + " blocks, " +
             std::to_string(grid.mismatches) + " mismatches, " +
             std::to_string(grid.guard_flags) + " guard flags");
}

void criterion_7(const ExhaustiveOutcome& grid) {
  constexpr double kTol = 1e-9;
  bool pass = grid.worst_power <= 1.0 + kTol &&
              std::abs(grid.weakest_peak - 1.0) <= kTol;
  report(7, pass,
         "max E[x^2] = " + fmt(grid.worst_power) +
             ", weakest per-config peak = " + fmt(grid.weakest_peak) +
             " (tolerance 1e-9)");
}

// ---------------------------------------------------------------------------
// criterion 2: guarded prefix failure vs 2Q(sqrt(snr)/D_R)

SystemConfig make_config(SchemeKind kind, int K, int q, int M, double snr,
                         std::uint64_t trials, std::uint64_t seed) {
  SystemConfig cfg;
  cfg.K = K;
  cfg.alphabets = uniform_alphabets(K, q);
  cfg.plan = make_plan(SchemeSpec{kind, M, 1, {}}, output_alphabet_size(cfg.alphabets));
  cfg.snr = snr;
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

void criterion_2() {
  // operating points put the analytic prefix-failure value near 0.09, inside
  // the required [1e-3, 1e-1] band for the prefix being probed
  struct Point {
    int R;
    double snr_db;
  };
  const Point points[] = {{1, 14.1}, {2, 28.1}};
  constexpr std::uint64_t kTrials = 1000000;
  constexpr double kModelBand = 0.25;

  bool pass = true;
  std::string detail;
  for (const auto& pt : points) {
    double snr = std::pow(10.0, pt.snr_db / 10.0);
    auto cfg = make_config(SchemeKind::fixed_guard, 2, 2, 4, snr, kTrials, 21);
    double analytic = pe_shielded(
        cfg.plan.information_slots()[pt.R - 1] + 1, snr, cfg.plan);
    if (analytic < 1e-3 || analytic > 1e-1) {
      pass = false;
      detail += "R=" + std::to_string(pt.R) + " analytic out of band; ";
      continue;
    }
    auto stats = run_experiment(cfg);
    double p_hat = stats.pe_hat(pt.R);
    double se = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(kTrials));
    bool rel_ok = std::abs(p_hat - analytic) <= kModelBand * analytic;
    bool band_ok = analytic >= p_hat - 4.0 * se - kModelBand * analytic &&
                   analytic <= p_hat + 4.0 * se + kModelBand * analytic;
    if (!(rel_ok && band_ok)) pass = false;
    detail += "R=" + std::to_string(pt.R) + " p_hat=" + fmt(p_hat) +
              " analytic=" + fmt(analytic) + (rel_ok && band_ok ? " ok; " : " off; ");
  }
  report(2, pass, detail);
}

// ---------------------------------------------------------------------------
// criterion 3: unshielded series/floor bracket plus monotonicity

void criterion_3() {
  const double snr_grid[] = {6241.0, 6360.0625, 6480.25};
  constexpr std::uint64_t kTrials = 1000000;
  constexpr int kM = 4;
  auto model = make_propagation_model(4.0);

  bool pass = true;
  std::string detail;
  std::vector<double> tracked;  // p_hat at the checked prefix, per snr point
  int tracked_R = 0;

  for (double snr : snr_grid) {
    auto cfg = make_config(SchemeKind::unshielded, 2, 2, kM, snr, kTrials, 33);
    auto stats = run_experiment(cfg);

    int ms = m_star(snr, 3);
    bool bracketed_any = false;
    for (int R = 1; R <= kM; ++R) {
      double series = pe_unshielded_series(R, kM, snr, 3, model);
      if (series < 1e-2 || series > 1e-1) continue;
      // below the noise-depth index the single-term floor overshoots the
      // truth, so the two-sided bracket is only claimed from m* upward
      if (R < ms) continue;
      bracketed_any = true;
      tracked_R = R;
      double floor = pe_unshielded_floor(R, snr, 3, model).value;
      double p_hat = stats.pe_hat(R);
      bool ok = 0.5 * floor <= p_hat && p_hat <= 3.0 * series;
      if (!ok) pass = false;
      detail += "snr=" + fmt(snr) + " R=" + std::to_string(R) +
                " p_hat=" + fmt(p_hat) + " in [" + fmt(0.5 * floor) + "," +
                fmt(3.0 * series) + "]" + (ok ? "; " : " violated; ");
    }
    if (!bracketed_any) {
      pass = false;
      detail += "snr=" + fmt(snr) + " no in-band prefix; ";
    }

    for (int R = 2; R <= kM; ++R) {
      if (stats.pe_hat(R) < stats.pe_hat(R - 1)) {
        pass = false;
        detail += "snr=" + fmt(snr) + " p_hat not monotone in R; ";
      }
    }
    if (tracked_R > 0) tracked.push_back(stats.pe_hat(tracked_R));
  }

  for (std::size_t i = 1; i < tracked.size(); ++i) {
    if (!(tracked[i] < tracked[i - 1])) {
      pass = false;
      detail += "p_hat not decreasing in snr; ";
    }
  }
  report(3, pass, detail);
}

// ---------------------------------------------------------------------------
// criterion 4: rate gap shrinks as transmitters are added

void criterion_4() {
  // per-digit budget held at 4.5: snr = B^9 with B = L = K + 1
  constexpr std::uint64_t kTrials = 100000;
  constexpr double kEps = 1e-2;
  constexpr int kM = 6;

  bool pass = true;
  std::string detail;
  double prev_gap = 1e300;
  for (int K : {2, 4, 8}) {
    int B = K + 1;
    double snr = std::pow(static_cast<double>(B), 9);
    auto cfg = make_config(SchemeKind::unshielded, K, 2, kM, snr, kTrials, 55);
    auto stats = run_experiment(cfg);
    int r_hat = empirical_epsilon_rate(stats, kEps);
    double gap = 0.5 * std::log2(snr) / std::log2(static_cast<double>(B)) - r_hat;
    if (gap > prev_gap) {
      pass = false;
      detail += "gap grew at K=" + std::to_string(K) + "; ";
    }
    prev_gap = gap;
    detail += "K=" + std::to_string(K) + " r_hat=" + std::to_string(r_hat) +
              " gap=" + fmt(gap) + "; ";
  }
  report(4, pass, detail);
}

// ---------------------------------------------------------------------------
// criterion 5: closed-form unit checks

void criterion_5() {
  bool pass = true;
  std::string detail;

  if (q_function(0.0) != 0.5) {
    pass = false;
    detail += "Q(0) != 0.5; ";
  }
  if (std::abs(q_function(1.0) - 0.15865525393145707) > 1e-6) {
    pass = false;
    detail += "Q(1) off; ";
  }

  for (double snr : {100.0, 1e4, 5.5e6}) {
    for (int B : {2, 3, 10}) {
      double sum = 0.0;
      for (int m = 1; m <= 6; ++m) sum += first_nonzero_digit_prob(m, snr, B);
      double rsnr = std::sqrt(snr);
      double expect =
          2.0 * q_function(rsnr / std::pow(B, 6)) - 2.0 * q_function(rsnr);
      if (std::abs(sum - expect) > 1e-12) {
        pass = false;
        detail += "telescoping off at snr=" + fmt(snr) + " B=" + std::to_string(B) + "; ";
      }
    }
  }

  for (int i = 0; i <= 1000; ++i) {
    double x = 10.0 * i / 1000.0;
    if (q_function(x) > 0.5 * std::exp(-0.5 * x * x) + 1e-300) {
      pass = false;
      detail += "chernoff violated at x=" + fmt(x) + "; ";
      break;
    }
  }

  double rate = rate_shielded_lower(std::exp(-2.0), 1048576.0, 6, 1).rate;
  if (std::abs(rate - 3.0) > 1e-9) {
    pass = false;
    detail += "guarded rate worked value " + fmt(rate) + " != 3; ";
  }

  if (variable_guard_positions(20) != std::vector<int>{2, 5, 9, 14, 20}) {
    pass = false;
    detail += "guard positions wrong; ";
  }
  for (int mu = 1; mu <= 10000; ++mu) {
    auto J = static_cast<long long>(variable_guard_positions(mu).size());
    auto bound = static_cast<long long>(std::ceil(std::sqrt(2.0 * mu)));
    if (J > bound) {
      pass = false;
      detail += "J(" + std::to_string(mu) + ") above bound; ";
      break;
    }
  }

  report(5, pass, pass ? "Q values, telescoping, chernoff grid, worked rate, "
                         "guard positions all good"
                       : detail);
}

// ---------------------------------------------------------------------------
// criterion 6: command-line reproducibility

struct CliRun {
  int code = -1;
  std::string csv;
};

CliRun run_simulate(const std::string& cli, const std::filesystem::path& cfg,
                    const std::filesystem::path& out) {
  std::string cmd = "\"" + cli + "\" simulate --config " + cfg.string() +
                    " --out " + out.string() + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.csv = buf.str();
  return r;
}

// p_hat column of the prefix_error row for the requested prefix
double parse_p_hat(const std::string& csv, int R) {
  std::istringstream in(csv);
  std::string line;
  std::string needle = ",prefix_error," + std::to_string(R) + ",,";
  while (std::getline(in, line)) {
    auto pos = line.find(needle);
    if (pos == std::string::npos) continue;
    return std::stod(line.substr(pos + needle.size()));
  }
  return -1.0;
}

void criterion_6() {
  const char* cli = std::getenv("AIRSUM_CLI");
  if (!cli) {
    report(6, false, "AIRSUM_CLI not set, cannot exercise the executable");
    return;
  }
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() /
             ("airsum_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  constexpr std::uint64_t kTrials = 20000;
  auto write_cfg = [&](const std::string& name, std::uint64_t seed) {
    auto p = dir / name;
    std::ofstream(p) << R"({"scheme":"unshielded","k":2,"q":2,"m":4,)"
                     << R"("snr_db":[38],"epsilon":[0.5],"trials":)" << kTrials
                     << R"(,"master_seed":)" << seed << "}";
    return p;
  };

  auto cfg_a = write_cfg("repro_a.json", 101);
  auto cfg_b = write_cfg("repro_b.json", 102);

  auto first = run_simulate(cli, cfg_a, dir / "a1.csv");
  auto second = run_simulate(cli, cfg_a, dir / "a2.csv");
  auto other = run_simulate(cli, cfg_b, dir / "b.csv");

  bool pass = true;
  std::string detail;
  if (first.code != 0 || second.code != 0 || other.code != 0) {
    pass = false;
    detail += "nonzero exit from simulate; ";
  }
  if (first.csv.empty() || first.csv != second.csv) {
    pass = false;
    detail += "same config not byte-identical; ";
  } else {
    detail += "rerun byte-identical; ";
  }

  double pa = parse_p_hat(first.csv, 3);
  double pb = parse_p_hat(other.csv, 3);
  if (pa < 0.0 || pb < 0.0) {
    pass = false;
    detail += "missing prefix row; ";
  } else {
    double n = static_cast<double>(kTrials);
    double se = std::sqrt(pa * (1.0 - pa) / n + pb * (1.0 - pb) / n);
    bool close = std::abs(pa - pb) <= 4.0 * se;
    if (!close) pass = false;
    detail += "seed change: p_hat " + fmt(pa) + " vs " + fmt(pb) +
              (close ? " within 4 s.e." : " beyond 4 s.e.");
  }
  report(6, pass, detail);
}

}  // namespace

int main() {
  auto grid = run_exhaustive_grid();
  criterion_1(grid);
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7(grid);
  return all_pass ? 0 : 1;
}
