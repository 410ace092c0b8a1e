#include "airsum/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "airsum/channel.hpp"
#include "airsum/codec.hpp"
#include "airsum/theory.hpp"

namespace airsum {

using nlohmann::json;

double db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "unshielded") return SchemeKind::unshielded;
  if (name == "fixed_guard") return SchemeKind::fixed_guard;
  if (name == "variable_length") return SchemeKind::variable_length;
  throw std::runtime_error("config: unknown scheme '" + name + "'");
}

std::vector<double> number_list(const json& j, const char* key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<double>());
  } else {
    throw std::runtime_error(std::string("config: '") + key +
                             "' must be a number or an array");
  }
  return out;
}

}  // namespace

ExperimentSpec parse_experiment(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  try {
    ExperimentSpec spec;
    spec.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    spec.K = j.at("k").get<int>();
    if (spec.K < 1) throw std::runtime_error("config: k must be >= 1");

    const auto& q = j.at("q");
    if (q.is_number_integer()) {
      spec.qs.assign(spec.K, q.get<int>());
    } else if (q.is_array()) {
      for (const auto& e : q) spec.qs.push_back(e.get<int>());
      if (static_cast<int>(spec.qs.size()) != spec.K) {
        throw std::runtime_error("config: q list length must equal k");
      }
    } else {
      throw std::runtime_error("config: q must be an integer or an array");
    }

    spec.length = j.at("m").get<int>();
    if (j.contains("b")) spec.base = j.at("b").get<int>();
    if (j.contains("beta_bar")) spec.beta_bar = j.at("beta_bar").get<int>();
    spec.snr_db = number_list(j, "snr_db");
    spec.epsilons = number_list(j, "epsilon");
    if (j.contains("trials")) spec.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("master_seed")) {
      spec.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    return spec;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
}

ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str());
}

std::vector<AlphabetSpec> make_alphabets(const ExperimentSpec& spec) {
  std::vector<AlphabetSpec> alphabets;
  alphabets.reserve(spec.K);
  for (int q : spec.qs) {
    AlphabetSpec a;
    a.size = q;
    alphabets.push_back(a);
  }
  return alphabets;
}

SystemConfig build_config(const ExperimentSpec& spec, double snr_linear) {
  SystemConfig cfg;
  cfg.K = spec.K;
  cfg.alphabets = make_alphabets(spec);
  SchemeSpec scheme{spec.scheme, spec.length, spec.beta_bar, spec.base};
  cfg.plan = make_plan(scheme, output_alphabet_size(cfg.alphabets));
  cfg.snr = snr_linear;
  cfg.master_seed = spec.master_seed;
  cfg.trials = spec.trials;
  return cfg;
}

namespace {

int check_config(const ExperimentSpec& spec, SystemConfig& cfg) {
  try {
    cfg = build_config(spec, 1.0);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (auto err = validate_config(cfg)) {
    std::cerr << "config error: " << *err << "\n";
    return 2;
  }
  return 0;
}

// Theory probability for the first R information digits under the
// configuration's scheme.
double prefix_error_theory(const ExperimentSpec& spec, const SystemConfig& cfg,
                           double snr, int ordinal) {
  auto info = cfg.plan.information_slots();
  if (spec.scheme == SchemeKind::unshielded) {
    int B = cfg.plan.slots.front().base;
    auto model = propagation_model_from(cfg.alphabets, B);
    return pe_unshielded_series(ordinal, cfg.plan.size(), snr, B, model);
  }
  return pe_shielded(info[ordinal - 1] + 1, snr, cfg.plan);
}

}  // namespace

int cmd_roundtrip(const ExperimentSpec& spec, std::ostream& out) {
  SystemConfig cfg;
  if (int rc = check_config(spec, cfg)) return rc;

  int info = cfg.plan.information_count();
  int L = output_alphabet_size(cfg.alphabets);
  EncoderContext enc(cfg.plan, cfg.K, L);
  auto stats = block_statistics(cfg.plan, cfg.alphabets);
  (void)power_scale(stats.variance);  // rejects degenerate sources
  std::vector<GridReal> gamma;
  GridReal gamma_bar{BigInt(0)};
  for (int k = 0; k < cfg.K; ++k) {
    gamma.push_back(grid_from_double(stats.gamma[k], enc.scale));
    gamma_bar = gamma_bar + gamma.back();
  }

  double total_d = 1.0;
  for (int k = 0; k < cfg.K; ++k) {
    total_d *= std::pow(static_cast<double>(cfg.alphabets[k].size), info);
  }
  if (total_d > 5e6) {
    std::cerr << "config error: exhaustive sweep too large ("
              << format_double(total_d) << " blocks)\n";
    return 2;
  }
  auto total = static_cast<std::uint64_t>(total_d);

  // test fixture: deliberately corrupt the decoder output to exercise the
  // failure exit path
  bool corrupt = std::getenv("AIRSUM_TEST_CORRUPT") != nullptr;

  SourceBlock block{cfg.K, info, std::vector<int>(cfg.K * info, 0)};
  std::vector<GridReal> x(cfg.K, GridReal(BigInt(0)));
  std::uint64_t mismatches = 0, guard_flags = 0;
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (int k = 0; k < cfg.K; ++k) {
      auto q = static_cast<std::uint64_t>(cfg.alphabets[k].size);
      for (int m = 0; m < info; ++m) {
        block.symbols[k * info + m] = static_cast<int>(rest % q);
        rest /= q;
      }
    }
    for (int k = 0; k < cfg.K; ++k) {
      x[k] = modulate(encode_block_row(enc, block, k), gamma[k], enc.scale);
    }
    GridReal y = transmit(x, GridReal(BigInt(0)));
    DecodeResult res = decode_digits(y, gamma_bar, enc.scale, cfg.plan, L);
    if (corrupt && !res.estimates.empty()) {
      res.estimates.back() = (res.estimates.back() + 1) % L;
    }
    for (int j = 0; j < info; ++j) {
      int u = 0;
      for (int k = 0; k < cfg.K; ++k) u += block.at(k, j);
      if (res.estimates[j] != u) {
        ++mismatches;
        break;
      }
    }
    if (res.guard_violation) ++guard_flags;
  }

  out << "scheme=" << scheme_name(spec.scheme) << " blocks=" << total
      << " mismatches=" << mismatches << " guard_flags=" << guard_flags << "\n";
  return mismatches == 0 ? 0 : 1;
}

int cmd_theory(const ExperimentSpec& spec, std::ostream& csv) {
  SystemConfig cfg;
  if (int rc = check_config(spec, cfg)) return rc;

  csv << "scheme,snr_db,r,epsilon,bound,value\n";
  if (spec.epsilons.empty()) return 0;

  const char* scheme = scheme_name(spec.scheme);
  csv << scheme << ",,,,q_zero," << format_double(q_function(0.0)) << "\n";

  int B = cfg.plan.slots.front().base;
  auto info = cfg.plan.information_slots();
  for (double db : spec.snr_db) {
    double snr = db_to_linear(db);
    for (std::size_t j = 1; j <= info.size(); ++j) {
      if (spec.scheme == SchemeKind::unshielded) {
        auto model = propagation_model_from(cfg.alphabets, B);
        csv << scheme << "," << format_double(db) << "," << j << ",,pe_series,"
            << format_double(pe_unshielded_series(static_cast<int>(j),
                                                  cfg.plan.size(), snr, B, model))
            << "\n";
        csv << scheme << "," << format_double(db) << "," << j << ",,pe_floor,"
            << format_double(
                   pe_unshielded_floor(static_cast<int>(j), snr, B, model).value)
            << "\n";
      } else {
        csv << scheme << "," << format_double(db) << "," << j << ",,pe_prefix,"
            << format_double(pe_shielded(info[j - 1] + 1, snr, cfg.plan)) << "\n";
      }
    }
    for (double eps : spec.epsilons) {
      switch (spec.scheme) {
        case SchemeKind::unshielded:
          csv << scheme << "," << format_double(db) << ",,"
              << format_double(eps) << ",rate_upper,"
              << format_double(
                     rate_unshielded_upper(eps, snr, cfg.alphabets[0].size, cfg.K))
              << "\n";
          break;
        case SchemeKind::fixed_guard: {
          auto r = rate_shielded_lower(eps, snr, B, spec.beta_bar);
          csv << scheme << "," << format_double(db) << ",,"
              << format_double(eps) << ",rate_lower," << format_double(r.rate)
              << "\n";
          csv << scheme << "," << format_double(db) << ",,"
              << format_double(eps) << ",rate_gap," << format_double(r.gap)
              << "\n";
          break;
        }
        case SchemeKind::variable_length: {
          auto r = rate_variable_lower(eps, snr, B);
          csv << scheme << "," << format_double(db) << ",,"
              << format_double(eps) << ",rate_mu,"
              << format_double(static_cast<double>(r.mu)) << "\n";
          csv << scheme << "," << format_double(db) << ",,"
              << format_double(eps) << ",rate_r,"
              << format_double(static_cast<double>(r.R)) << "\n";
          csv << scheme << "," << format_double(db) << ",,"
              << format_double(eps) << ",rate_gap," << format_double(r.gap)
              << "\n";
          break;
        }
      }
    }
  }
  return 0;
}

int cmd_simulate(const ExperimentSpec& spec, std::ostream& csv, int workers) {
  SystemConfig cfg;
  if (int rc = check_config(spec, cfg)) return rc;

  csv << "scheme,snr_db,kind,r,epsilon,p_hat,ci_lo,ci_hi,pe_theory,"
         "guard_flag_rate,r_hat\n";
  const char* scheme = scheme_name(spec.scheme);
  for (double db : spec.snr_db) {
    SystemConfig run_cfg = build_config(spec, db_to_linear(db));
    PrefixErrorStats stats;
    try {
      stats = run_experiment(run_cfg, workers);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    for (int R = 1; R <= stats.info_count(); ++R) {
      auto ci = estimate_pe(stats, R);
      csv << scheme << "," << format_double(db) << ",prefix_error," << R << ",,"
          << format_double(ci.p_hat) << "," << format_double(ci.lo) << ","
          << format_double(ci.hi) << ","
          << format_double(prefix_error_theory(spec, run_cfg, run_cfg.snr, R))
          << "," << format_double(stats.guard_rate(R)) << ",\n";
    }
    for (double eps : spec.epsilons) {
      csv << scheme << "," << format_double(db) << ",epsilon_rate,,"
          << format_double(eps) << ",,,,,,"
          << empirical_epsilon_rate(stats, eps) << "\n";
    }
  }
  return 0;
}

}  // namespace airsum
