#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "airsum/core.hpp"
#include "airsum/sim.hpp"

namespace airsum {

// One experiment description, loaded from a JSON document.
struct ExperimentSpec {
  SchemeKind scheme = SchemeKind::unshielded;
  int K = 1;
  std::vector<int> qs;        // per transmitter, single value replicated
  int length = 1;             // slots (mu for variable_length)
  std::optional<int> base;    // overrides the default B = L
  int beta_bar = 1;
  std::vector<double> snr_db;
  std::vector<double> epsilons;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
};

// Throws std::runtime_error with a readable message on malformed input.
ExperimentSpec load_experiment(const std::string& path);
ExperimentSpec parse_experiment(const std::string& json_text);

double db_to_linear(double snr_db);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::vector<AlphabetSpec> make_alphabets(const ExperimentSpec& spec);
SystemConfig build_config(const ExperimentSpec& spec, double snr_linear);

// Subcommand drivers. Return value is the process exit code: 0 on success,
// 1 when the noiseless sweep finds mismatches, 2 on configuration problems.
int cmd_roundtrip(const ExperimentSpec& spec, std::ostream& out);
int cmd_theory(const ExperimentSpec& spec, std::ostream& csv);
int cmd_simulate(const ExperimentSpec& spec, std::ostream& csv, int workers = 0);

}  // namespace airsum
