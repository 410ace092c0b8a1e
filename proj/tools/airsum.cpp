// Command line front end: reads a JSON experiment description and emits CSV
// (theory, simulate) or a round-trip summary (roundtrip). Exit codes: 0 ok,
// 1 round-trip mismatches, 2 configuration or I/O problems.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "airsum/experiment.hpp"

namespace {

int run(const std::string& mode, const std::string& config_path,
        const std::string& out_path) {
  airsum::ExperimentSpec spec;
  try {
    spec = airsum::load_experiment(config_path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open output file '" << out_path << "'\n";
      return 2;
    }
    out = &file;
  }

  try {
    if (mode == "roundtrip") return airsum::cmd_roundtrip(spec, *out);
    if (mode == "theory") return airsum::cmd_theory(spec, *out);
    return airsum::cmd_simulate(spec, *out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Digit-layered analog computation of sums over a Gaussian "
      "multiple-access channel"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd;
    std::string config;
    std::string out;
  };
  Sub subs[3];
  const char* names[3] = {"roundtrip", "theory", "simulate"};
  const char* descs[3] = {
      "exhaustive noiseless encode/decode sweep",
      "closed-form error probabilities and rate bounds as CSV",
      "Monte Carlo prefix error estimation as CSV"};
  for (int i = 0; i < 3; ++i) {
    subs[i].cmd = app.add_subcommand(names[i], descs[i]);
    subs[i].cmd->add_option("--config", subs[i].config, "experiment JSON file")
        ->required();
    auto* out = subs[i].cmd->add_option("--out", subs[i].out, "output file");
    if (i != 0) out->required();  // roundtrip defaults to stdout
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (int i = 0; i < 3; ++i) {
    if (subs[i].cmd->parsed()) return run(names[i], subs[i].config, subs[i].out);
  }
  return 2;
}
