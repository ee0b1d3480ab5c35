#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adra/config.hpp"
#include "adra/errors.hpp"
#include "adra/harness.hpp"

namespace {

// Writes CSV to `path`, or to stdout when path is empty.
void emit_csv(const std::string& csv, const std::string& path) {
  if (path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw adra::ConfigError("cannot open output file '" + path + "'");
  out << csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric dual-row activation CiM simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  app.add_option("--config", config_path, "YAML configuration file")->check(CLI::ExistingFile);
  app.add_option("--output", output, "CSV destination (overrides the config)");

  std::size_t max_width = 8;
  auto* verify = app.add_subcommand("verify", "exhaustive add/sub/cmp check against integers");
  verify->add_option("--max-width", max_width, "largest operand width")
      ->check(CLI::Range(std::size_t{1}, adra::kMaxVerifyWidth));

  std::string op_name;
  std::int64_t a = 0;
  std::int64_t b = 0;
  auto* simulate = app.add_subcommand("simulate", "one operation end to end");
  simulate->add_option("op", op_name, "add, sub or cmp")
      ->required()
      ->check(CLI::IsMember({"add", "sub", "cmp"}));
  simulate->add_option("a", a, "first operand (v_gread1 row)")->required();
  simulate->add_option("b", b, "second operand (v_gread2 row)")->required();

  std::vector<std::size_t> sizes = {256, 512, 1024};
  std::vector<std::string> scheme_names = {"current", "scheme1", "scheme2"};
  auto* sweep = app.add_subcommand("sweep", "energy/latency/EDP across array sizes");
  sweep->add_option("--sizes", sizes, "square array sizes");
  sweep->add_option("--schemes", scheme_names, "current, scheme1, scheme2")
      ->check(CLI::IsMember({"current", "scheme1", "scheme2"}));

  auto* crossover = app.add_subcommand("crossover", "scheme 1 / scheme 2 crossover points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? adra::kExitOk : adra::kExitUsage;
  }

  try {
    adra::SimConfig config =
        config_path.empty() ? adra::parse_config("") : adra::load_config(config_path);
    if (!output.empty()) config.output = output;

    if (*verify) {
      const adra::VerifyReport report = adra::cmd_verify(config, max_width);
      std::cout << adra::format_verify_report(report);
      const std::string csv = adra::ladder_diagnostics_csv(report);
      if (config.output.empty()) std::cout << '\n';
      emit_csv(csv, config.output);
      if (report.mismatch_count > 0) return adra::kExitMismatch;
      return report.passed() ? adra::kExitOk : adra::kExitInvariant;
    }
    if (*simulate) {
      const auto op = adra::parse_operation(op_name);
      const adra::SimulateResult r = adra::cmd_simulate(config, *op, a, b);
      std::cout << adra::format_simulate_result(r);
      return adra::kExitOk;
    }
    if (*sweep) {
      std::vector<adra::SensingScheme> schemes;
      for (const auto& name : scheme_names) schemes.push_back(*adra::parse_scheme(name));
      const adra::SweepResult r = adra::cmd_sweep(config, sizes, schemes);
      emit_csv(r.csv, config.output);
      for (const auto& v : r.violations) std::cerr << "trend violation: " << v << '\n';
      return r.violations.empty() ? adra::kExitOk : adra::kExitInvariant;
    }
    if (*crossover) {
      const adra::CrossoverReport r = adra::cmd_crossover(config);
      emit_csv(r.csv, config.output);
      return adra::kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return adra::exit_code_for(e);
  }
  return adra::kExitUsage;
}
