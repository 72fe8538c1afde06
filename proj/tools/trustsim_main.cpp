// Command-line front end: run scenarios, sweep seeds, print the reference
// trust table, validate configs.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trustsim/cli.hpp"
#include "trustsim/text.hpp"

namespace {

bool parse_seed_range(const std::string& text, std::uint64_t& begin,
                      std::uint64_t& end) {
  auto pos = text.find("..");
  if (pos == std::string::npos) return false;
  return trustsim::parse_u64(text.substr(0, pos), begin) &&
         trustsim::parse_u64(text.substr(pos + 2), end);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-tier trust-gated request simulator"};
  app.require_subcommand(1);

  trustsim::cli::RunOptions run_opts;
  std::uint64_t seed_flag = 0;
  auto* run = app.add_subcommand("run", "run one scenario and write CSVs");
  run->add_option("--config", run_opts.config_path, "scenario config (JSON)")
      ->required();
  auto* seed_opt =
      run->add_option("--seed", seed_flag, "override the config's seed");
  run->add_option("--out", run_opts.out_dir, "output directory")->required();

  trustsim::cli::SweepOptions sweep_opts;
  std::string seeds_flag;
  auto* sweep = app.add_subcommand("sweep", "run one scenario per seed");
  sweep->add_option("--config", sweep_opts.config_path, "scenario config (JSON)")
      ->required();
  sweep->add_option("--seeds", seeds_flag, "inclusive seed range, e.g. 0..499")
      ->required();
  sweep->add_option("--out", sweep_opts.out_dir, "output directory")
      ->required();
  bool serial = false;
  sweep->add_flag("--serial", serial, "disable the parallel runner");

  auto* table1 = app.add_subcommand(
      "table1", "print the five-step reference trust computation");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a scenario config");
  validate->add_option("--config", validate_path, "scenario config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? trustsim::cli::kExitOk : trustsim::cli::kExitValidation;
  }

  if (run->parsed()) {
    if (seed_opt->count() > 0) run_opts.seed = seed_flag;
    return trustsim::cli::cmd_run(run_opts, std::cout, std::cerr);
  }
  if (sweep->parsed()) {
    if (!parse_seed_range(seeds_flag, sweep_opts.seed_begin,
                          sweep_opts.seed_end)) {
      std::cerr << "error: --seeds expects A..B, got '" << seeds_flag << "'\n";
      return trustsim::cli::kExitValidation;
    }
    sweep_opts.parallel = !serial;
    return trustsim::cli::cmd_sweep(sweep_opts, std::cout, std::cerr);
  }
  if (table1->parsed()) {
    return trustsim::cli::cmd_table1(std::cout);
  }
  if (validate->parsed()) {
    return trustsim::cli::cmd_validate(validate_path, std::cout, std::cerr);
  }
  return trustsim::cli::kExitValidation;
}
