#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "trustsim/engine.hpp"
#include "trustsim/sweep.hpp"

namespace trustsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitSelfCheck = 3;

struct RunOptions {
  std::filesystem::path config_path;
  std::optional<std::uint64_t> seed;  // overrides the config's seed
  std::filesystem::path out_dir;
};

struct SweepOptions {
  std::filesystem::path config_path;
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 0;  // inclusive
  std::filesystem::path out_dir;
  bool parallel = true;
};

/// One run: writes trajectories.csv, metrics.csv, utt.tsv, dtt.tsv and
/// audit.log to out_dir, then prints a one-line summary.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Seeded runs over an inclusive seed range: writes per-(seed,user) rows to
/// sweep.csv and kind-level aggregates to sweep_summary.csv. Output order
/// is by seed regardless of execution order.
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

/// Prints the five-step reference trust computation (actions P,M,P,M,M
/// under w_pos=1, w_neg=0.8, m=1) and exits kExitSelfCheck if the ledger
/// path disagrees with a direct evaluation of the formula.
int cmd_table1(std::ostream& out);

/// Validates a config file, listing every violation. Exit 0 iff valid.
int cmd_validate(const std::filesystem::path& config_path, std::ostream& out,
                 std::ostream& err);

// Deterministic writers behind the commands, exposed for tests.
void write_trajectories_csv(const engine::SimulationReport& report,
                            std::ostream& out);
void write_metrics_csv(const engine::SimulationReport& report,
                       std::ostream& out);
void write_sweep_csv(const std::vector<sweep::SeedResult>& results,
                     std::ostream& out);
void write_sweep_summary_csv(const std::vector<sweep::TypeAggregate>& summary,
                             std::ostream& out);

}  // namespace trustsim::cli
