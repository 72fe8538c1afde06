#include "trustsim/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "trustsim/config.hpp"
#include "trustsim/store.hpp"
#include "trustsim/text.hpp"

namespace trustsim::cli {

namespace {

constexpr agents::DecisionStage kStageOrder[] = {
    agents::DecisionStage::DroppedAuth,
    agents::DecisionStage::DroppedRemovedUser,
    agents::DecisionStage::DroppedUserTrust,
    agents::DecisionStage::DroppedDomainTrust,
    agents::DecisionStage::Delivered,
};

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  return out;
}

ScenarioConfig load_checked(const std::filesystem::path& path,
                            std::ostream& err, int& exit_code) {
  exit_code = kExitOk;
  try {
    return config::load_file(path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    exit_code = kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    exit_code = kExitValidation;
  }
  return {};
}

int report_violations(const ScenarioConfig& config, std::ostream& err) {
  auto violations = config.violations();
  for (const auto& v : violations) {
    err << "violation: " << v << "\n";
  }
  return violations.empty() ? kExitOk : kExitValidation;
}

}  // namespace

void write_trajectories_csv(const engine::SimulationReport& report,
                            std::ostream& out) {
  out << "iteration,entity_kind,entity_id,action,value,decision\n";
  for (const auto& p : report.trajectories) {
    out << p.iteration << ',' << engine::to_string(p.entity_kind) << ','
        << p.entity_id << ',' << (p.action ? trust::to_string(*p.action) : "")
        << ',' << format_double(p.value) << ','
        << agents::to_string(p.decision) << '\n';
  }
}

void write_metrics_csv(const engine::SimulationReport& report,
                       std::ostream& out) {
  const auto& m = report.metrics;
  out << "metric,entity,value\n";
  out << "requests,," << m.total_requests() << '\n';
  out << "seed,," << report.config.seed << '\n';
  for (auto stage : kStageOrder) {
    out << "stage_count," << agents::to_string(stage) << ','
        << m.stage_count(stage) << '\n';
  }
  for (const auto& [user_id, crossing] : m.time_to_threshold) {
    out << "time_to_threshold," << user_id << ',';
    if (crossing) out << *crossing;
    out << '\n';
  }
  for (const auto& removal : m.removals) {
    out << "removal_iteration," << removal.user_id << ',' << removal.request_id
        << '\n';
    out << "removal_reason," << removal.user_id << ','
        << agents::to_string(removal.reason) << '\n';
  }
  for (const auto& [user_id, value] : m.final_user_trust) {
    out << "final_trust," << user_id << ',' << format_double(value) << '\n';
  }
  for (const auto& [domain_id, value] : m.final_domain_trust) {
    out << "final_trust," << domain_id << ',' << format_double(value) << '\n';
  }
}

void write_sweep_csv(const std::vector<sweep::SeedResult>& results,
                     std::ostream& out) {
  out << "seed,user_id,user_type,time_to_threshold,final_trust,removed\n";
  for (const auto& seed_result : results) {
    for (const auto& user : seed_result.users) {
      out << seed_result.seed << ',' << user.user_id << ','
          << behavior::to_string(user.kind) << ',';
      if (user.time_to_threshold) out << *user.time_to_threshold;
      out << ',' << format_double(user.final_trust) << ','
          << (user.removed ? "true" : "false") << '\n';
    }
  }
}

void write_sweep_summary_csv(const std::vector<sweep::TypeAggregate>& summary,
                             std::ostream& out) {
  out << "user_type,samples,mean_final_trust,crossed_fraction,"
         "mean_time_to_threshold,mean_time_censored\n";
  for (const auto& agg : summary) {
    out << behavior::to_string(agg.kind) << ',' << agg.samples << ','
        << format_double(agg.mean_final_trust) << ','
        << format_double(agg.crossed_fraction) << ','
        << format_double(agg.mean_time_to_threshold) << ','
        << format_double(agg.mean_time_censored) << '\n';
  }
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  int exit_code = kExitOk;
  ScenarioConfig config = load_checked(opts.config_path, err, exit_code);
  if (exit_code != kExitOk) return exit_code;
  if (opts.seed) config.seed = *opts.seed;
  if (int rc = report_violations(config, err); rc != kExitOk) return rc;

  engine::SimulationReport report = engine::run(config);

  try {
    std::filesystem::create_directories(opts.out_dir);
    {
      auto f = open_output(opts.out_dir / "trajectories.csv");
      write_trajectories_csv(report, f);
    }
    {
      auto f = open_output(opts.out_dir / "metrics.csv");
      write_metrics_csv(report, f);
    }
    store::save_tables(store::utt_snapshot(report.final_world),
                       opts.out_dir / "utt.tsv");
    store::save_tables(store::dtt_snapshot(report.final_world),
                       opts.out_dir / "dtt.tsv");
    store::save_audit(report.audit, opts.out_dir / "audit.log");
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  out << "run seed=" << config.seed << " requests="
      << report.metrics.total_requests() << " delivered="
      << report.metrics.stage_count(agents::DecisionStage::Delivered)
      << " removals=" << report.metrics.removals.size() << " out="
      << opts.out_dir.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  int exit_code = kExitOk;
  ScenarioConfig config = load_checked(opts.config_path, err, exit_code);
  if (exit_code != kExitOk) return exit_code;
  if (int rc = report_violations(config, err); rc != kExitOk) return rc;
  if (opts.seed_end < opts.seed_begin) {
    err << "error: empty seed range " << opts.seed_begin << ".."
        << opts.seed_end << "\n";
    return kExitValidation;
  }

  const std::uint64_t count = opts.seed_end - opts.seed_begin + 1;
  auto results = sweep::run_sweep(config, opts.seed_begin, count, opts.parallel);
  auto summary = sweep::summarize(
      results, static_cast<std::uint64_t>(config.request_count) + 1);

  try {
    std::filesystem::create_directories(opts.out_dir);
    {
      auto f = open_output(opts.out_dir / "sweep.csv");
      write_sweep_csv(results, f);
    }
    {
      auto f = open_output(opts.out_dir / "sweep_summary.csv");
      write_sweep_summary_csv(summary, f);
    }
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  out << "sweep seeds=" << opts.seed_begin << ".." << opts.seed_end
      << " runs=" << count << " out=" << opts.out_dir.string() << "\n";
  return kExitOk;
}

int cmd_table1(std::ostream& out) {
  const auto params = trust::LayerParams::two_weight(1.0, 0.8, 1.0, 0.1);
  const std::vector<trust::ActionClass> actions = {
      trust::ActionClass::Positive, trust::ActionClass::Malicious,
      trust::ActionClass::Positive, trust::ActionClass::Malicious,
      trust::ActionClass::Malicious};

  const auto values = trust::replay(actions, params);

  out << std::left << std::setw(10) << "iteration" << std::setw(11) << "action"
      << std::setw(10) << "negatives" << std::setw(7) << "total"
      << std::setw(20) << "value" << "display\n";

  bool ok = true;
  std::uint64_t negatives = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (trust::is_negative(actions[i])) ++negatives;
    // direct evaluation of the formula, independent of the ledger fold
    const double expected =
        trust::action_value(negatives, i + 1,
                            trust::action_weight(actions[i], params), params.m);
    if (std::abs(values[i] - expected) > 1e-12) ok = false;

    out << std::left << std::setw(10) << (i + 1) << std::setw(11)
        << trust::to_string(actions[i]) << std::setw(10) << negatives
        << std::setw(7) << (i + 1) << std::setw(20) << format_double(values[i])
        << trust::format_value_1dp(values[i]) << "\n";
  }

  if (!ok) {
    out << "self-check: MISMATCH between ledger fold and direct evaluation\n";
    return kExitSelfCheck;
  }
  out << "self-check: ok\n";
  return kExitOk;
}

int cmd_validate(const std::filesystem::path& config_path, std::ostream& out,
                 std::ostream& err) {
  int exit_code = kExitOk;
  ScenarioConfig config = load_checked(config_path, err, exit_code);
  if (exit_code != kExitOk) return exit_code;

  auto violations = config.violations();
  if (violations.empty()) {
    out << "ok: " << config_path.string() << " (" << config.users.size()
        << " users, " << config.domains.size() << " domains, "
        << config.request_count << " requests)\n";
    return kExitOk;
  }
  for (const auto& v : violations) {
    out << "violation: " << v << "\n";
  }
  return kExitValidation;
}

}  // namespace trustsim::cli
