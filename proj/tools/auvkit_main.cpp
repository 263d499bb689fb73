// ============================================================================
// auvkit command-line tool
//
//   auvkit run <config.ini> [--seed N] [--backend B] [--jobs N] [--dry-run]
//   auvkit courses list
//   auvkit report <dir>
//   auvkit plotdata <runDir>
//
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime failure
// (simulation divergence or timeout in any run).
// ============================================================================

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "auvkit/auvkit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int cmd_run(const std::string& configPath, const auvkit::ConfigOverrides& ov,
            int jobs, bool dryRun) {
  const auvkit::ExperimentSpec spec = auvkit::parse_config(configPath, ov);
  const std::vector<std::string> bad = auvkit::check_spec(spec);
  if (!bad.empty()) throw auvkit::ConfigValidationError(bad);

  const std::vector<auvkit::RunSetup> runs = auvkit::enumerate_runs(spec);
  if (dryRun) {
    std::cout << "experiment grid (" << runs.size() << " runs):\n";
    for (const auvkit::RunSetup& r : runs) {
      std::cout << "  " << r.runId << "  course=" << r.course.label
                << " backend=" << auvkit::backend_name(r.backend)
                << " seed=" << r.seed << "\n";
    }
    std::cout << "resolved configuration:\n";
    for (const auto& [k, v] : auvkit::echo_spec(spec)) {
      std::cout << "  " << k << " = " << v << "\n";
    }
    std::cout << "dry run: nothing written\n";
    return kExitOk;
  }

  const auvkit::BatchOutcome out = auvkit::run_experiments(spec, jobs);
  const std::size_t failed = out.failures.size();
  std::cout << (out.runCount - failed) << "/" << out.runCount
            << " runs completed; report: " << out.reportPath << "\n";
  if (failed != 0) {
    for (const std::string& f : out.failures) {
      std::cerr << "run failed: " << f << "\n";
    }
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_courses_list() {
  for (const std::string& id : auvkit::builtin_course_ids()) {
    const auvkit::Course c = auvkit::builtin_course(id);
    std::cout << id << "  waypoints=" << c.waypoints.size()
              << " path_points=" << c.referencePath.size() << "\n";
  }
  return kExitOk;
}

int cmd_report(const std::string& dir) {
  const std::size_t rows = auvkit::rebuild_report(dir);
  std::cout << "report.csv rebuilt with " << rows << " rows under " << dir
            << "\n";
  return kExitOk;
}

int cmd_plotdata(const std::string& runDir) {
  for (const std::string& f : auvkit::emit_plot_data(runDir)) {
    std::cout << "wrote " << f << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"auvkit: underwater vehicle simulation & localization toolkit"};
  app.require_subcommand(1);

  std::string configPath;
  std::optional<std::uint64_t> seedOverride;
  std::string backendOverride;
  int jobs = 1;
  bool dryRun = false;

  CLI::App* run = app.add_subcommand(
      "run", "Execute the experiment grid described by a config file");
  run->add_option("config", configPath, "Path to the experiment config (INI)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--seed", seedOverride,
                  "Override the seed axis with a single seed");
  run->add_option("--backend", backendOverride,
                  "Override the backend axis (dynamic|kinematic|both)")
      ->check(CLI::IsMember({"dynamic", "kinematic", "both"}));
  run->add_option("--jobs", jobs, "Maximum concurrent runs")
      ->check(CLI::PositiveNumber);
  run->add_flag("--dry-run", dryRun,
                "Print the resolved grid and configuration, write nothing");

  CLI::App* courses =
      app.add_subcommand("courses", "Built-in course utilities");
  courses->require_subcommand(1);
  courses->add_subcommand("list", "List built-in courses");

  std::string reportDir;
  CLI::App* report = app.add_subcommand(
      "report", "Rebuild report.csv from a directory of completed runs");
  report->add_option("dir", reportDir, "Experiment output directory")
      ->required();

  std::string runDir;
  CLI::App* plotdata = app.add_subcommand(
      "plotdata", "Emit plot-ready CSVs from one run directory");
  plotdata->add_option("runDir", runDir, "Run directory (holds run.meta)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auvkit::ConfigOverrides ov;
      ov.seed = seedOverride;
      if (!backendOverride.empty()) ov.backend = backendOverride;
      return cmd_run(configPath, ov, jobs, dryRun);
    }
    if (courses->parsed()) return cmd_courses_list();
    if (report->parsed()) return cmd_report(reportDir);
    if (plotdata->parsed()) return cmd_plotdata(runDir);
  } catch (const auvkit::SimulationDivergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
