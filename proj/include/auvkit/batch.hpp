#pragma once

// ============================================================================
// batch.hpp
//
// Experiment orchestration on top of sim-core: executes the (course x
// backend x seed) grid concurrently, writes per-run CSV logs plus a run.meta
// summary stamped with the configuration hash, aggregates the per-backend
// error metrics into one report.csv (one row per course/backend/seed), and
// emits plot-ready CSVs from a completed run directory.
//
// Per-run artifacts (all CSV, LF, '.' decimal):
//   truth.csv          t + pose(6) + body velocity(6) + body acceleration(6)
//   sensors.csv        t + IMU accel/gyro + heading + DVL + gps/depth (blank
//                      cells on ticks those channels are absent)
//   est_dynamic.csv    t + posterior + prediction + innovation + P diagonal
//   est_kinematic.csv    + backend velocity/acceleration inputs
//   commands.csv       t + velocity command + steering + wrench + thrusters
//   run.meta           identity, outcome, metrics, config echo + hash
// ============================================================================

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "auvkit/config.hpp"
#include "auvkit/csv.hpp"
#include "auvkit/evaluation.hpp"
#include "auvkit/simcore.hpp"

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown when a run directory lacks the pieces an operation needs. */
class IncompleteLogError : public std::runtime_error {
 public:
  explicit IncompleteLogError(const std::string& what)
      : std::runtime_error(what) {}
};

// ============================================================================
// Metrics
// ============================================================================

/** @brief Error metrics of one estimator trace against truth and reference. */
inline ErrorReport trace_metrics(const RunLog& log,
                                 const std::vector<EstimateTrace>& trace,
                                 const std::vector<PathPoint>& reference) {
  std::vector<PathPoint> truthXY, estXY;
  truthXY.reserve(log.truth.size());
  estXY.reserve(trace.size());
  for (const TruthState& s : log.truth) truthXY.push_back({s.pose.x, s.pose.y});
  for (const EstimateTrace& e : trace) estXY.push_back({e.x(0), e.x(1)});
  ErrorReport rep;
  rep.total = total_error(truthXY, reference);
  rep.totalEst = total_error(estXY, reference);
  rep.xKalman = axis_rmse(estXY, truthXY, Axis::X);
  rep.yKalman = axis_rmse(estXY, truthXY, Axis::Y);
  return rep;
}

// ============================================================================
// Per-run artifact writers
// ============================================================================

namespace detail {

inline void write_truth_csv(const std::string& path, const RunLog& log) {
  CsvWriter w(path, {"t", "x", "y", "z", "phi", "theta", "psi", "u", "v", "w",
                     "p", "q", "r", "du", "dv", "dw", "dp", "dq", "dr"});
  for (std::size_t i = 0; i < log.t.size(); ++i) {
    const TruthState& s = log.truth[i];
    w.row(std::vector<double>{log.t[i], s.pose.x, s.pose.y, s.pose.z,
                              s.pose.phi, s.pose.theta, s.pose.psi, s.vel.u,
                              s.vel.v, s.vel.w, s.vel.p, s.vel.q, s.vel.r,
                              s.acc.du, s.acc.dv, s.acc.dw, s.acc.dp, s.acc.dq,
                              s.acc.dr});
  }
  w.close();
}

inline void write_sensors_csv(const std::string& path, const RunLog& log) {
  CsvWriter w(path, {"t", "accel_x", "accel_y", "accel_z", "gyro_x", "gyro_y",
                     "gyro_z", "heading", "dvl_x", "dvl_y", "dvl_z", "gps_x",
                     "gps_y", "depth"});
  for (std::size_t i = 0; i < log.t.size(); ++i) {
    const SensorFrame& f = log.frames[i];
    std::vector<std::string> cells{
        format_double(log.t[i]),        format_double(f.imuAccel[0]),
        format_double(f.imuAccel[1]),   format_double(f.imuAccel[2]),
        format_double(f.imuGyro[0]),    format_double(f.imuGyro[1]),
        format_double(f.imuGyro[2]),    format_double(f.heading),
        format_double(f.dvl[0]),        format_double(f.dvl[1]),
        format_double(f.dvl[2])};
    cells.push_back(f.gps ? format_double((*f.gps)[0]) : "");
    cells.push_back(f.gps ? format_double((*f.gps)[1]) : "");
    cells.push_back(f.depth ? format_double(*f.depth) : "");
    w.row(cells);
  }
  w.close();
}

inline void write_estimate_csv(const std::string& path, const RunLog& log,
                               const std::vector<EstimateTrace>& trace) {
  CsvWriter w(path,
              {"t",       "x",       "y",        "z",        "psi",
               "pred_x",  "pred_y",  "pred_z",   "pred_psi", "innov_x",
               "innov_y", "innov_z", "innov_psi", "p_x",     "p_y",
               "p_z",     "p_psi",   "vel_u",    "vel_v",    "vel_w",
               "vel_r",   "acc_du",  "acc_dv",   "acc_dw",   "acc_dr"});
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const EstimateTrace& e = trace[i];
    w.row(std::vector<double>{
        log.t[i],        e.x(0),          e.x(1),          e.x(2),
        e.x(3),          e.pred(0),       e.pred(1),       e.pred(2),
        e.pred(3),       e.innovation(0), e.innovation(1), e.innovation(2),
        e.innovation(3), e.pdiag(0),      e.pdiag(1),      e.pdiag(2),
        e.pdiag(3),      e.vel(0),        e.vel(1),        e.vel(2),
        e.vel(3),        e.acc(0),        e.acc(1),        e.acc(2),
        e.acc(3)});
  }
  w.close();
}

inline void write_commands_csv(const std::string& path, const RunLog& log) {
  CsvWriter w(path, {"t", "surge_ref", "yaw_rate_ref", "steering", "wrench_tx",
                     "wrench_ty", "wrench_tz", "wrench_tpsi", "thrust_0",
                     "thrust_1", "thrust_2", "thrust_3", "thrust_4", "thrust_5",
                     "thrust_6", "thrust_7", "waypoint_index"});
  for (std::size_t i = 0; i < log.t.size(); ++i) {
    const CommandTrace& cmd = log.commands[i];
    std::vector<double> row{log.t[i],
                            cmd.surgeRef,
                            cmd.yawRateRef,
                            cmd.steering,
                            cmd.wrench.Tx,
                            cmd.wrench.Ty,
                            cmd.wrench.Tz,
                            cmd.wrench.Tpsi};
    for (double v : cmd.thrusterCommands) row.push_back(v);
    row.push_back(static_cast<double>(cmd.waypointIndex));
    w.row(row);
  }
  w.close();
}

}  // namespace detail

// ============================================================================
// Report rows
// ============================================================================

/** @brief One report.csv row: a backend's metrics on one run. */
struct ReportRow {
  std::string course;
  std::string backend;  ///< trace kind: "dynamic" or "kinematic"
  std::uint64_t seed = 0;
  std::string runId;
  ErrorReport errors;
};

inline bool report_row_less(const ReportRow& a, const ReportRow& b) {
  return std::tie(a.course, a.backend, a.seed, a.runId) <
         std::tie(b.course, b.backend, b.seed, b.runId);
}

/** @brief Write report.csv (rows sorted by course, backend, seed). */
inline void write_report_csv(const std::string& path,
                             std::vector<ReportRow> rows) {
  std::sort(rows.begin(), rows.end(), report_row_less);
  CsvWriter w(path, {"course", "backend", "seed", "total", "total_est",
                     "x_kalman", "y_kalman"});
  for (const ReportRow& r : rows) {
    w.row(std::vector<std::string>{
        r.course, r.backend, std::to_string(r.seed),
        format_double(r.errors.total), format_double(r.errors.totalEst),
        format_double(r.errors.xKalman), format_double(r.errors.yKalman)});
  }
  w.close();
}

// ============================================================================
// Run execution
// ============================================================================

namespace detail {

inline void write_run_meta(const std::string& path, const RunSetup& setup,
                           const RunLog* log,
                           const std::vector<std::pair<std::string, ErrorReport>>&
                               metrics,
                           const std::string& echoText,
                           const std::string& status,
                           const std::string& error) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsvIoError("cannot create run meta: " + path);
  out << "run_id = " << setup.runId << '\n';
  out << "course = " << setup.course.label << '\n';
  out << "course_spec = " << setup.course.spec << '\n';
  out << "backend = " << backend_name(setup.backend) << '\n';
  out << "seed = " << setup.seed << '\n';
  out << "status = " << status << '\n';
  if (!error.empty()) out << "error = " << error << '\n';
  if (log) {
    out << "reached_goal = " << (log->reachedGoal ? "true" : "false") << '\n';
    out << "timed_out = " << (log->timedOut ? "true" : "false") << '\n';
    out << "end_time = " << format_double(log->endTime) << '\n';
    out << "ticks = " << log->t.size() << '\n';
  }
  for (const auto& [kind, rep] : metrics) {
    out << kind << ".total = " << format_double(rep.total) << '\n';
    out << kind << ".total_est = " << format_double(rep.totalEst) << '\n';
    out << kind << ".x_kalman = " << format_double(rep.xKalman) << '\n';
    out << kind << ".y_kalman = " << format_double(rep.yKalman) << '\n';
  }
  out << "config_hash = " << content_hash_hex(echoText) << '\n';
  out << "--- config ---" << '\n';
  out << echoText;
  out.flush();
  if (!out) throw CsvIoError("write failure on run meta: " + path);
}

}  // namespace detail

/** @brief Render the echo list as `key = value` lines. */
inline std::string echo_text(const ExperimentSpec& spec) {
  std::string out;
  for (const auto& [k, v] : echo_spec(spec)) {
    out += k + " = " + v + "\n";
  }
  return out;
}

/** @brief What one grid cell produced. */
struct RunOutcome {
  std::vector<ReportRow> rows;
  std::string failure;  ///< empty on clean completion
};

/**
 * @brief Execute one grid cell and write its artifacts.
 *
 * A timed-out run still yields full logs and metrics (its rows appear in the
 * report; `run.meta` records `status = timeout`), but it is reported as a
 * failure so the batch exit status reflects it.  On a simulation exception a
 * failed-status run.meta is written and the exception propagates.
 */
inline RunOutcome execute_run(const RunSetup& setup, const ExperimentSpec& spec,
                              const std::string& echoText) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(spec.outputDir) / setup.runId;
  fs::create_directories(dir);

  RunConfig cfg = spec.base;
  cfg.backend = setup.backend;
  cfg.seed = setup.seed;
  const Course course = load_course(setup.course);

  RunLog log;
  try {
    log = run_episode(course, cfg);
  } catch (const std::exception& e) {
    detail::write_run_meta((dir / "run.meta").string(), setup, nullptr, {},
                           echoText, "failed", e.what());
    throw;
  }

  detail::write_truth_csv((dir / "truth.csv").string(), log);
  detail::write_sensors_csv((dir / "sensors.csv").string(), log);
  detail::write_commands_csv((dir / "commands.csv").string(), log);

  std::vector<std::pair<std::string, ErrorReport>> metrics;
  RunOutcome out;
  if (!log.dynamicTrace.empty()) {
    detail::write_estimate_csv((dir / "est_dynamic.csv").string(), log,
                               log.dynamicTrace);
    const ErrorReport rep =
        trace_metrics(log, log.dynamicTrace, course.referencePath);
    metrics.emplace_back("dynamic", rep);
    out.rows.push_back(
        {setup.course.label, "dynamic", setup.seed, setup.runId, rep});
  }
  if (!log.kinematicTrace.empty()) {
    detail::write_estimate_csv((dir / "est_kinematic.csv").string(), log,
                               log.kinematicTrace);
    const ErrorReport rep =
        trace_metrics(log, log.kinematicTrace, course.referencePath);
    metrics.emplace_back("kinematic", rep);
    out.rows.push_back(
        {setup.course.label, "kinematic", setup.seed, setup.runId, rep});
  }

  const std::string status = log.timedOut ? "timeout" : "ok";
  const std::string error =
      log.timedOut ? "timed out before reaching the final waypoint" : "";
  detail::write_run_meta((dir / "run.meta").string(), setup, &log, metrics,
                         echoText, status, error);
  if (log.timedOut) out.failure = setup.runId + ": " + error;
  return out;
}

/** @brief Outcome of a batch: report location plus any per-run failures. */
struct BatchOutcome {
  std::string reportPath;
  std::size_t runCount = 0;
  std::vector<std::string> failures;  ///< "<runId>: <error>" strings
};

/**
 * @brief Execute the whole grid, then aggregate report.csv.
 *
 * Runs execute concurrently up to `jobs` threads; aggregation is
 * single-threaded after all runs complete.  Partial artifacts of failed runs
 * are retained; the report covers the successful ones.
 *
 * @throws ConfigValidationError when the spec itself is invalid.
 */
inline BatchOutcome run_experiments(const ExperimentSpec& spec, int jobs = 1) {
  const std::vector<std::string> bad = check_spec(spec);
  if (!bad.empty()) throw ConfigValidationError(bad);

  const std::vector<RunSetup> runs = enumerate_runs(spec);
  const std::string echoText = echo_text(spec);
  std::filesystem::create_directories(spec.outputDir);

  std::vector<ReportRow> rows;
  std::vector<std::string> failures;
  std::mutex mu;
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= runs.size()) return;
      try {
        RunOutcome out = execute_run(runs[i], spec, echoText);
        const std::lock_guard<std::mutex> lock(mu);
        for (ReportRow& row : out.rows) rows.push_back(std::move(row));
        if (!out.failure.empty()) failures.push_back(std::move(out.failure));
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(mu);
        failures.push_back(runs[i].runId + ": " + e.what());
      }
    }
  };

  const int threadCount =
      std::max(1, std::min<int>(jobs, static_cast<int>(runs.size())));
  if (threadCount == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threadCount));
    for (int i = 0; i < threadCount; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  BatchOutcome outcome;
  outcome.runCount = runs.size();
  outcome.reportPath =
      (std::filesystem::path(spec.outputDir) / "report.csv").string();
  write_report_csv(outcome.reportPath, std::move(rows));
  outcome.failures = std::move(failures);
  std::sort(outcome.failures.begin(), outcome.failures.end());
  return outcome;
}

// ============================================================================
// Report rebuild (the `report <dir>` verb)
// ============================================================================

namespace detail {

/// Parse the scalar `key = value` head of a run.meta file.
inline std::map<std::string, std::string> read_meta(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IncompleteLogError("cannot open run meta: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line == "--- config ---") break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    const auto b = value.find_first_not_of(" \t");
    value = b == std::string::npos ? "" : value.substr(b);
    if (!value.empty() && value.back() == '\r') value.pop_back();
    kv[key] = value;
  }
  return kv;
}

}  // namespace detail

/**
 * @brief Rebuild report.csv for a directory of completed runs by reading
 *        their run.meta stamps; returns the rebuilt row count.
 *
 * @throws IncompleteLogError when the directory holds no readable runs.
 */
inline std::size_t rebuild_report(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw IncompleteLogError("not a directory: " + dir);
  }
  std::vector<ReportRow> rows;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    const fs::path meta = entry.path() / "run.meta";
    if (!fs::exists(meta)) continue;
    const std::map<std::string, std::string> kv = detail::read_meta(meta.string());
    const auto get = [&kv](const std::string& k) -> std::string {
      const auto it = kv.find(k);
      return it == kv.end() ? "" : it->second;
    };
    const std::string status = get("status");
    if (status != "ok" && status != "timeout") continue;
    for (const std::string kind : {std::string("dynamic"), std::string("kinematic")}) {
      if (!kv.count(kind + ".total")) continue;
      ReportRow row;
      row.course = get("course");
      row.backend = kind;
      row.seed = std::stoull(get("seed"));
      row.runId = get("run_id");
      row.errors.total = std::stod(get(kind + ".total"));
      row.errors.totalEst = std::stod(get(kind + ".total_est"));
      row.errors.xKalman = std::stod(get(kind + ".x_kalman"));
      row.errors.yKalman = std::stod(get(kind + ".y_kalman"));
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    throw IncompleteLogError("no completed runs under: " + dir);
  }
  const std::size_t n = rows.size();
  write_report_csv((fs::path(dir) / "report.csv").string(), std::move(rows));
  return n;
}

// ============================================================================
// Plot data (the `plotdata <runDir>` verb)
// ============================================================================

/**
 * @brief Emit plot-ready CSVs from a completed run directory.
 *
 * Writes `traj_overlay.csv` (t, nearest reference point, truth, and each
 * logged estimate's xy) always, and `accel_compare.csv` (t, model surge
 * acceleration, IMU x-acceleration) when the dynamic trace is present.
 * Returns the list of files written.
 *
 * @throws IncompleteLogError when logs are missing, empty, or inconsistent.
 */
inline std::vector<std::string> emit_plot_data(const std::string& runDir) {
  namespace fs = std::filesystem;
  const fs::path dir(runDir);
  if (!fs::exists(dir / "run.meta") || !fs::exists(dir / "truth.csv")) {
    throw IncompleteLogError("not a run directory (missing run.meta/truth.csv): " +
                             runDir);
  }
  const std::map<std::string, std::string> kv =
      detail::read_meta((dir / "run.meta").string());
  const auto metaGet = [&kv](const std::string& k) -> std::string {
    const auto it = kv.find(k);
    return it == kv.end() ? "" : it->second;
  };

  const CsvTable truth = read_csv((dir / "truth.csv").string());
  if (truth.rows.empty()) throw IncompleteLogError("empty truth log");
  const std::size_t tT = truth.col("t");
  const std::size_t tX = truth.col("x");
  const std::size_t tY = truth.col("y");

  const bool haveDyn = fs::exists(dir / "est_dynamic.csv");
  const bool haveKin = fs::exists(dir / "est_kinematic.csv");
  if (!haveDyn && !haveKin) {
    throw IncompleteLogError("no estimator trace in run directory: " + runDir);
  }
  CsvTable dyn, kin;
  if (haveDyn) {
    dyn = read_csv((dir / "est_dynamic.csv").string());
    if (dyn.rows.size() != truth.rows.size()) {
      throw IncompleteLogError("dynamic trace length differs from truth log");
    }
    if (dyn.rows.empty()) throw IncompleteLogError("empty dynamic trace");
  }
  if (haveKin) {
    kin = read_csv((dir / "est_kinematic.csv").string());
    if (kin.rows.size() != truth.rows.size()) {
      throw IncompleteLogError("kinematic trace length differs from truth log");
    }
    if (kin.rows.empty()) throw IncompleteLogError("empty kinematic trace");
  }

  const Course course =
      load_course({metaGet("course_spec"), metaGet("course")});

  std::vector<std::string> written;

  {
    CsvWriter w((dir / "traj_overlay.csv").string(),
                {"t", "ref_x", "ref_y", "truth_x", "truth_y", "dynamic_x",
                 "dynamic_y", "kinematic_x", "kinematic_y"});
    const std::size_t dX = haveDyn ? dyn.col("x") : 0;
    const std::size_t dY = haveDyn ? dyn.col("y") : 0;
    const std::size_t kX = haveKin ? kin.col("x") : 0;
    const std::size_t kY = haveKin ? kin.col("y") : 0;
    for (std::size_t i = 0; i < truth.rows.size(); ++i) {
      const PathPoint p{std::stod(truth.rows[i][tX]),
                        std::stod(truth.rows[i][tY])};
      const PathPoint ref = nearest_point_on_polyline(p, course.referencePath);
      std::vector<std::string> cells{truth.rows[i][tT], format_double(ref.x),
                                     format_double(ref.y), truth.rows[i][tX],
                                     truth.rows[i][tY]};
      cells.push_back(haveDyn ? dyn.rows[i][dX] : "");
      cells.push_back(haveDyn ? dyn.rows[i][dY] : "");
      cells.push_back(haveKin ? kin.rows[i][kX] : "");
      cells.push_back(haveKin ? kin.rows[i][kY] : "");
      w.row(cells);
    }
    w.close();
    written.push_back((dir / "traj_overlay.csv").string());
  }

  if (haveDyn) {
    const CsvTable sensors = read_csv((dir / "sensors.csv").string());
    if (sensors.rows.size() != truth.rows.size()) {
      throw IncompleteLogError("sensor log length differs from truth log");
    }
    const std::size_t sAx = sensors.col("accel_x");
    const std::size_t dDu = dyn.col("acc_du");
    CsvWriter w((dir / "accel_compare.csv").string(),
                {"t", "model_du", "imu_accel_x"});
    for (std::size_t i = 0; i < truth.rows.size(); ++i) {
      w.row(std::vector<std::string>{truth.rows[i][tT], dyn.rows[i][dDu],
                                     sensors.rows[i][sAx]});
    }
    w.close();
    written.push_back((dir / "accel_compare.csv").string());
  }

  return written;
}

}  // namespace auvkit
