#pragma once

// ============================================================================
// config.hpp
//
// Experiment configuration: an INI-style text format with sections mirroring
// the library modules ([run], [vehicle], [thrusters], [sensors], [filter],
// [controller], [output]).  Parsing materializes *every* default into the
// resolved spec and its echo list, so run artifacts never depend on hidden
// constants.  Unknown sections or keys are validation errors.
// ============================================================================

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "auvkit/csv.hpp"
#include "auvkit/evaluation.hpp"
#include "auvkit/simcore.hpp"

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown on malformed config text, with file/line diagnostics. */
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(const std::string& path, int line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
};

/** @brief Thrown on a well-formed config violating invariants; lists all. */
class ConfigValidationError : public std::invalid_argument {
 public:
  explicit ConfigValidationError(const std::vector<std::string>& violations)
      : std::invalid_argument(join(violations)) {}

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const std::string& s : v) out += "\n  - " + s;
    return out;
  }
};

// ============================================================================
// Spec types
// ============================================================================

/** @brief One course of the experiment grid. */
struct CourseRef {
  std::string spec;   ///< built-in id (BE1/BE2/BE3) or course-file path
  std::string label;  ///< display/run-id label
};

/** @brief Fully-resolved experiment: base run config plus the grid axes. */
struct ExperimentSpec {
  RunConfig base;
  std::vector<CourseRef> courses = {{"BE1", "BE1"}};
  std::vector<BackendMode> backends = {BackendMode::Dynamic,
                                       BackendMode::Kinematic};
  std::vector<std::uint64_t> seeds = {1};
  std::string outputDir = "runs";
  std::string layoutName = "rexrov";
  std::string thrustTablePath;  ///< empty = identity lookup
};

/** @brief One enumerated run (grid cell) ready to execute. */
struct RunSetup {
  std::string runId;  ///< "<course>_<backend>_s<seed>", lowercased
  CourseRef course;
  BackendMode backend = BackendMode::Dynamic;
  std::uint64_t seed = 1;
};

// ============================================================================
// Enum <-> name maps
// ============================================================================

inline std::string backend_name(BackendMode m) {
  switch (m) {
    case BackendMode::Dynamic: return "dynamic";
    case BackendMode::Kinematic: return "kinematic";
    case BackendMode::Both: return "both";
  }
  return "?";
}

inline std::string integrator_name(Integrator i) {
  return i == Integrator::SemiImplicitEuler ? "euler" : "rk4";
}

inline std::string control_source_name(ControlSource s) {
  return s == ControlSource::Estimate ? "estimate" : "truth";
}

inline std::string kinematic_velocity_name(KinematicVelocitySource s) {
  return s == KinematicVelocitySource::ImuIntegrated ? "imu" : "dvl";
}

inline std::string wrench_formula_name(WrenchFormula f) {
  return f == WrenchFormula::Corrected ? "corrected" : "as_printed";
}

// ============================================================================
// Parsing machinery
// ============================================================================

namespace detail {

struct ConfigEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

using ConfigMap = std::map<std::string, ConfigEntry>;

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

/// Read `path` into section-qualified key/value entries.
inline ConfigMap read_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError(path, 0, "cannot open config file");
  ConfigMap map;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        throw ConfigParseError(path, lineno, "malformed section header: " + s);
      }
      section = lower(trim(s.substr(1, s.size() - 2)));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigParseError(path, lineno, "expected `key = value`: " + s);
    }
    if (section.empty()) {
      throw ConfigParseError(path, lineno, "key outside any [section]: " + s);
    }
    const std::string key = lower(trim(s.substr(0, eq)));
    if (key.empty()) throw ConfigParseError(path, lineno, "empty key");
    const std::string full = section + "." + key;
    if (map.count(full)) {
      throw ConfigParseError(path, lineno, "duplicate key: " + full);
    }
    map[full] = {trim(s.substr(eq + 1)), lineno, false};
  }
  return map;
}

/// Typed access; every getter marks the key used and falls back to the
/// provided default when absent.
class ConfigReader {
 public:
  ConfigReader(ConfigMap map, std::string path)
      : map_(std::move(map)), path_(std::move(path)) {}

  std::string str(const std::string& key, const std::string& def) {
    ConfigEntry* e = find(key);
    return e ? e->value : def;
  }

  double num(const std::string& key, double def) {
    ConfigEntry* e = find(key);
    if (!e) return def;
    try {
      std::size_t pos = 0;
      const double v = std::stod(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigParseError(path_, e->line,
                             key + ": expected a number, got `" + e->value + "`");
    }
  }

  std::uint64_t uint(const std::string& key, std::uint64_t def) {
    ConfigEntry* e = find(key);
    if (!e) return def;
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(e->value, &pos);
      if (pos != e->value.size() || v < 0) throw std::invalid_argument("");
      return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      throw ConfigParseError(
          path_, e->line,
          key + ": expected a non-negative integer, got `" + e->value + "`");
    }
  }

  bool flag(const std::string& key, bool def) {
    ConfigEntry* e = find(key);
    if (!e) return def;
    const std::string v = lower(e->value);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigParseError(path_, e->line,
                           key + ": expected true/false, got `" + e->value + "`");
  }

  /// Value constrained to a closed set of names.
  std::string choice(const std::string& key, const std::string& def,
                     const std::vector<std::string>& allowed) {
    ConfigEntry* e = find(key);
    const std::string v = e ? lower(e->value) : def;
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string msg = key + ": `" + v + "` is not one of {";
      for (std::size_t i = 0; i < allowed.size(); ++i) {
        if (i) msg += ", ";
        msg += allowed[i];
      }
      msg += "}";
      throw ConfigParseError(path_, e ? e->line : 0, msg);
    }
    return v;
  }

  /// Comma-separated list (trimmed items, empties dropped).
  std::vector<std::string> list(const std::string& key,
                                const std::vector<std::string>& def) {
    ConfigEntry* e = find(key);
    if (!e) return def;
    std::vector<std::string> out;
    std::istringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      if (!t.empty()) out.push_back(t);
    }
    return out;
  }

  bool has(const std::string& key) const { return map_.count(key) > 0; }

  int line_of(const std::string& key) const {
    const auto it = map_.find(key);
    return it == map_.end() ? 0 : it->second.line;
  }

  /// Keys never touched by any getter (typos, unknown sections).
  std::vector<std::string> unused() const {
    std::vector<std::string> out;
    for (const auto& [k, e] : map_) {
      if (!e.used) {
        out.push_back("unknown key `" + k + "` (line " +
                      std::to_string(e.line) + ")");
      }
    }
    return out;
  }

  const std::string& path() const { return path_; }

 private:
  ConfigEntry* find(const std::string& key) {
    const auto it = map_.find(key);
    if (it == map_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  ConfigMap map_;
  std::string path_;
};

/// Resolve a possibly-relative path against the config file's directory.
inline std::string resolve_path(const std::string& configPath,
                                const std::string& p) {
  const std::filesystem::path fp(p);
  if (fp.is_absolute()) return p;
  return (std::filesystem::path(configPath).parent_path() / fp).string();
}

inline Eigen::Matrix4d diag_from(const std::vector<std::string>& items,
                                 const std::string& key,
                                 const std::string& path, int line) {
  if (items.size() != 4) {
    throw ConfigParseError(path, line, key + ": expected 4 comma-separated values");
  }
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) {
    try {
      std::size_t pos = 0;
      m(i, i) = std::stod(items[static_cast<std::size_t>(i)], &pos);
      if (pos != items[static_cast<std::size_t>(i)].size()) {
        throw std::invalid_argument("");
      }
    } catch (const std::exception&) {
      throw ConfigParseError(path, line, key + ": non-numeric entry");
    }
  }
  return m;
}

}  // namespace detail

// ============================================================================
// Overrides and parsing
// ============================================================================

/** @brief Command-line overrides applied on top of the parsed file. */
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;   ///< collapse the seed axis to one seed
  std::optional<std::string> backend;  ///< collapse the backend axis
};

/**
 * @brief Parse and fully materialize an experiment configuration.
 *
 * Every absent key takes its documented default; relative paths resolve
 * against the config file's directory.
 *
 * @throws ConfigParseError       on syntax or type errors (with line info)
 * @throws ConfigValidationError  listing every violated invariant
 */
inline ExperimentSpec parse_config(const std::string& path,
                                   const ConfigOverrides& overrides = {}) {
  detail::ConfigReader r(detail::read_ini(path), path);
  ExperimentSpec spec;
  RunConfig& c = spec.base;

  // --- [run] -------------------------------------------------------------
  if (r.has("run.course") && r.has("run.courses")) {
    throw ConfigParseError(path, r.line_of("run.courses"),
                           "give either run.course or run.courses, not both");
  }
  std::vector<std::string> courseSpecs = r.list("run.courses", {});
  if (courseSpecs.empty()) courseSpecs = r.list("run.course", {"BE1"});
  spec.courses.clear();
  for (const std::string& cs : courseSpecs) {
    CourseRef ref;
    if (cs == "BE1" || cs == "BE2" || cs == "BE3") {
      ref.spec = cs;
      ref.label = cs;
    } else {
      ref.spec = detail::resolve_path(path, cs);
      ref.label = std::filesystem::path(cs).stem().string();
    }
    spec.courses.push_back(ref);
  }

  spec.backends.clear();
  for (const std::string& b :
       r.list("run.backends", {"dynamic", "kinematic"})) {
    const std::string bl = detail::lower(b);
    if (bl == "dynamic") {
      spec.backends.push_back(BackendMode::Dynamic);
    } else if (bl == "kinematic") {
      spec.backends.push_back(BackendMode::Kinematic);
    } else if (bl == "both") {
      spec.backends.push_back(BackendMode::Both);
    } else {
      throw ConfigParseError(path, r.line_of("run.backends"),
                             "run.backends: `" + b +
                                 "` is not one of {dynamic, kinematic, both}");
    }
  }

  const std::uint64_t seedBase = r.uint("run.seed_base", 1);
  const std::uint64_t seedCount = r.uint("run.seeds", 1);
  spec.seeds.clear();
  for (std::uint64_t s = 0; s < seedCount; ++s) spec.seeds.push_back(seedBase + s);

  c.timeout = r.num("run.timeout", c.timeout);
  c.innerDt = r.num("run.inner_dt", c.innerDt);
  c.filterDt = r.num("run.filter_dt", c.filterDt);
  c.integrator = r.choice("run.integrator", "euler", {"euler", "rk4"}) == "rk4"
                     ? Integrator::RungeKutta4
                     : Integrator::SemiImplicitEuler;
  c.controlSource =
      r.choice("run.control_source", "estimate", {"estimate", "truth"}) == "truth"
          ? ControlSource::Truth
          : ControlSource::Estimate;
  c.kinVelSource =
      r.choice("run.kinematic_velocity", "imu", {"imu", "dvl"}) == "dvl"
          ? KinematicVelocitySource::Dvl
          : KinematicVelocitySource::ImuIntegrated;

  // --- [vehicle] -----------------------------------------------------------
  VehicleParams& v = c.vehicle;
  v.m = r.num("vehicle.mass", v.m);
  v.g = r.num("vehicle.gravity", v.g);
  v.rho = r.num("vehicle.rho", v.rho);
  v.V = r.num("vehicle.volume", v.V);
  v.W = r.num("vehicle.weight", v.m * v.g);
  v.B = r.num("vehicle.buoyancy", v.B);
  v.Ixx = r.num("vehicle.ixx", v.Ixx);
  v.Iyy = r.num("vehicle.iyy", v.Iyy);
  v.Izz = r.num("vehicle.izz", v.Izz);
  v.zB = r.num("vehicle.zb", v.zB);
  v.addedMass.Xdu = r.num("vehicle.x_du", v.addedMass.Xdu);
  v.addedMass.Ydv = r.num("vehicle.y_dv", v.addedMass.Ydv);
  v.addedMass.Zdw = r.num("vehicle.z_dw", v.addedMass.Zdw);
  v.addedMass.Kdp = r.num("vehicle.k_dp", v.addedMass.Kdp);
  v.addedMass.Mdq = r.num("vehicle.m_dq", v.addedMass.Mdq);
  v.addedMass.Ndr = r.num("vehicle.n_dr", v.addedMass.Ndr);
  v.linDamp.Xu = r.num("vehicle.xu", v.linDamp.Xu);
  v.linDamp.Yv = r.num("vehicle.yv", v.linDamp.Yv);
  v.linDamp.Zw = r.num("vehicle.zw", v.linDamp.Zw);
  v.linDamp.Kp = r.num("vehicle.kp", v.linDamp.Kp);
  v.linDamp.Mq = r.num("vehicle.mq", v.linDamp.Mq);
  v.linDamp.Nr = r.num("vehicle.nr", v.linDamp.Nr);
  v.quadDamp.Xuu = r.num("vehicle.xuu", v.quadDamp.Xuu);
  v.quadDamp.Yvv = r.num("vehicle.yvv", v.quadDamp.Yvv);
  v.quadDamp.Zww = r.num("vehicle.zww", v.quadDamp.Zww);
  v.quadDamp.Kpp = r.num("vehicle.kpp", v.quadDamp.Kpp);
  v.quadDamp.Mqq = r.num("vehicle.mqq", v.quadDamp.Mqq);
  v.quadDamp.Nrr = r.num("vehicle.nrr", v.quadDamp.Nrr);

  // --- [thrusters] -----------------------------------------------------------
  spec.layoutName = r.choice("thrusters.layout", "rexrov",
                             {"rexrov", "rexrov_mirror_corrected"});
  c.layout = spec.layoutName == "rexrov" ? rexrov_layout()
                                         : rexrov_layout_mirror_corrected();
  c.wrenchFormula = r.choice("thrusters.wrench_formula", "corrected",
                             {"corrected", "as_printed"}) == "corrected"
                        ? WrenchFormula::Corrected
                        : WrenchFormula::AsPrinted;
  spec.thrustTablePath = r.str("thrusters.thrust_table", "");
  if (!spec.thrustTablePath.empty()) {
    spec.thrustTablePath = detail::resolve_path(path, spec.thrustTablePath);
    c.lookup = ThrustLookup::from_csv(spec.thrustTablePath);
  }
  c.thrustClamp = r.num("thrusters.thrust_clamp", c.thrustClamp);

  // --- [sensors] -----------------------------------------------------------
  SensorConfig& sc = c.sensors;
  sc.imuAccelVar = r.num("sensors.imu_accel_var", sc.imuAccelVar);
  sc.imuGyroVar = r.num("sensors.imu_gyro_var", sc.imuGyroVar);
  sc.imuBiasWalkVar = r.num("sensors.imu_bias_walk_var", sc.imuBiasWalkVar);
  sc.dvlVar = r.num("sensors.dvl_var", sc.dvlVar);
  sc.gpsVar = r.num("sensors.gps_var", sc.gpsVar);
  sc.depthVar = r.num("sensors.depth_var", sc.depthVar);
  sc.headingVar = r.num("sensors.heading_var", sc.headingVar);
  sc.imuRate = r.num("sensors.imu_rate", sc.imuRate);
  sc.dvlRate = r.num("sensors.dvl_rate", sc.dvlRate);
  sc.gpsRate = r.num("sensors.gps_rate", sc.gpsRate);
  sc.depthRate = r.num("sensors.depth_rate", sc.depthRate);

  // --- [filter] -----------------------------------------------------------
  if (r.has("filter.q")) {
    c.noise.Q = r.num("filter.q", 1e-4) * Eigen::Matrix4d::Identity();
  }
  if (r.has("filter.r")) {
    c.noise.R = r.num("filter.r", 1.0) * Eigen::Matrix4d::Identity();
  }
  if (r.has("filter.q_diag")) {
    c.noise.Q = detail::diag_from(r.list("filter.q_diag", {}), "filter.q_diag",
                                  path, r.line_of("filter.q_diag"));
  }
  if (r.has("filter.r_diag")) {
    c.noise.R = detail::diag_from(r.list("filter.r_diag", {}), "filter.r_diag",
                                  path, r.line_of("filter.r_diag"));
  }
  c.ekf.josephForm = r.flag("filter.joseph", c.ekf.josephForm);
  c.ekf.velGuard = r.num("filter.vel_guard", c.ekf.velGuard);
  c.ekf.inflatedVar = r.num("filter.inflated_var", c.ekf.inflatedVar);
  c.initialCovariance = r.num("filter.initial_covariance", c.initialCovariance);

  // --- [controller] -----------------------------------------------------------
  ControllerConfig& ctl = c.controller;
  ctl.lookAhead = r.num("controller.look_ahead", ctl.lookAhead);
  ctl.vehicleLength = r.num("controller.vehicle_length", ctl.vehicleLength);
  ctl.gain = r.num("controller.gain", ctl.gain);
  ctl.vicinityRadius = r.num("controller.vicinity_radius", ctl.vicinityRadius);
  ctl.cruiseSpeed = r.num("controller.cruise_speed", ctl.cruiseSpeed);
  c.surgeGain = r.num("controller.surge_gain", c.surgeGain);
  c.yawGain = r.num("controller.yaw_gain", c.yawGain);
  c.depthGain = r.num("controller.depth_gain", c.depthGain);
  c.depthDeadband = r.num("controller.depth_deadband", c.depthDeadband);

  // --- [output] -----------------------------------------------------------
  spec.outputDir = detail::resolve_path(path, r.str("output.dir", "runs"));

  // --- Overrides -----------------------------------------------------------
  if (overrides.seed) spec.seeds = {*overrides.seed};
  if (overrides.backend) {
    const std::string b = detail::lower(*overrides.backend);
    if (b == "dynamic") {
      spec.backends = {BackendMode::Dynamic};
    } else if (b == "kinematic") {
      spec.backends = {BackendMode::Kinematic};
    } else if (b == "both") {
      spec.backends = {BackendMode::Both};
    } else {
      throw ConfigValidationError(
          {"--backend: `" + *overrides.backend +
           "` is not one of {dynamic, kinematic, both}"});
    }
  }

  // --- Unknown keys are errors, not silence. -------------------------------
  const std::vector<std::string> stray = r.unused();
  if (!stray.empty()) throw ConfigValidationError(stray);
  return spec;
}

// ============================================================================
// Grid enumeration, validation, echo
// ============================================================================

/** @brief Load a course reference (built-in id or file). */
inline Course load_course(const CourseRef& ref) {
  if (ref.spec == "BE1" || ref.spec == "BE2" || ref.spec == "BE3") {
    return builtin_course(ref.spec);
  }
  Course c = course_from_file(ref.spec);
  c.name = ref.label;
  return c;
}

/** @brief Expand the grid in (course, backend, seed) order. */
inline std::vector<RunSetup> enumerate_runs(const ExperimentSpec& spec) {
  std::vector<RunSetup> runs;
  for (const CourseRef& course : spec.courses) {
    for (const BackendMode backend : spec.backends) {
      for (const std::uint64_t seed : spec.seeds) {
        RunSetup setup;
        setup.course = course;
        setup.backend = backend;
        setup.seed = seed;
        setup.runId = detail::lower(course.label) + "_" + backend_name(backend) +
                      "_s" + std::to_string(seed);
        runs.push_back(std::move(setup));
      }
    }
  }
  return runs;
}

/** @brief Collect spec-level violations (grid shape, per-course run checks). */
inline std::vector<std::string> check_spec(const ExperimentSpec& spec) {
  std::vector<std::string> bad;
  if (spec.courses.empty()) bad.push_back("course list is empty");
  if (spec.backends.empty()) bad.push_back("backend list is empty");
  if (spec.seeds.empty()) bad.push_back("seed list is empty");
  const std::vector<RunSetup> runs = enumerate_runs(spec);
  std::vector<std::string> ids;
  for (const RunSetup& run : runs) ids.push_back(run.runId);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    bad.push_back("run identifiers are not unique (duplicate grid entries)");
  }
  for (const CourseRef& ref : spec.courses) {
    try {
      const Course course = load_course(ref);
      for (const std::string& s : check_run_config(course, spec.base)) {
        bad.push_back(ref.label + ": " + s);
      }
    } catch (const std::exception& e) {
      bad.push_back(ref.label + ": " + e.what());
    }
  }
  return bad;
}

/**
 * @brief Deterministic, ordered key/value echo of a resolved spec -- every
 *        numeric default included.
 */
inline std::vector<std::pair<std::string, std::string>> echo_spec(
    const ExperimentSpec& spec) {
  std::vector<std::pair<std::string, std::string>> e;
  const RunConfig& c = spec.base;
  auto put = [&e](const std::string& k, const std::string& v) {
    e.emplace_back(k, v);
  };
  auto putn = [&](const std::string& k, double v) { put(k, format_double(v)); };

  std::string courses, backends, seeds;
  for (std::size_t i = 0; i < spec.courses.size(); ++i) {
    if (i) courses += ",";
    courses += spec.courses[i].label;
  }
  for (std::size_t i = 0; i < spec.backends.size(); ++i) {
    if (i) backends += ",";
    backends += backend_name(spec.backends[i]);
  }
  for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
    if (i) seeds += ",";
    seeds += std::to_string(spec.seeds[i]);
  }
  put("run.courses", courses);
  put("run.backends", backends);
  put("run.seeds", seeds);
  putn("run.timeout", c.timeout);
  putn("run.inner_dt", c.innerDt);
  putn("run.filter_dt", c.filterDt);
  put("run.integrator", integrator_name(c.integrator));
  put("run.control_source", control_source_name(c.controlSource));
  put("run.kinematic_velocity", kinematic_velocity_name(c.kinVelSource));

  const VehicleParams& v = c.vehicle;
  putn("vehicle.mass", v.m);
  putn("vehicle.gravity", v.g);
  putn("vehicle.rho", v.rho);
  putn("vehicle.volume", v.V);
  putn("vehicle.weight", v.W);
  putn("vehicle.buoyancy", v.B);
  putn("vehicle.ixx", v.Ixx);
  putn("vehicle.iyy", v.Iyy);
  putn("vehicle.izz", v.Izz);
  putn("vehicle.zb", v.zB);
  putn("vehicle.x_du", v.addedMass.Xdu);
  putn("vehicle.y_dv", v.addedMass.Ydv);
  putn("vehicle.z_dw", v.addedMass.Zdw);
  putn("vehicle.k_dp", v.addedMass.Kdp);
  putn("vehicle.m_dq", v.addedMass.Mdq);
  putn("vehicle.n_dr", v.addedMass.Ndr);
  putn("vehicle.xu", v.linDamp.Xu);
  putn("vehicle.yv", v.linDamp.Yv);
  putn("vehicle.zw", v.linDamp.Zw);
  putn("vehicle.kp", v.linDamp.Kp);
  putn("vehicle.mq", v.linDamp.Mq);
  putn("vehicle.nr", v.linDamp.Nr);
  putn("vehicle.xuu", v.quadDamp.Xuu);
  putn("vehicle.yvv", v.quadDamp.Yvv);
  putn("vehicle.zww", v.quadDamp.Zww);
  putn("vehicle.kpp", v.quadDamp.Kpp);
  putn("vehicle.mqq", v.quadDamp.Mqq);
  putn("vehicle.nrr", v.quadDamp.Nrr);

  put("thrusters.layout", spec.layoutName);
  put("thrusters.wrench_formula", wrench_formula_name(c.wrenchFormula));
  put("thrusters.thrust_table",
      spec.thrustTablePath.empty() ? "(identity)" : spec.thrustTablePath);
  putn("thrusters.thrust_clamp", c.thrustClamp);

  const SensorConfig& s = c.sensors;
  putn("sensors.imu_accel_var", s.imuAccelVar);
  putn("sensors.imu_gyro_var", s.imuGyroVar);
  putn("sensors.imu_bias_walk_var", s.imuBiasWalkVar);
  putn("sensors.dvl_var", s.dvlVar);
  putn("sensors.gps_var", s.gpsVar);
  putn("sensors.depth_var", s.depthVar);
  putn("sensors.heading_var", s.headingVar);
  putn("sensors.imu_rate", s.imuRate);
  putn("sensors.dvl_rate", s.dvlRate);
  putn("sensors.gps_rate", s.gpsRate);
  putn("sensors.depth_rate", s.depthRate);

  auto diag = [](const Eigen::Matrix4d& m) {
    std::string out;
    for (int i = 0; i < 4; ++i) {
      if (i) out += ",";
      out += format_double(m(i, i));
    }
    return out;
  };
  put("filter.q_diag", diag(c.noise.Q));
  put("filter.r_diag", diag(c.noise.R));
  put("filter.joseph", c.ekf.josephForm ? "true" : "false");
  putn("filter.vel_guard", c.ekf.velGuard);
  putn("filter.inflated_var", c.ekf.inflatedVar);
  putn("filter.initial_covariance", c.initialCovariance);

  const ControllerConfig& ctl = c.controller;
  putn("controller.look_ahead", ctl.lookAhead);
  putn("controller.vehicle_length", ctl.vehicleLength);
  putn("controller.gain", ctl.gain);
  putn("controller.vicinity_radius", ctl.vicinityRadius);
  putn("controller.cruise_speed", ctl.cruiseSpeed);
  putn("controller.surge_gain", c.surgeGain);
  putn("controller.yaw_gain", c.yawGain);
  putn("controller.depth_gain", c.depthGain);
  putn("controller.depth_deadband", c.depthDeadband);

  put("output.dir", spec.outputDir);
  return e;
}

}  // namespace auvkit
