#pragma once

// ============================================================================
// evaluation.hpp
//
// Behavior-evaluation courses BE1-BE3, reference-path generation, and the
// path/estimation error metrics:
//   * total_error: mean xy distance from each traveled sample to the nearest
//     point of the reference polyline (point-to-segment projection),
//   * axis_rmse:   RMSE between a time-aligned estimate series and truth
//     along one horizontal axis.
// ============================================================================

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "auvkit/control.hpp"

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown for an unknown built-in course id. */
class UnknownCourseError : public std::invalid_argument {
 public:
  explicit UnknownCourseError(const std::string& id)
      : std::invalid_argument("unknown course id: " + id +
                              " (expected BE1, BE2, or BE3)") {}
};

/** @brief Thrown when a metric receives an empty path. */
class EmptyPathError : public std::invalid_argument {
 public:
  EmptyPathError() : std::invalid_argument("path is empty") {}
};

/** @brief Thrown when series lengths differ in axis_rmse. */
class LengthMismatchError : public std::invalid_argument {
 public:
  LengthMismatchError(std::size_t a, std::size_t b)
      : std::invalid_argument("series length mismatch: " + std::to_string(a) +
                              " vs " + std::to_string(b)) {}
};

/** @brief Thrown when a course file cannot be parsed. */
class CourseFileError : public std::runtime_error {
 public:
  explicit CourseFileError(const std::string& what) : std::runtime_error(what) {}
};

// ============================================================================
// Domain types
// ============================================================================

/** @brief A 2-D point used by the metric routines. */
struct PathPoint {
  double x = 0.0;
  double y = 0.0;
};

/** @brief Named waypoint course with its densified reference polyline. */
struct Course {
  std::string name;
  std::vector<Waypoint> waypoints;
  std::vector<PathPoint> referencePath;  ///< sampled at <= 0.1 m spacing
};

/** @brief Error metrics for one run and backend. */
struct ErrorReport {
  double total = 0.0;     ///< truth vs reference [m]
  double totalEst = 0.0;  ///< estimate vs reference [m]
  double xKalman = 0.0;   ///< estimate-vs-truth RMSE along x [m]
  double yKalman = 0.0;   ///< estimate-vs-truth RMSE along y [m]
};

// ============================================================================
// Reference-path generation
// ============================================================================

/** @brief Densify a waypoint polyline at the given maximum spacing. */
inline std::vector<PathPoint> densify(const std::vector<Waypoint>& wps,
                                      double maxSpacing = 0.1) {
  std::vector<PathPoint> path;
  if (wps.empty()) return path;
  path.push_back({wps[0].x, wps[0].y});
  for (std::size_t i = 1; i < wps.size(); ++i) {
    const double dx = wps[i].x - wps[i - 1].x;
    const double dy = wps[i].y - wps[i - 1].y;
    const double len = std::hypot(dx, dy);
    const int n = std::max(1, static_cast<int>(std::ceil(len / maxSpacing)));
    for (int k = 1; k <= n; ++k) {
      const double s = static_cast<double>(k) / n;
      path.push_back({wps[i - 1].x + s * dx, wps[i - 1].y + s * dy});
    }
  }
  return path;
}

// ============================================================================
// Built-in courses
// ============================================================================

namespace detail {

/// Append points along a circular arc about (cx, cy): position angles from
/// a0 to a1 [rad], stepped at `stepDeg` degrees, excluding the a0 endpoint.
inline void append_arc(std::vector<Waypoint>& wps, double cx, double cy,
                       double radius, double a0, double a1, double stepDeg,
                       double z) {
  const double step = stepDeg * std::numbers::pi / 180.0;
  const int n = std::max(1, static_cast<int>(std::round(std::abs(a1 - a0) / step)));
  const double da = (a1 - a0) / n;
  for (int k = 1; k <= n; ++k) {
    const double a = a0 + k * da;
    wps.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a), z});
  }
}

}  // namespace detail

/**
 * @brief Concrete waypoint realizations of the three evaluation courses,
 *        all at a constant 20 m depth.
 *
 * BE1: 30 m straight, 10 m-radius 90-degree arc, then a sharp 120-degree
 *      corner onto a final straight leg.
 * BE2: three alternating-direction 10 m-radius half-circle arcs (a
 *      constant-radius "sinusoid").
 * BE3: U-shape; two 15 m straights joined by a 10 m-radius 180-degree
 *      turn entered through a short reversed-curvature lead-in arc.
 */
inline Course builtin_course(const std::string& id) {
  constexpr double z = 20.0;
  Course c;
  c.name = id;
  std::vector<Waypoint>& w = c.waypoints;
  if (id == "BE1") {
    w = {{0, 0, z}, {10, 0, z}, {20, 0, z}, {30, 0, z}};
    // 90-degree right-hand arc from (30,0) to (40,10), center (30,10).
    detail::append_arc(w, 30.0, 10.0, 10.0, -std::numbers::pi / 2.0, 0.0, 15.0, z);
    // Straight leg north-east, then a sharp 120-degree right corner.
    w.push_back({40, 25, z});
    const double exitHeading = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi / 3.0;
    w.push_back({40 + 15.0 * std::cos(exitHeading), 25 + 15.0 * std::sin(exitHeading), z});
  } else if (id == "BE2") {
    w = {{0, 0, z}};
    const double pi = std::numbers::pi;
    // Three stacked half-circles of alternating direction.
    detail::append_arc(w, 0.0, 10.0, 10.0, -pi / 2.0, pi / 2.0, 15.0, z);
    detail::append_arc(w, 0.0, 30.0, 10.0, -pi / 2.0, -3.0 * pi / 2.0, 15.0, z);
    detail::append_arc(w, 0.0, 50.0, 10.0, -pi / 2.0, pi / 2.0, 15.0, z);
  } else if (id == "BE3") {
    w = {{0, 0, z}, {7.5, 0, z}, {15, 0, z}};
    const double pi = std::numbers::pi;
    const double deg = pi / 180.0;
    // 15-degree clockwise lead-in about (15, -10) ...
    detail::append_arc(w, 15.0, -10.0, 10.0, pi / 2.0, pi / 2.0 - 15.0 * deg, 7.5, z);
    // ... then a 195-degree counter-clockwise main turn, for a net heading
    // change of exactly 180 degrees.
    const Waypoint& join = w.back();
    const double a0 = -105.0 * deg;
    const double cx = join.x - 10.0 * std::cos(a0);
    const double cy = join.y - 10.0 * std::sin(a0);
    detail::append_arc(w, cx, cy, 10.0, a0, pi / 2.0, 7.5, z);
    // Closing straight, 15 m heading due "south" (-x).
    const Waypoint& exit = w.back();
    w.push_back({exit.x - 7.5, exit.y, z});
    w.push_back({exit.x - 15.0, exit.y, z});
  } else {
    throw UnknownCourseError(id);
  }
  c.referencePath = densify(c.waypoints);
  return c;
}

/** @brief The ids accepted by builtin_course. */
inline std::vector<std::string> builtin_course_ids() { return {"BE1", "BE2", "BE3"}; }

// ============================================================================
// Course files
// ============================================================================

/**
 * @brief Load a course from CSV: a `# name:` comment line, an `x,y,z`
 *        header, then one waypoint per row.
 * @throws CourseFileError on I/O or format problems.
 */
inline Course course_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CourseFileError("cannot open course file: " + path);
  Course c;
  c.name = path;
  std::string line;
  int lineno = 0;
  bool sawHeader = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("name:");
      if (pos != std::string::npos) {
        std::string name = line.substr(pos + 5);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t\r") + 1);
        if (!name.empty()) c.name = name;
      }
      continue;
    }
    if (!sawHeader) {
      sawHeader = true;  // x,y,z header row
      continue;
    }
    std::istringstream row(line);
    std::string sx, sy, sz;
    if (!std::getline(row, sx, ',') || !std::getline(row, sy, ',') ||
        !std::getline(row, sz)) {
      throw CourseFileError(path + ":" + std::to_string(lineno) +
                            ": expected `x,y,z` waypoint row");
    }
    try {
      c.waypoints.push_back({std::stod(sx), std::stod(sy), std::stod(sz)});
    } catch (const std::exception&) {
      throw CourseFileError(path + ":" + std::to_string(lineno) +
                            ": non-numeric waypoint entry");
    }
  }
  if (c.waypoints.size() < 2) {
    throw CourseFileError(path + ": a course needs at least 2 waypoints");
  }
  c.referencePath = densify(c.waypoints);
  return c;
}

// ============================================================================
// Metrics
// ============================================================================

/** @brief Squared distance from point p to segment ab. */
inline double point_segment_dist_sq(const PathPoint& p, const PathPoint& a,
                                    const PathPoint& b) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double apx = p.x - a.x, apy = p.y - a.y;
  const double len2 = abx * abx + aby * aby;
  double s = len2 > 0.0 ? (apx * abx + apy * aby) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  const double dx = apx - s * abx, dy = apy - s * aby;
  return dx * dx + dy * dy;
}

/** @brief Nearest point of a polyline to p (point-to-segment projection). */
inline PathPoint nearest_point_on_polyline(const PathPoint& p,
                                           const std::vector<PathPoint>& poly) {
  if (poly.empty()) throw EmptyPathError();
  if (poly.size() == 1) return poly[0];
  PathPoint best = poly[0];
  double bestD = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const PathPoint& a = poly[i];
    const PathPoint& b = poly[i + 1];
    const double abx = b.x - a.x, aby = b.y - a.y;
    const double len2 = abx * abx + aby * aby;
    double s = len2 > 0.0 ? ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    const PathPoint c{a.x + s * abx, a.y + s * aby};
    const double d = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
    if (d < bestD) {
      bestD = d;
      best = c;
    }
  }
  return best;
}

/** @brief Distance from a point to the nearest point of a polyline. */
inline double distance_to_polyline(const PathPoint& p,
                                   const std::vector<PathPoint>& poly) {
  if (poly.empty()) throw EmptyPathError();
  if (poly.size() == 1) return std::hypot(p.x - poly[0].x, p.y - poly[0].y);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    best = std::min(best, point_segment_dist_sq(p, poly[i], poly[i + 1]));
  }
  return std::sqrt(best);
}

/**
 * @brief Mean xy distance from each traveled point to the nearest point on
 *        the reference polyline.
 * @throws EmptyPathError when either path is empty.
 */
inline double total_error(const std::vector<PathPoint>& traveled,
                          const std::vector<PathPoint>& reference) {
  if (traveled.empty() || reference.empty()) throw EmptyPathError();
  double sum = 0.0;
  for (const PathPoint& p : traveled) sum += distance_to_polyline(p, reference);
  return sum / static_cast<double>(traveled.size());
}

/** @brief Horizontal axis selector for axis_rmse. */
enum class Axis { X, Y };

/**
 * @brief RMSE between time-aligned estimate and truth series on one axis.
 * @throws LengthMismatchError / EmptyPathError on malformed inputs.
 */
inline double axis_rmse(const std::vector<PathPoint>& estimates,
                        const std::vector<PathPoint>& truth, Axis axis) {
  if (estimates.size() != truth.size()) {
    throw LengthMismatchError(estimates.size(), truth.size());
  }
  if (estimates.empty()) throw EmptyPathError();
  double sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double e = (axis == Axis::X) ? estimates[i].x - truth[i].x
                                       : estimates[i].y - truth[i].y;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(estimates.size()));
}

}  // namespace auvkit
