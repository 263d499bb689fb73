// Course construction, reference-path, and error-metric tests.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "auvkit/csv.hpp"
#include "auvkit/evaluation.hpp"

namespace {

using namespace auvkit;

constexpr double kPi = std::numbers::pi;

std::vector<PathPoint> straight_line(double y, int n = 101, double step = 0.5) {
  std::vector<PathPoint> p(n);
  for (int i = 0; i < n; ++i) p[i] = {i * step, y};
  return p;
}

TEST(Courses, BuiltinIdsAndUnknownId) {
  EXPECT_EQ(builtin_course_ids(), (std::vector<std::string>{"BE1", "BE2", "BE3"}));
  EXPECT_THROW(builtin_course("BE4"), UnknownCourseError);
  EXPECT_THROW(builtin_course(""), UnknownCourseError);
}

TEST(Courses, ConstantDepthEverywhere) {
  for (const std::string& id : builtin_course_ids()) {
    const Course c = builtin_course(id);
    for (const Waypoint& w : c.waypoints) EXPECT_EQ(w.z, 20.0);
  }
}

TEST(Courses, Be1StartsWithStraightCollinearLeg) {
  const Course c = builtin_course("BE1");
  ASSERT_GE(c.waypoints.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(c.waypoints[i].y, 0.0);
    EXPECT_EQ(c.waypoints[i].x, 10.0 * i);
  }
}

TEST(Courses, Be2AlternatesTurnDirection) {
  const Course c = builtin_course("BE2");
  // Sign of the cross product of successive waypoint segments flips at
  // least twice across the three stacked half-circles.
  int flips = 0;
  double prev = 0.0;
  for (std::size_t i = 2; i < c.waypoints.size(); ++i) {
    const double ax = c.waypoints[i - 1].x - c.waypoints[i - 2].x;
    const double ay = c.waypoints[i - 1].y - c.waypoints[i - 2].y;
    const double bx = c.waypoints[i].x - c.waypoints[i - 1].x;
    const double by = c.waypoints[i].y - c.waypoints[i - 1].y;
    const double cross = ax * by - ay * bx;
    if (std::abs(cross) < 1e-9) continue;
    if (prev != 0.0 && std::signbit(cross) != std::signbit(prev)) ++flips;
    prev = cross;
  }
  EXPECT_GE(flips, 2);
}

TEST(Courses, Be3NetHeadingChangeIsHalfTurn) {
  const Course c = builtin_course("BE3");
  const std::vector<Waypoint>& w = c.waypoints;
  ASSERT_GE(w.size(), 3u);
  const double first =
      std::atan2(w[1].y - w[0].y, w[1].x - w[0].x);
  const std::size_t n = w.size();
  const double last =
      std::atan2(w[n - 1].y - w[n - 2].y, w[n - 1].x - w[n - 2].x);
  EXPECT_NEAR(std::abs(wrap_pi(last - first)), kPi, 1e-9);
}

TEST(Courses, ReferencePathVisitsWaypointsInOrder) {
  for (const std::string& id : builtin_course_ids()) {
    const Course c = builtin_course(id);
    std::size_t cursor = 0;
    for (const Waypoint& w : c.waypoints) {
      // Each waypoint appears in the densified path, in order.  Interior
      // vertices are reconstructed as a + s*(b - a), so allow rounding.
      bool found = false;
      for (; cursor < c.referencePath.size(); ++cursor) {
        if (std::hypot(c.referencePath[cursor].x - w.x,
                       c.referencePath[cursor].y - w.y) < 1e-9) {
          found = true;
          break;
        }
      }
      EXPECT_TRUE(found) << id << " waypoint (" << w.x << ", " << w.y << ")";
    }
  }
}

TEST(Courses, ReferencePathSpacingBounded) {
  for (const std::string& id : builtin_course_ids()) {
    const Course c = builtin_course(id);
    ASSERT_GE(c.referencePath.size(), 2u);
    for (std::size_t i = 1; i < c.referencePath.size(); ++i) {
      const double d = std::hypot(c.referencePath[i].x - c.referencePath[i - 1].x,
                                  c.referencePath[i].y - c.referencePath[i - 1].y);
      EXPECT_LE(d, 0.1 + 1e-9);
      EXPECT_GT(d, 0.0);
    }
  }
}

TEST(Densify, CountAndEndpoints) {
  const std::vector<Waypoint> wps = {{0, 0, 20}, {1, 0, 20}};
  const std::vector<PathPoint> path = densify(wps, 0.1);
  ASSERT_EQ(path.size(), 11u);
  EXPECT_EQ(path.front().x, 0.0);
  EXPECT_EQ(path.back().x, 1.0);
  EXPECT_NEAR(path[3].x, 0.3, 1e-12);
}

TEST(Metrics, PointSegmentDistanceOracles) {
  const PathPoint a{0, 0}, b{10, 0};
  EXPECT_DOUBLE_EQ(point_segment_dist_sq({3, 5}, a, b), 25.0);
  EXPECT_DOUBLE_EQ(point_segment_dist_sq({12, 1}, a, b), 5.0);  // clamps to b
  EXPECT_DOUBLE_EQ(point_segment_dist_sq({-3, 4}, a, b), 25.0);  // clamps to a
  EXPECT_DOUBLE_EQ(point_segment_dist_sq({7, 0}, a, b), 0.0);
  // Degenerate segment degrades to point distance.
  EXPECT_DOUBLE_EQ(point_segment_dist_sq({3, 4}, a, a), 25.0);
}

TEST(Metrics, NearestPointProjectsOntoPolyline) {
  const std::vector<PathPoint> poly = {{0, 0}, {10, 0}, {10, 10}};
  const PathPoint p1 = nearest_point_on_polyline({3, 5}, poly);
  EXPECT_NEAR(p1.x, 3.0, 1e-12);
  EXPECT_NEAR(p1.y, 0.0, 1e-12);
  const PathPoint p2 = nearest_point_on_polyline({14, 3}, poly);
  EXPECT_NEAR(p2.x, 10.0, 1e-12);
  EXPECT_NEAR(p2.y, 3.0, 1e-12);
  EXPECT_THROW(nearest_point_on_polyline({0, 0}, {}), EmptyPathError);
}

TEST(Metrics, TotalErrorZeroOnIdenticalPaths) {
  const std::vector<PathPoint> p = straight_line(0.0);
  EXPECT_EQ(total_error(p, p), 0.0);
}

TEST(Metrics, TotalErrorConstantOffsetOracle) {
  EXPECT_NEAR(total_error(straight_line(0.1), straight_line(0.0)), 0.1, 1e-12);
  EXPECT_NEAR(total_error(straight_line(-2.5), straight_line(0.0)), 2.5, 1e-12);
}

TEST(Metrics, TotalErrorMatchesBruteForce) {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> d(-20.0, 20.0);
  std::uniform_int_distribution<int> len(2, 60);
  for (int k = 0; k < 30; ++k) {
    std::vector<PathPoint> traveled(len(rng)), reference(len(rng));
    for (PathPoint& p : traveled) p = {d(rng), d(rng)};
    for (PathPoint& p : reference) p = {d(rng), d(rng)};
    // Independent O(n*m) evaluation: min point-to-segment distance per sample.
    double sum = 0.0;
    for (const PathPoint& p : traveled) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < reference.size(); ++i) {
        best = std::min(best,
                        point_segment_dist_sq(p, reference[i], reference[i + 1]));
      }
      sum += std::sqrt(best);
    }
    const double brute = sum / traveled.size();
    EXPECT_NEAR(total_error(traveled, reference), brute, 1e-9);
  }
}

TEST(Metrics, TotalErrorTranslationInvariant) {
  std::mt19937_64 rng(159);
  std::uniform_real_distribution<double> d(-20.0, 20.0);
  std::vector<PathPoint> traveled(40), reference(55);
  for (PathPoint& p : traveled) p = {d(rng), d(rng)};
  for (PathPoint& p : reference) p = {d(rng), d(rng)};
  const double base = total_error(traveled, reference);
  for (PathPoint& p : traveled) { p.x += 7.0; p.y -= 3.0; }
  for (PathPoint& p : reference) { p.x += 7.0; p.y -= 3.0; }
  EXPECT_NEAR(total_error(traveled, reference), base, 1e-9);
}

TEST(Metrics, TotalErrorRejectsEmptyInput) {
  const std::vector<PathPoint> p = straight_line(0.0);
  EXPECT_THROW(total_error({}, p), EmptyPathError);
  EXPECT_THROW(total_error(p, {}), EmptyPathError);
}

TEST(Metrics, AxisRmseOracles) {
  std::vector<PathPoint> est = straight_line(0.0);
  const std::vector<PathPoint> truth = straight_line(0.0);
  EXPECT_EQ(axis_rmse(est, truth, Axis::X), 0.0);
  EXPECT_EQ(axis_rmse(est, truth, Axis::Y), 0.0);

  for (PathPoint& p : est) p.x += 0.5;
  EXPECT_NEAR(axis_rmse(est, truth, Axis::X), 0.5, 1e-12);
  EXPECT_EQ(axis_rmse(est, truth, Axis::Y), 0.0);

  // Alternating 0/1 errors: RMSE = sqrt(1/2).
  std::vector<PathPoint> alt = straight_line(0.0, 100);
  for (int i = 0; i < 100; i += 2) alt[i].y += 1.0;
  EXPECT_NEAR(axis_rmse(alt, straight_line(0.0, 100), Axis::Y),
              std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(axis_rmse(alt, straight_line(0.0, 100), Axis::Y), 0.70711, 1e-5);
}

TEST(Metrics, AxisRmseDominatesMeanError) {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<PathPoint> est(200), truth(200);
  double meanErr = 0.0;
  for (int i = 0; i < 200; ++i) {
    truth[i] = {static_cast<double>(i), 0.0};
    est[i] = {truth[i].x + d(rng), 0.0};
    meanErr += est[i].x - truth[i].x;
  }
  meanErr /= 200.0;
  EXPECT_GE(axis_rmse(est, truth, Axis::X), std::abs(meanErr));
}

TEST(Metrics, AxisRmseRejectsMalformedSeries) {
  const std::vector<PathPoint> five = straight_line(0.0, 5);
  const std::vector<PathPoint> six = straight_line(0.0, 6);
  EXPECT_THROW(axis_rmse(five, six, Axis::X), LengthMismatchError);
  EXPECT_THROW(axis_rmse({}, {}, Axis::X), EmptyPathError);
}

TEST(CourseFiles, RoundTripPreservesWaypointsExactly) {
  const Course original = builtin_course("BE3");
  const std::string tmp =
      (std::filesystem::temp_directory_path() / "auvkit_course_rt.csv").string();
  {
    std::ofstream out(tmp, std::ios::binary);
    out << "# name: " << original.name << "\n";
    out << "x,y,z\n";
    for (const Waypoint& w : original.waypoints) {
      out << format_double(w.x) << ',' << format_double(w.y) << ','
          << format_double(w.z) << "\n";
    }
  }
  const Course loaded = course_from_file(tmp);
  std::remove(tmp.c_str());
  EXPECT_EQ(loaded.name, "BE3");
  ASSERT_EQ(loaded.waypoints.size(), original.waypoints.size());
  for (std::size_t i = 0; i < loaded.waypoints.size(); ++i) {
    EXPECT_EQ(loaded.waypoints[i].x, original.waypoints[i].x);
    EXPECT_EQ(loaded.waypoints[i].y, original.waypoints[i].y);
    EXPECT_EQ(loaded.waypoints[i].z, original.waypoints[i].z);
  }
}

TEST(CourseFiles, ShippedFilesMatchBuiltinsExactly) {
  const std::string dir = std::string(AUVKIT_DATA_DIR) + "/courses/";
  const std::vector<std::pair<std::string, std::string>> files = {
      {"BE1", dir + "be1.csv"}, {"BE2", dir + "be2.csv"}, {"BE3", dir + "be3.csv"}};
  for (const auto& [id, path] : files) {
    const Course ref = builtin_course(id);
    const Course got = course_from_file(path);
    EXPECT_EQ(got.name, id);
    ASSERT_EQ(got.waypoints.size(), ref.waypoints.size()) << path;
    for (std::size_t i = 0; i < ref.waypoints.size(); ++i) {
      EXPECT_EQ(got.waypoints[i].x, ref.waypoints[i].x) << path << " row " << i;
      EXPECT_EQ(got.waypoints[i].y, ref.waypoints[i].y) << path << " row " << i;
      EXPECT_EQ(got.waypoints[i].z, ref.waypoints[i].z) << path << " row " << i;
    }
  }
}

TEST(CourseFiles, MalformedFilesThrow) {
  EXPECT_THROW(course_from_file("/nonexistent/course.csv"), CourseFileError);
  const std::string tmp =
      (std::filesystem::temp_directory_path() / "auvkit_course_bad.csv").string();
  {
    std::ofstream out(tmp);
    out << "x,y,z\n1,2,20\n";  // only one waypoint
  }
  EXPECT_THROW(course_from_file(tmp), CourseFileError);
  {
    std::ofstream out(tmp);
    out << "x,y,z\n1,2\n3,4,20\n";  // short row
  }
  EXPECT_THROW(course_from_file(tmp), CourseFileError);
  {
    std::ofstream out(tmp);
    out << "x,y,z\n1,2,20\nfoo,4,20\n";  // non-numeric entry
  }
  EXPECT_THROW(course_from_file(tmp), CourseFileError);
  std::remove(tmp.c_str());
}

}  // namespace
