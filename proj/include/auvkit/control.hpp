#pragma once

// ============================================================================
// control.hpp
//
// Pure pursuit waypoint following: steering-angle synthesis, waypoint
// advancement within a vicinity radius, and constant-speed command output.
//
// The pursuit point is the position a fixed look-ahead distance beyond the
// vehicle's projection onto the active waypoint segment (clamped at the
// target).  For a vehicle on the segment this reduces exactly to steering
// from the segment slope; off the segment it adds the cross-track component
// that pulls the vehicle back onto the path.
// ============================================================================

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "auvkit/frames.hpp"

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown when the active segment's endpoints coincide in xy. */
class DegenerateSegmentError : public std::invalid_argument {
 public:
  DegenerateSegmentError()
      : std::invalid_argument(
            "previous and target waypoints coincide in the xy-plane") {}
};

/** @brief Thrown when a waypoint list is empty. */
class EmptyWaypointListError : public std::invalid_argument {
 public:
  EmptyWaypointListError()
      : std::invalid_argument("waypoint list is empty") {}
};

// ============================================================================
// Domain types
// ============================================================================

/** @brief One NED waypoint. */
struct Waypoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/** @brief Pure pursuit tuning. */
struct ControllerConfig {
  double lookAhead = 1.0;       ///< L_d [m]
  double vehicleLength = 1.0;   ///< L [m]
  double gain = 0.3;            ///< steering-to-yaw-rate gain
  double vicinityRadius = 0.5;  ///< waypoint capture radius [m]
  double cruiseSpeed = 0.3;     ///< commanded surge speed [m/s]
};

/** @brief Collect controller-config constraint violations. */
inline std::vector<std::string> check_controller_config(
    const ControllerConfig& c) {
  std::vector<std::string> bad;
  if (!(c.lookAhead > 0.0)) bad.push_back("look_ahead must be > 0");
  if (!(c.vehicleLength > 0.0)) bad.push_back("vehicle_length must be > 0");
  if (!(c.vicinityRadius > 0.0)) bad.push_back("vicinity_radius must be > 0");
  if (!(c.cruiseSpeed > 0.0 && c.cruiseSpeed <= 0.3)) {
    bad.push_back("cruise_speed must be in (0, 0.3]");
  }
  return bad;
}

// ============================================================================
// Steering
// ============================================================================

/**
 * @brief Steering angle from a given pursuit angle alpha.
 *
 * K = 2 sin(alpha) / L_d, delta = atan(K * L); |delta| < pi/2 always.
 */
inline double steering_from_alpha(double alpha, const ControllerConfig& cfg) {
  const double K = 2.0 * std::sin(alpha) / cfg.lookAhead;
  return std::atan(K * cfg.vehicleLength);
}

/**
 * @brief Pure pursuit steering toward the active segment.
 *
 * alpha is the shortest signed difference between the bearing from the
 * vehicle to the pursuit point and the vehicle's yaw.  The pursuit point
 * lies on the segment prevWaypoint->target, one look-ahead distance beyond
 * the vehicle's projection (clamped to the target); a vehicle already on
 * the segment therefore steers from the segment slope itself.
 *
 * @throws DegenerateSegmentError when the segment has zero xy length.
 */
inline double steering(const Pose6& pose, const Waypoint& target,
                       const Waypoint& prevWaypoint,
                       const ControllerConfig& cfg) {
  const double sx = target.x - prevWaypoint.x;
  const double sy = target.y - prevWaypoint.y;
  const double segLen = std::hypot(sx, sy);
  if (segLen < 1e-9) throw DegenerateSegmentError();

  // Projection parameter of the vehicle onto the segment, then advance it
  // one look-ahead distance (clamped at the target).
  const double proj =
      ((pose.x - prevWaypoint.x) * sx + (pose.y - prevWaypoint.y) * sy) /
      (segLen * segLen);
  const double sAhead = std::min(proj + cfg.lookAhead / segLen, 1.0);
  const double px = prevWaypoint.x + sAhead * sx;
  const double py = prevWaypoint.y + sAhead * sy;

  const double dx = px - pose.x;
  const double dy = py - pose.y;
  // If the pursuit point coincides with the vehicle (clamped at the target
  // while standing on it), fall back to the segment slope.
  const double bearing = (std::hypot(dx, dy) < 1e-9)
                             ? std::atan2(sy, sx)
                             : std::atan2(dy, dx);
  const double alpha = wrap_pi(bearing - pose.psi);
  return steering_from_alpha(alpha, cfg);
}

// ============================================================================
// Waypoint advancement
// ============================================================================

/** @brief Result of a waypoint-advancement check. */
struct WaypointProgress {
  std::size_t index = 0;  ///< active target index
  bool done = false;      ///< vehicle is within the vicinity of the last waypoint
};

/**
 * @brief Advance the target index while the vehicle sits inside the
 *        vicinity radius of the current target; saturates at the last
 *        waypoint and raises the done flag there.
 *
 * @throws EmptyWaypointListError when no waypoints are given.
 */
inline WaypointProgress advance_waypoint(const Pose6& pose,
                                         const std::vector<Waypoint>& waypoints,
                                         std::size_t currentIndex,
                                         const ControllerConfig& cfg) {
  if (waypoints.empty()) throw EmptyWaypointListError();
  WaypointProgress out;
  out.index = std::min(currentIndex, waypoints.size() - 1);
  auto within = [&](std::size_t i) {
    return std::hypot(pose.x - waypoints[i].x, pose.y - waypoints[i].y) <
           cfg.vicinityRadius;
  };
  while (out.index + 1 < waypoints.size() && within(out.index)) {
    ++out.index;
  }
  out.done = (out.index + 1 == waypoints.size()) && within(out.index);
  return out;
}

// ============================================================================
// Command synthesis
// ============================================================================

/** @brief (surge speed, yaw rate) command pair. */
struct VelocityCommand {
  double surgeSpeed = 0.0;  ///< [m/s]
  double yawRate = 0.0;     ///< [rad/s]
};

/**
 * @brief Constant-speed command: surge fixed at the cruise speed, yaw rate
 *        equal to the steering angle scaled by the controller gain.
 */
inline VelocityCommand command(double delta, const ControllerConfig& cfg) {
  return {cfg.cruiseSpeed, cfg.gain * delta};
}

}  // namespace auvkit
