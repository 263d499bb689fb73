#pragma once

// ============================================================================
// frames.hpp
//
// SNAME-convention coordinate frames for a marine vehicle and the BODY->NED
// velocity transformation.  The world frame is NED (north-east-down, z
// positive downward); the body frame is vehicle-fixed with x forward, y
// starboard, z down.  Attitude is a ZYX (yaw-pitch-roll) Euler triplet.
// ============================================================================

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown when an attitude is too close to the pitch singularity. */
class SingularAttitudeError : public std::domain_error {
 public:
  explicit SingularAttitudeError(double theta)
      : std::domain_error("attitude singular: |cos(theta)| < 1e-6 at theta = " +
                          std::to_string(theta)) {}
};

/// Pitch angles with |cos(theta)| below this are rejected as singular.
inline constexpr double kSingularCosTheta = 1e-6;

// ============================================================================
// Domain types
// ============================================================================

/** @brief NED position plus ZYX Euler attitude (the eta vector). */
struct Pose6 {
  double x = 0.0;      ///< north position [m]
  double y = 0.0;      ///< east position [m]
  double z = 0.0;      ///< down position [m] (positive = deeper)
  double phi = 0.0;    ///< roll [rad]
  double theta = 0.0;  ///< pitch [rad]
  double psi = 0.0;    ///< yaw [rad], stored wrapped to [0, 2*pi)
};

/** @brief Body-frame linear and angular velocity (the nu vector). */
struct BodyVel6 {
  double u = 0.0;  ///< surge [m/s]
  double v = 0.0;  ///< sway [m/s]
  double w = 0.0;  ///< heave [m/s]
  double p = 0.0;  ///< roll rate [rad/s]
  double q = 0.0;  ///< pitch rate [rad/s]
  double r = 0.0;  ///< yaw rate [rad/s]
};

/** @brief Body-frame linear and angular acceleration (nu-dot). */
struct BodyAcc6 {
  double du = 0.0;  ///< surge acceleration [m/s^2]
  double dv = 0.0;  ///< sway acceleration [m/s^2]
  double dw = 0.0;  ///< heave acceleration [m/s^2]
  double dp = 0.0;  ///< roll angular acceleration [rad/s^2]
  double dq = 0.0;  ///< pitch angular acceleration [rad/s^2]
  double dr = 0.0;  ///< yaw angular acceleration [rad/s^2]
};

// ============================================================================
// Angle helpers
// ============================================================================

/** @brief Wrap an angle to [0, 2*pi).  Result is congruent to a mod 2*pi. */
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod can return exactly two_pi after the correction when a is a tiny
  // negative number; fold that back to zero.
  if (r >= two_pi) r = 0.0;
  return r;
}

/** @brief Shortest signed angular difference, mapped to (-pi, pi]. */
inline double wrap_pi(double a) {
  constexpr double pi = std::numbers::pi;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r > pi) r -= two_pi;
  if (r <= -pi) r += two_pi;
  return r;
}

// ============================================================================
// BODY -> NED transforms
// ============================================================================

/**
 * @brief Proper rotation matrix taking body-frame linear velocity to NED.
 *
 * ZYX Euler composition R = Rz(psi) * Ry(theta) * Rx(phi); orthonormal with
 * det = +1 for any attitude.
 */
inline Eigen::Matrix3d rotation(double phi, double theta, double psi) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(psi), sp = std::sin(psi);
  Eigen::Matrix3d R;
  R << cp * ct, -sp * cf + cp * st * sf, sp * sf + cp * cf * st,
       sp * ct,  cp * cf + sf * st * sp, -cp * sf + st * sp * cf,
       -st,      ct * sf,                ct * cf;
  return R;
}

/**
 * @brief Transform taking body angular rates (p, q, r) to Euler angle rates.
 *
 * Undefined at the pitch singularity; callers must guard |cos(theta)|.
 */
inline Eigen::Matrix3d angular_transform(double phi, double theta) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), tt = std::tan(theta);
  Eigen::Matrix3d T;
  T << 1.0, sf * tt, cf * tt,
       0.0, cf,      -sf,
       0.0, sf / ct, cf / ct;
  return T;
}

/**
 * @brief Block-diagonal 6x6 transform J = diag(R, T) from body velocity to
 *        NED pose rate.
 * @throws SingularAttitudeError when |cos(theta)| < 1e-6.
 */
inline Eigen::Matrix<double, 6, 6> build_transform(double phi, double theta,
                                                   double psi) {
  if (std::abs(std::cos(theta)) < kSingularCosTheta) {
    throw SingularAttitudeError(theta);
  }
  Eigen::Matrix<double, 6, 6> J = Eigen::Matrix<double, 6, 6>::Zero();
  J.topLeftCorner<3, 3>() = rotation(phi, theta, psi);
  J.bottomRightCorner<3, 3>() = angular_transform(phi, theta);
  return J;
}

/** @brief Convenience overload taking the attitude from a pose. */
inline Eigen::Matrix<double, 6, 6> build_transform(const Pose6& pose) {
  return build_transform(pose.phi, pose.theta, pose.psi);
}

/**
 * @brief NED pose rate eta-dot = J(Theta) * nu.
 * @throws SingularAttitudeError when the attitude is singular.
 */
inline Eigen::Matrix<double, 6, 1> body_to_ned(double phi, double theta,
                                               double psi,
                                               const BodyVel6& vel) {
  Eigen::Matrix<double, 6, 1> nu;
  nu << vel.u, vel.v, vel.w, vel.p, vel.q, vel.r;
  return build_transform(phi, theta, psi) * nu;
}

/** @brief Convenience overload taking the attitude from a pose. */
inline Eigen::Matrix<double, 6, 1> body_to_ned(const Pose6& pose,
                                               const BodyVel6& vel) {
  return body_to_ned(pose.phi, pose.theta, pose.psi, vel);
}

}  // namespace auvkit
