#pragma once

// ============================================================================
// dynamics.hpp
//
// Force decomposition and acceleration models for the simulated vehicle:
//   * full 6-DoF rigid-body + hydrodynamic model (ground truth), and
//   * reduced 4-DoF model (surge, sway, heave, yaw) used by the estimator.
//
// The reduced model is the full model with roll/pitch states pinned at zero.
// accel_full and accel_reduced are written with identical sub-expression
// shapes so that, whenever p = q = phi = theta = 0, the two agree exactly in
// floating point (every dropped term evaluates to a signed zero that is
// added or subtracted without perturbing the shared terms).
// ============================================================================

#include <Eigen/Dense>

#include <cmath>

#include "auvkit/frames.hpp"
#include "auvkit/params.hpp"

namespace auvkit {

// ============================================================================
// Domain types
// ============================================================================

/** @brief Body-frame force/torque bundle applied by the thrusters. */
struct Wrench6 {
  double Tx = 0.0;      ///< surge force [N]
  double Ty = 0.0;      ///< sway force [N]
  double Tz = 0.0;      ///< heave force [N]
  double Tphi = 0.0;    ///< roll torque [N m]
  double Ttheta = 0.0;  ///< pitch torque [N m]
  double Tpsi = 0.0;    ///< yaw torque [N m]
};

// ============================================================================
// Force terms
// ============================================================================

/**
 * @brief Rigid-body Coriolis/centripetal force vector C_RB(nu) * nu.
 *
 * CG-at-origin form; zero-power by construction (nu . C_RB(nu) nu = 0).
 */
inline Eigen::Matrix<double, 6, 1> coriolis_rb(const BodyVel6& nu,
                                               const VehicleParams& prm) {
  const double m = prm.m;
  Eigen::Matrix<double, 6, 1> f;
  f << m * (nu.q * nu.w - nu.r * nu.v),
       m * (nu.r * nu.u - nu.p * nu.w),
       m * (nu.p * nu.v - nu.q * nu.u),
       nu.q * nu.r * (prm.Izz - prm.Iyy),
       nu.r * nu.p * (prm.Ixx - prm.Izz),
       nu.q * nu.p * (prm.Iyy - prm.Ixx);
  return f;
}

/**
 * @brief Added-mass Coriolis/centripetal force vector C_A(nu) * nu.
 *
 * Added-mass magnitudes are positive; the sign pattern matches the
 * contributions that appear (negated) inside the acceleration equations.
 */
inline Eigen::Matrix<double, 6, 1> coriolis_added(const BodyVel6& nu,
                                                  const VehicleParams& prm) {
  const AddedMass& a = prm.addedMass;
  Eigen::Matrix<double, 6, 1> f;
  f << a.Ydv * nu.v * nu.r - a.Zdw * nu.w * nu.q,
       a.Zdw * nu.w * nu.p - a.Xdu * nu.u * nu.r,
       a.Xdu * nu.u * nu.q - a.Ydv * nu.v * nu.p,
       (a.Ydv - a.Zdw) * nu.v * nu.w + (a.Mdq - a.Ndr) * nu.q * nu.r,
       (a.Zdw - a.Xdu) * nu.u * nu.w + (a.Ndr - a.Kdp) * nu.p * nu.r,
       (a.Xdu - a.Ydv) * nu.u * nu.v + (a.Kdp - a.Mdq) * nu.p * nu.q;
  return f;
}

/**
 * @brief Diagonal linear + quadratic damping contribution.
 *
 * Component i is (lin_i + quad_i * |nu_i|) * nu_i with dissipative (<= 0)
 * coefficients, i.e. the signed term that enters the acceleration equations
 * directly (negative for positive velocity).
 */
inline Eigen::Matrix<double, 6, 1> damping(const BodyVel6& nu,
                                           const VehicleParams& prm) {
  const LinearDamping& l = prm.linDamp;
  const QuadraticDamping& d = prm.quadDamp;
  Eigen::Matrix<double, 6, 1> f;
  f << (l.Xu + d.Xuu * std::abs(nu.u)) * nu.u,
       (l.Yv + d.Yvv * std::abs(nu.v)) * nu.v,
       (l.Zw + d.Zww * std::abs(nu.w)) * nu.w,
       (l.Kp + d.Kpp * std::abs(nu.p)) * nu.p,
       (l.Mq + d.Mqq * std::abs(nu.q)) * nu.q,
       (l.Nr + d.Nrr * std::abs(nu.r)) * nu.r;
  return f;
}

/**
 * @brief Hydrostatic (weight/buoyancy) restoring force vector g(eta).
 *
 * Standalone restoring-force form; the acceleration equations below carry
 * their own (B - W) terms with the sign structure they were derived with.
 */
inline Eigen::Matrix<double, 6, 1> hydrostatics(const Pose6& pose,
                                                const VehicleParams& prm) {
  const double WB = prm.W - prm.B;
  const double cf = std::cos(pose.phi), sf = std::sin(pose.phi);
  const double ct = std::cos(pose.theta), st = std::sin(pose.theta);
  Eigen::Matrix<double, 6, 1> f;
  f << WB * st,
       -WB * ct * sf,
       -WB * ct * cf,
       -prm.zB * prm.B * ct * sf,
       -prm.zB * prm.B * st,
       0.0;
  return f;
}

// ============================================================================
// Acceleration models
// ============================================================================

/**
 * @brief Full 6-DoF body-frame accelerations.
 *
 * Decomposed per-axis with diagonal effective masses (m + added mass).
 * Roll/pitch torques act on their physical axes (Tphi on roll, Ttheta on
 * pitch); the simulated thruster wrench keeps both identically zero.
 */
inline BodyAcc6 accel_full(const BodyVel6& nu, const Pose6& pose,
                           const Wrench6& tau, const VehicleParams& prm) {
  const AddedMass& a = prm.addedMass;
  const double m = prm.m;
  const double BW = prm.B - prm.W;
  const double cf = std::cos(pose.phi), sf = std::sin(pose.phi);
  const double ct = std::cos(pose.theta), st = std::sin(pose.theta);

  const Eigen::Matrix<double, 6, 1> d = damping(nu, prm);

  BodyAcc6 acc;
  acc.du = (d(0) + BW * st + m * (nu.r * nu.v - nu.q * nu.w) -
            a.Ydv * (nu.r * nu.v) + a.Zdw * (nu.q * nu.w) + tau.Tx) /
           (m + a.Xdu);
  acc.dv = (d(1) - BW * sf * ct - m * (nu.r * nu.u - nu.p * nu.w) +
            a.Xdu * (nu.r * nu.u) - a.Zdw * (nu.p * nu.w) + tau.Ty) /
           (m + a.Ydv);
  acc.dw = (d(2) - BW * ct * cf + m * (nu.q * nu.u - nu.p * nu.v) -
            a.Xdu * (nu.q * nu.u) + a.Ydv * (nu.p * nu.v) + tau.Tz) /
           (m + a.Zdw);
  acc.dp = (d(3) - (a.Mdq - a.Ndr) * nu.q * nu.r +
            (prm.Iyy - prm.Izz) * nu.q * nu.r + (a.Zdw - a.Ydv) * nu.v * nu.w +
            prm.B * prm.zB * ct * sf + tau.Tphi) /
           (prm.Ixx + a.Kdp);
  acc.dq = (d(4) - (a.Ndr - a.Kdp) * nu.p * nu.r +
            (prm.Izz - prm.Ixx) * nu.p * nu.r + (a.Xdu - a.Zdw) * nu.u * nu.w +
            prm.B * prm.zB * st + tau.Ttheta) /
           (prm.Iyy + a.Mdq);
  acc.dr = (d(5) - (a.Kdp - a.Mdq) * nu.p * nu.q +
            (prm.Ixx - prm.Iyy) * nu.p * nu.q + (a.Ydv - a.Xdu) * nu.u * nu.v +
            tau.Tpsi) /
           (prm.Izz + a.Ndr);
  return acc;
}

/**
 * @brief Reduced 4-DoF accelerations (u-dot, v-dot, w-dot, r-dot).
 *
 * Equals the (u, v, w, r) rows of accel_full whenever p = q = phi = theta = 0
 * and the roll/pitch wrench components are zero, exactly in floating point.
 */
inline Eigen::Vector4d accel_reduced(const BodyVel6& nu, const Wrench6& tau,
                                     const VehicleParams& prm) {
  const AddedMass& a = prm.addedMass;
  const LinearDamping& l = prm.linDamp;
  const QuadraticDamping& q = prm.quadDamp;
  const double m = prm.m;
  const double BW = prm.B - prm.W;

  const double du = ((l.Xu + q.Xuu * std::abs(nu.u)) * nu.u +
                     m * (nu.r * nu.v) - a.Ydv * (nu.r * nu.v) + tau.Tx) /
                    (m + a.Xdu);
  const double dv = ((l.Yv + q.Yvv * std::abs(nu.v)) * nu.v -
                     m * (nu.r * nu.u) + a.Xdu * (nu.r * nu.u) + tau.Ty) /
                    (m + a.Ydv);
  const double dw = ((l.Zw + q.Zww * std::abs(nu.w)) * nu.w - BW + tau.Tz) /
                    (m + a.Zdw);
  const double dr = ((l.Nr + q.Nrr * std::abs(nu.r)) * nu.r +
                     (a.Ydv - a.Xdu) * nu.u * nu.v + tau.Tpsi) /
                    (prm.Izz + a.Ndr);
  return {du, dv, dw, dr};
}

}  // namespace auvkit
