#pragma once

// ============================================================================
// estimation.hpp
//
// Extended Kalman filter over the 4-state vector [x, y, z, psi] with two
// interchangeable prediction backends:
//   * dynamic:   body velocities from the DVL, yaw rate from the gyro, and
//                accelerations from the reduced 4-DoF model driven by the
//                commanded thrusts (via the command->thrust lookup);
//   * kinematic: accelerations from the IMU (yaw angular acceleration by
//                differencing the gyro), velocities either integrated from
//                the IMU accelerations (default) or taken from the DVL.
//
// The measurement model is the identity (GPS x/y, pressure z, compass psi),
// so H = I4 throughout; ticks without a GPS or depth reading inflate the
// corresponding R diagonal entries instead of reshaping H.
// ============================================================================

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>

#include "auvkit/dynamics.hpp"
#include "auvkit/frames.hpp"
#include "auvkit/sensors.hpp"
#include "auvkit/thrusters.hpp"

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown when the innovation covariance S cannot be inverted. */
class SingularInnovationError : public std::runtime_error {
 public:
  SingularInnovationError()
      : std::runtime_error(
            "innovation covariance S is singular (degenerate R and "
            "predicted P)") {}
};

// ============================================================================
// Domain types
// ============================================================================

/** @brief Filter state: 4-vector [x, y, z, psi] and its covariance. */
struct EstimatorState {
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  Eigen::Matrix4d P = Eigen::Matrix4d::Identity();
};

/** @brief Process and measurement noise covariances. */
struct FilterNoise {
  Eigen::Matrix4d Q = 1e-4 * Eigen::Matrix4d::Identity();
  /// Default mirrors the default sensor variances: GPS x/y, depth, heading.
  Eigen::Matrix4d R = Eigen::Vector4d(0.25, 0.25, 0.01, 1e-4).asDiagonal();
};

/** @brief Velocity/acceleration inputs for one prediction step. */
struct PredictInputs {
  Eigen::Vector4d vel = Eigen::Vector4d::Zero();      ///< (u, v, w, r)
  Eigen::Vector4d acc = Eigen::Vector4d::Zero();      ///< (du, dv, dw, dr)
  Eigen::Vector4d accPrev = Eigen::Vector4d::Zero();  ///< previous-tick acc
  double dt = 0.1;                                    ///< [s]
};

/** @brief Numerical options for the filter. */
struct EkfOptions {
  bool josephForm = false;   ///< use the Joseph-stabilized covariance update
  double velGuard = 0.01;    ///< |v_i| below this pins F_ii to 1
  double inflatedVar = 1e9;  ///< R diagonal for channels missing this tick
};

// ============================================================================
// Core operations
// ============================================================================

/**
 * @brief Second-order position prediction.
 *
 * x_hat = x + v dt + v_dot dt^2 / 2 with the body (u, v) velocity and
 * acceleration components rotated into NED by the current yaw before
 * integration; the predicted yaw is wrapped to [0, 2*pi).
 */
inline Eigen::Vector4d predict_state(const EstimatorState& s,
                                     const PredictInputs& in, double psi) {
  const double c = std::cos(psi), sn = std::sin(psi);
  const double dt = in.dt;
  const double h2 = dt * dt / 2.0;
  Eigen::Vector4d xh;
  xh(0) = s.x(0) + (c * in.vel(0) - sn * in.vel(1)) * dt +
          (c * in.acc(0) - sn * in.acc(1)) * h2;
  xh(1) = s.x(1) + (sn * in.vel(0) + c * in.vel(1)) * dt +
          (sn * in.acc(0) + c * in.acc(1)) * h2;
  xh(2) = s.x(2) + in.vel(2) * dt + in.acc(2) * h2;
  xh(3) = wrap_angle(s.x(3) + in.vel(3) * dt + in.acc(3) * h2);
  return xh;
}

/**
 * @brief Diagonal state-transition Jacobian.
 *
 * F_ii = 1 + (v_dot_i / v_i) dt + (delta_v_dot_i dt) / (2 v_i), with the
 * entry pinned to exactly 1 whenever |v_i| is below the low-velocity guard
 * (the rest-state limit; also prevents covariance blow-up at waypoints).
 */
inline Eigen::Matrix4d transition_jacobian(const PredictInputs& in,
                                           double velGuard = 0.01) {
  Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
  for (int i = 0; i < 4; ++i) {
    const double v = in.vel(i);
    if (std::abs(v) < velGuard) continue;
    const double dAcc = in.acc(i) - in.accPrev(i);
    F(i, i) = 1.0 + (in.acc(i) / v) * in.dt + (dAcc * in.dt) / (2.0 * v);
  }
  return F;
}

/** @brief Per-tick filter trace (prediction, posterior, P diagonal, innovation). */
struct EkfStepResult {
  EstimatorState state;
  Eigen::Vector4d pred = Eigen::Vector4d::Zero();
  Eigen::Vector4d innovation = Eigen::Vector4d::Zero();
};

/**
 * @brief One predict + update cycle with H = I4.
 *
 * Predict: x_hat via predict_state, P_hat = F P F^T + Q.
 * Update:  S = P_hat + R, K = P_hat S^-1, x = x_hat + K y,
 *          P = (I - K) P_hat (Joseph form optional), then re-symmetrized.
 * The yaw innovation uses the shortest signed angular difference; GPS/depth
 * channels missing from the frame get their R diagonals inflated.
 *
 * @throws SingularInnovationError when S is not invertible.
 */
inline EkfStepResult ekf_step(const EstimatorState& s, const PredictInputs& in,
                              const SensorFrame& frame, const FilterNoise& noise,
                              const EkfOptions& opt = {}) {
  // --- Predict ---------------------------------------------------------
  const Eigen::Vector4d xh = predict_state(s, in, s.x(3));
  const Eigen::Matrix4d F = transition_jacobian(in, opt.velGuard);
  const Eigen::Matrix4d Ph = F * s.P * F.transpose() + noise.Q;

  // --- Update ----------------------------------------------------------
  Eigen::Matrix4d R = noise.R;
  Eigen::Vector4d y = Eigen::Vector4d::Zero();
  if (frame.gps) {
    y(0) = (*frame.gps)[0] - xh(0);
    y(1) = (*frame.gps)[1] - xh(1);
  } else {
    R(0, 0) = opt.inflatedVar;
    R(1, 1) = opt.inflatedVar;
  }
  if (frame.depth) {
    y(2) = *frame.depth - xh(2);
  } else {
    R(2, 2) = opt.inflatedVar;
  }
  y(3) = wrap_pi(frame.heading - xh(3));

  // Degenerate exact-measurement limit: R = 0 with every channel observed
  // collapses the gain to the identity (K = Ph (Ph + 0)^-1); taking the
  // measurement directly keeps that limit exact instead of inverse-rounded.
  if (frame.gps && frame.depth && R.isZero(0.0)) {
    EkfStepResult res;
    res.pred = xh;
    res.innovation = y;
    res.state.x << (*frame.gps)[0], (*frame.gps)[1], *frame.depth,
        wrap_angle(frame.heading);
    res.state.P = Eigen::Matrix4d::Zero();
    return res;
  }

  const Eigen::Matrix4d S = Ph + R;
  Eigen::FullPivLU<Eigen::Matrix4d> lu(S);
  if (!lu.isInvertible()) throw SingularInnovationError();
  const Eigen::Matrix4d K = Ph * lu.inverse();

  EkfStepResult res;
  res.pred = xh;
  res.innovation = y;
  res.state.x = xh + K * y;
  res.state.x(3) = wrap_angle(res.state.x(3));
  const Eigen::Matrix4d IK = Eigen::Matrix4d::Identity() - K;
  Eigen::Matrix4d P;
  if (opt.josephForm) {
    P = IK * Ph * IK.transpose() + K * R * K.transpose();
  } else {
    P = IK * Ph;
  }
  res.state.P = 0.5 * (P + P.transpose());
  return res;
}

// ============================================================================
// Prediction backends
// ============================================================================

/**
 * @brief Reduced-model acceleration from one sensor frame plus the thrust
 *        commands in effect.
 *
 * Body velocities come from the DVL, the yaw rate from the gyro; commands
 * pass through the thrust lookup and the layout's wrench resolution before
 * evaluating the reduced model.
 */
inline Eigen::Vector4d dynamic_acceleration(
    const SensorFrame& frame, const std::array<double, 8>& commands,
    const ThrustLookup& table, const ThrusterLayout& lay,
    const VehicleParams& prm, WrenchFormula formula = WrenchFormula::Corrected) {
  BodyVel6 vel;
  vel.u = frame.dvl[0];
  vel.v = frame.dvl[1];
  vel.w = frame.dvl[2];
  vel.r = frame.imuGyro[2];
  std::array<double, 8> thrusts{};
  for (int i = 0; i < 8; ++i) thrusts[i] = table.lookup(commands[i]);
  const Wrench6 tau = wrench_from_thrusts(thrusts, lay, formula);
  return accel_reduced(vel, tau, prm);
}

/**
 * @brief IMU-derived acceleration: accelerometer axes plus a yaw angular
 *        acceleration obtained by differencing the gyro across frames.
 */
inline Eigen::Vector4d kinematic_acceleration(const SensorFrame& frame,
                                              double prevGyroR, double dt) {
  return {frame.imuAccel[0], frame.imuAccel[1], frame.imuAccel[2],
          (frame.imuGyro[2] - prevGyroR) / dt};
}

/** @brief Which estimator drives the prediction. */
enum class BackendKind { Dynamic, Kinematic };

/** @brief Velocity source for the kinematic backend. */
enum class KinematicVelocitySource {
  ImuIntegrated,  ///< integrate IMU accelerations from the initial velocity
  Dvl,            ///< read body velocities from the DVL each tick
};

/**
 * @brief Stateful wrapper producing PredictInputs for the dynamic backend.
 */
class DynamicBackend {
 public:
  DynamicBackend(VehicleParams prm, ThrusterLayout lay, ThrustLookup table,
                 WrenchFormula formula = WrenchFormula::Corrected)
      : prm_(prm), lay_(lay), table_(std::move(table)), formula_(formula) {}

  /** @brief Inputs for the tick that just received @p frame. */
  PredictInputs inputs(const SensorFrame& frame,
                       const std::array<double, 8>& commands, double dt) {
    PredictInputs in;
    in.dt = dt;
    in.vel = {frame.dvl[0], frame.dvl[1], frame.dvl[2], frame.imuGyro[2]};
    in.acc = dynamic_acceleration(frame, commands, table_, lay_, prm_, formula_);
    in.accPrev = first_ ? in.acc : prevAcc_;  // delta-acc = 0 on first step
    prevAcc_ = in.acc;
    first_ = false;
    return in;
  }

 private:
  VehicleParams prm_;
  ThrusterLayout lay_;
  ThrustLookup table_;
  WrenchFormula formula_;
  Eigen::Vector4d prevAcc_ = Eigen::Vector4d::Zero();
  bool first_ = true;
};

/**
 * @brief Stateful wrapper producing PredictInputs for the kinematic backend.
 */
class KinematicBackend {
 public:
  explicit KinematicBackend(
      KinematicVelocitySource src = KinematicVelocitySource::ImuIntegrated,
      Eigen::Vector3d initialVel = Eigen::Vector3d::Zero())
      : src_(src), intVel_(initialVel) {}

  /** @brief Inputs for the tick that just received @p frame. */
  PredictInputs inputs(const SensorFrame& frame, double dt) {
    PredictInputs in;
    in.dt = dt;
    const double prevR = first_ ? frame.imuGyro[2] : prevGyroR_;
    in.acc = kinematic_acceleration(frame, prevR, dt);
    if (src_ == KinematicVelocitySource::ImuIntegrated) {
      intVel_ += in.acc.head<3>() * dt;
      in.vel.head<3>() = intVel_;
    } else {
      in.vel.head<3>() = Eigen::Vector3d(frame.dvl[0], frame.dvl[1], frame.dvl[2]);
    }
    in.vel(3) = frame.imuGyro[2];
    in.accPrev = first_ ? in.acc : prevAcc_;
    prevAcc_ = in.acc;
    prevGyroR_ = frame.imuGyro[2];
    first_ = false;
    return in;
  }

 private:
  KinematicVelocitySource src_;
  Eigen::Vector3d intVel_;
  Eigen::Vector4d prevAcc_ = Eigen::Vector4d::Zero();
  double prevGyroR_ = 0.0;
  bool first_ = true;
};

/** @brief Initial filter state read directly from the first sensor frame. */
inline EstimatorState initial_state_from_frame(const SensorFrame& frame,
                                               double p0 = 1.0) {
  EstimatorState s;
  s.x(0) = frame.gps ? (*frame.gps)[0] : 0.0;
  s.x(1) = frame.gps ? (*frame.gps)[1] : 0.0;
  s.x(2) = frame.depth ? *frame.depth : 0.0;
  s.x(3) = wrap_angle(frame.heading);
  s.P = p0 * Eigen::Matrix4d::Identity();
  return s;
}

}  // namespace auvkit
