#pragma once

// ============================================================================
// simcore.hpp
//
// Closed-loop episode runner.  Ground truth integrates the full 6-DoF model
// at a fast fixed step (default 100 Hz); sensing, both estimation backends,
// and the pure pursuit + inner-loop controller run at the filter rate
// (default 10 Hz) with commands held between ticks (zero-order hold).
//
// Tick timeline (tick k at t = k * filterDt):
//   1. log the truth state (its acceleration is the one produced by the
//      wrench active over the preceding interval -- what an IMU would read),
//   2. advance the accelerometer bias and sample one sensor frame,
//   3. step the estimation backend(s); the dynamic backend consumes the
//      commands that were actually in effect over the preceding interval,
//   4. advance the waypoint target using the controlling pose (selected
//      estimate, or truth when configured) and stop when the course is done,
//   5. compute pure pursuit steering, synthesize the velocity command, close
//      the surge/yaw/depth inner loops into a body wrench, and allocate it
//      into thruster commands.  The surge/yaw loops feed back the DVL surge
//      and gyro yaw-rate readings; the depth loop feeds back the pressure
//      sensor directly (depth keeping stays healthy regardless of which
//      navigation filter is steering),
//   6. integrate truth forward one filter interval under the new commands.
//
// The vehicle starts in station-keeping: the initial thruster commands hold
// depth exactly (heave thrust balancing net buoyancy), so heave -- and with
// it roll and pitch -- stay at zero instead of being excited before the
// first control tick.
// ============================================================================

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "auvkit/control.hpp"
#include "auvkit/dynamics.hpp"
#include "auvkit/estimation.hpp"
#include "auvkit/evaluation.hpp"
#include "auvkit/frames.hpp"
#include "auvkit/params.hpp"
#include "auvkit/sensors.hpp"
#include "auvkit/thrusters.hpp"

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown when the truth state leaves the sane-magnitude envelope. */
class SimulationDivergedError : public std::runtime_error {
 public:
  explicit SimulationDivergedError(double t)
      : std::runtime_error("simulation diverged (state magnitude > 1e6 or "
                           "non-finite) at t = " +
                           std::to_string(t) + " s") {}
};

/** @brief Thrown by run_episode on an invalid run configuration. */
class RunConfigError : public std::invalid_argument {
 public:
  explicit RunConfigError(const std::vector<std::string>& violations)
      : std::invalid_argument(join(violations)) {}

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid run configuration:";
    for (const std::string& s : v) out += "\n  - " + s;
    return out;
  }
};

// ============================================================================
// Configuration
// ============================================================================

/** @brief Truth integration scheme. */
enum class Integrator {
  SemiImplicitEuler,  ///< velocity first, then pose with the new velocity
  RungeKutta4,        ///< classic RK4 on the combined pose/velocity state
};

/** @brief Which estimation backend(s) a run exercises. */
enum class BackendMode {
  Dynamic,    ///< dynamic-model filter only
  Kinematic,  ///< kinematic (IMU) filter only
  Both,       ///< both filters on one shared truth; the dynamic one controls
};

/** @brief Pose source for the controller. */
enum class ControlSource {
  Estimate,  ///< controlling filter's posterior (closed loop through the EKF)
  Truth,     ///< ground truth (controller isolation runs)
};

/** @brief Everything one episode needs besides the course. */
struct RunConfig {
  double innerDt = 0.01;   ///< truth integration step [s]
  double filterDt = 0.1;   ///< sense/filter/control period [s]
  double timeout = 600.0;  ///< wall-clock simulated-time limit [s]
  std::uint64_t seed = 1;  ///< sensor noise seed

  BackendMode backend = BackendMode::Both;
  ControlSource controlSource = ControlSource::Estimate;
  Integrator integrator = Integrator::SemiImplicitEuler;
  KinematicVelocitySource kinVelSource = KinematicVelocitySource::ImuIntegrated;
  WrenchFormula wrenchFormula = WrenchFormula::Corrected;

  /// Start pose override; default is the first waypoint, level, yawed toward
  /// the second waypoint.
  std::optional<Pose6> startPose;

  double surgeGain = 1300.0;     ///< surge-speed loop gain [N/(m/s)]
  double yawGain = 1800.0;       ///< yaw-rate loop gain [N m/(rad/s)]
  double depthGain = 600.0;      ///< depth loop gain outside the deadband [N/m]
  double depthDeadband = 0.5;    ///< |depth error| treated as "on depth" [m]
  double initialCovariance = 1.0;  ///< P0 = this * I4
  double thrustClamp = 0.0;        ///< symmetric thrust bound [N]; 0 = none

  VehicleParams vehicle = rexrov_params();
  ThrusterLayout layout = rexrov_layout();
  ThrustLookup lookup = ThrustLookup::identity();
  SensorConfig sensors;
  FilterNoise noise;
  EkfOptions ekf;
  ControllerConfig controller;
};

/** @brief Collect run-config constraint violations; empty result means valid. */
inline std::vector<std::string> check_run_config(const Course& course,
                                                 const RunConfig& cfg) {
  std::vector<std::string> bad;
  if (course.waypoints.size() < 2) bad.push_back("course needs >= 2 waypoints");
  for (std::size_t i = 1; i < course.waypoints.size(); ++i) {
    const double d = std::hypot(course.waypoints[i].x - course.waypoints[i - 1].x,
                                course.waypoints[i].y - course.waypoints[i - 1].y);
    if (d < 1e-9) {
      bad.push_back("waypoints " + std::to_string(i - 1) + " and " +
                    std::to_string(i) + " coincide in the xy-plane");
      break;
    }
  }
  if (!(cfg.innerDt > 0.0)) bad.push_back("inner_dt must be > 0");
  if (!(cfg.filterDt > 0.0)) bad.push_back("filter_dt must be > 0");
  if (cfg.innerDt > 0.0 && cfg.filterDt > 0.0) {
    const double ratio = cfg.filterDt / cfg.innerDt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 || ratio < 1.0 - 1e-9) {
      bad.push_back("filter_dt must be an integer multiple of inner_dt");
    }
  }
  if (!(cfg.timeout >= cfg.filterDt)) bad.push_back("timeout must be >= filter_dt");
  if (!(cfg.surgeGain > 0.0)) bad.push_back("surge_gain must be > 0");
  if (!(cfg.yawGain > 0.0)) bad.push_back("yaw_gain must be > 0");
  if (!(cfg.depthGain >= 0.0)) bad.push_back("depth_gain must be >= 0");
  if (!(cfg.depthDeadband >= 0.0)) bad.push_back("depth_deadband must be >= 0");
  if (!(cfg.initialCovariance >= 0.0)) {
    bad.push_back("initial_covariance must be >= 0");
  }
  if (!(cfg.thrustClamp >= 0.0)) bad.push_back("thrust_clamp must be >= 0");
  for (const std::string& s : check_params(cfg.vehicle)) bad.push_back(s);
  for (const std::string& s : check_layout(cfg.layout)) bad.push_back(s);
  for (const std::string& s : check_sensor_config(cfg.sensors)) bad.push_back(s);
  for (const std::string& s : check_controller_config(cfg.controller)) {
    bad.push_back(s);
  }
  return bad;
}

// ============================================================================
// Truth integration
// ============================================================================

/** @brief Ground-truth vehicle state. */
struct TruthState {
  Pose6 pose;
  BodyVel6 vel;
  BodyAcc6 acc;  ///< acceleration at (pose, vel) under the active wrench
};

namespace detail {

inline Eigen::Matrix<double, 12, 1> pack(const Pose6& p, const BodyVel6& v) {
  Eigen::Matrix<double, 12, 1> s;
  s << p.x, p.y, p.z, p.phi, p.theta, p.psi, v.u, v.v, v.w, v.p, v.q, v.r;
  return s;
}

inline void unpack(const Eigen::Matrix<double, 12, 1>& s, Pose6& p, BodyVel6& v) {
  p.x = s(0); p.y = s(1); p.z = s(2);
  p.phi = s(3); p.theta = s(4); p.psi = s(5);
  v.u = s(6); v.v = s(7); v.w = s(8);
  v.p = s(9); v.q = s(10); v.r = s(11);
}

/// Combined state derivative [eta_dot; nu_dot] for the RK4 stages.
inline Eigen::Matrix<double, 12, 1> state_derivative(
    const Eigen::Matrix<double, 12, 1>& s, const Wrench6& tau,
    const VehicleParams& prm) {
  Pose6 p;
  BodyVel6 v;
  unpack(s, p, v);
  const Eigen::Matrix<double, 6, 1> etaDot = body_to_ned(p, v);
  const BodyAcc6 a = accel_full(v, p, tau, prm);
  Eigen::Matrix<double, 12, 1> ds;
  ds << etaDot, a.du, a.dv, a.dw, a.dp, a.dq, a.dr;
  return ds;
}

}  // namespace detail

/**
 * @brief Advance the truth state one integration step under a fixed wrench.
 *
 * Semi-implicit Euler updates the body velocity first and then the pose with
 * the *new* velocity through J evaluated at the old attitude; RK4 is the
 * classic fourth-order scheme on the combined 12-state.  The returned
 * state's acceleration is re-evaluated at the new (pose, velocity) under the
 * same wrench, which is what an accelerometer would read next.
 *
 * @throws SingularAttitudeError if the attitude passes the pitch singularity.
 */
inline TruthState integrate_step(const TruthState& s, const Wrench6& tau,
                                 double dt, const VehicleParams& prm,
                                 Integrator method = Integrator::SemiImplicitEuler) {
  TruthState n;
  if (method == Integrator::SemiImplicitEuler) {
    const BodyAcc6 a = accel_full(s.vel, s.pose, tau, prm);
    BodyVel6 v = s.vel;
    v.u += a.du * dt;
    v.v += a.dv * dt;
    v.w += a.dw * dt;
    v.p += a.dp * dt;
    v.q += a.dq * dt;
    v.r += a.dr * dt;
    const Eigen::Matrix<double, 6, 1> etaDot = body_to_ned(s.pose, v);
    n.pose = s.pose;
    n.pose.x += etaDot(0) * dt;
    n.pose.y += etaDot(1) * dt;
    n.pose.z += etaDot(2) * dt;
    n.pose.phi += etaDot(3) * dt;
    n.pose.theta += etaDot(4) * dt;
    n.pose.psi = wrap_angle(n.pose.psi + etaDot(5) * dt);
    n.vel = v;
  } else {
    const Eigen::Matrix<double, 12, 1> y0 = detail::pack(s.pose, s.vel);
    const auto k1 = detail::state_derivative(y0, tau, prm);
    const auto k2 = detail::state_derivative(y0 + 0.5 * dt * k1, tau, prm);
    const auto k3 = detail::state_derivative(y0 + 0.5 * dt * k2, tau, prm);
    const auto k4 = detail::state_derivative(y0 + dt * k3, tau, prm);
    const Eigen::Matrix<double, 12, 1> y1 =
        y0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    detail::unpack(y1, n.pose, n.vel);
    n.pose.psi = wrap_angle(n.pose.psi);
  }
  n.acc = accel_full(n.vel, n.pose, tau, prm);
  return n;
}

// ============================================================================
// Episode log
// ============================================================================

/** @brief One estimation backend's per-tick trace. */
struct EstimateTrace {
  Eigen::Vector4d x = Eigen::Vector4d::Zero();     ///< posterior [x y z psi]
  Eigen::Vector4d pred = Eigen::Vector4d::Zero();  ///< prior (prediction)
  Eigen::Vector4d innovation = Eigen::Vector4d::Zero();
  Eigen::Vector4d pdiag = Eigen::Vector4d::Zero();  ///< diag of posterior P
  Eigen::Vector4d vel = Eigen::Vector4d::Zero();  ///< (u, v, w, r) input
  Eigen::Vector4d acc = Eigen::Vector4d::Zero();  ///< (du, dv, dw, dr) input
};

/** @brief Controller/actuation record for one tick. */
struct CommandTrace {
  double surgeRef = 0.0;          ///< commanded surge speed [m/s]
  double yawRateRef = 0.0;        ///< commanded yaw rate [rad/s]
  double steering = 0.0;          ///< pure pursuit steering angle [rad]
  Wrench6 wrench;                 ///< requested body wrench
  std::array<double, 8> thrusterCommands{};  ///< allocated commands
  std::size_t waypointIndex = 0;  ///< active target after advancement
};

/** @brief Complete record of one closed-loop episode at the filter rate. */
struct RunLog {
  std::string courseName;
  std::vector<double> t;
  std::vector<TruthState> truth;
  std::vector<SensorFrame> frames;
  std::vector<EstimateTrace> dynamicTrace;    ///< empty in Kinematic mode
  std::vector<EstimateTrace> kinematicTrace;  ///< empty in Dynamic mode
  std::vector<CommandTrace> commands;
  bool reachedGoal = false;
  bool timedOut = false;
  double endTime = 0.0;
};

// ============================================================================
// Episode runner
// ============================================================================

namespace detail {

inline void check_finite_envelope(const TruthState& s, double t) {
  const double mags[] = {s.pose.x, s.pose.y,  s.pose.z, s.vel.u,
                         s.vel.v,  s.vel.w,   s.vel.p,  s.vel.q,
                         s.vel.r,  s.pose.phi, s.pose.theta};
  for (double m : mags) {
    if (!std::isfinite(m) || std::abs(m) > 1e6) {
      throw SimulationDivergedError(t);
    }
  }
}

inline Eigen::Vector4d pdiag(const Eigen::Matrix4d& P) {
  return P.diagonal();
}

}  // namespace detail

/**
 * @brief Run one closed-loop episode on a course.
 *
 * Deterministic: the course, configuration, and seed fully determine every
 * logged value.  Terminates when the vehicle enters the vicinity of the last
 * waypoint (reachedGoal) or at the configured timeout (timedOut).
 *
 * @throws RunConfigError          on invalid configuration
 * @throws SimulationDivergedError if truth leaves the sanity envelope
 */
inline RunLog run_episode(const Course& course, const RunConfig& cfg) {
  const std::vector<std::string> bad = check_run_config(course, cfg);
  if (!bad.empty()) throw RunConfigError(bad);

  const bool runDynamic = cfg.backend != BackendMode::Kinematic;
  const bool runKinematic = cfg.backend != BackendMode::Dynamic;
  const int stepsPerTick =
      static_cast<int>(std::llround(cfg.filterDt / cfg.innerDt));
  const std::size_t maxTicks =
      static_cast<std::size_t>(std::ceil(cfg.timeout / cfg.filterDt));
  const int gpsPeriod = std::max(
      1, static_cast<int>(std::llround(cfg.sensors.imuRate / cfg.sensors.gpsRate)));
  const int depthPeriod = std::max(
      1,
      static_cast<int>(std::llround(cfg.sensors.imuRate / cfg.sensors.depthRate)));

  const std::vector<Waypoint>& wps = course.waypoints;

  // --- Initial truth state: at the first waypoint, yawed along the first
  // --- segment, in station-keeping (heave thrust balancing net buoyancy).
  TruthState truth;
  if (cfg.startPose) {
    truth.pose = *cfg.startPose;
    truth.pose.psi = wrap_angle(truth.pose.psi);
  } else {
    truth.pose.x = wps[0].x;
    truth.pose.y = wps[0].y;
    truth.pose.z = wps[0].z;
    truth.pose.psi =
        wrap_angle(std::atan2(wps[1].y - wps[0].y, wps[1].x - wps[0].x));
  }

  const double holdTz = cfg.vehicle.B - cfg.vehicle.W;  // net-buoyancy balance
  Wrench6 activeWrench;
  activeWrench.Tz = holdTz;
  std::array<double, 8> activeCommands =
      allocate(activeWrench, cfg.layout, cfg.thrustClamp, cfg.wrenchFormula);
  {
    std::array<double, 8> thrusts{};
    for (int i = 0; i < 8; ++i) thrusts[i] = cfg.lookup.lookup(activeCommands[i]);
    truth.acc = accel_full(truth.vel, truth.pose,
                           wrench_from_thrusts(thrusts, cfg.layout, cfg.wrenchFormula),
                           cfg.vehicle);
  }

  // --- Estimation machinery.
  SensorStreams streams(cfg.seed);
  BiasState bias;
  DynamicBackend dynBackend(cfg.vehicle, cfg.layout, cfg.lookup, cfg.wrenchFormula);
  KinematicBackend kinBackend(cfg.kinVelSource);
  EstimatorState dynState, kinState;
  bool filtersInitialized = false;

  RunLog log;
  log.courseName = course.name;
  log.t.reserve(maxTicks + 1);

  std::size_t targetIndex = 1;
  double lastDepthReading = truth.pose.z;  // depth-loop feedback memory

  for (std::size_t k = 0; k <= maxTicks; ++k) {
    const double t = static_cast<double>(k) * cfg.filterDt;

    // 1-2. Sense.
    bias = advance_bias(bias, cfg.sensors, streams);
    const bool gpsTick = (k % static_cast<std::size_t>(gpsPeriod)) == 0;
    const bool depthTick = (k % static_cast<std::size_t>(depthPeriod)) == 0;
    const TruthSample sample{truth.pose, truth.vel, truth.acc};
    const SensorFrame frame =
        sample_sensors(sample, bias, cfg.sensors, streams, t, gpsTick, depthTick);

    // 3. Filter.
    EstimateTrace dynTrace, kinTrace;
    if (!filtersInitialized) {
      if (runDynamic) {
        dynState = initial_state_from_frame(frame, cfg.initialCovariance);
        dynTrace.x = dynState.x;
        dynTrace.pred = dynState.x;
        dynTrace.pdiag = detail::pdiag(dynState.P);
      }
      if (runKinematic) {
        kinState = initial_state_from_frame(frame, cfg.initialCovariance);
        kinTrace.x = kinState.x;
        kinTrace.pred = kinState.x;
        kinTrace.pdiag = detail::pdiag(kinState.P);
      }
      filtersInitialized = true;
    } else {
      if (runDynamic) {
        const PredictInputs in = dynBackend.inputs(frame, activeCommands, cfg.filterDt);
        const EkfStepResult r = ekf_step(dynState, in, frame, cfg.noise, cfg.ekf);
        dynState = r.state;
        dynTrace = {r.state.x, r.pred, r.innovation, detail::pdiag(r.state.P),
                    in.vel, in.acc};
      }
      if (runKinematic) {
        const PredictInputs in = kinBackend.inputs(frame, cfg.filterDt);
        const EkfStepResult r = ekf_step(kinState, in, frame, cfg.noise, cfg.ekf);
        kinState = r.state;
        kinTrace = {r.state.x, r.pred, r.innovation, detail::pdiag(r.state.P),
                    in.vel, in.acc};
      }
    }

    // 4. Controlling pose and waypoint progress.
    Pose6 ctrlPose;
    if (cfg.controlSource == ControlSource::Truth) {
      ctrlPose = truth.pose;
    } else {
      const EstimatorState& s = runDynamic ? dynState : kinState;
      ctrlPose.x = s.x(0);
      ctrlPose.y = s.x(1);
      ctrlPose.z = s.x(2);
      ctrlPose.psi = s.x(3);
    }
    const WaypointProgress progress =
        advance_waypoint(ctrlPose, wps, targetIndex, cfg.controller);
    targetIndex = std::max<std::size_t>(progress.index, 1);

    CommandTrace cmdTrace;
    cmdTrace.waypointIndex = targetIndex;

    if (progress.done) {
      // Final row: station-keeping command, then stop.
      cmdTrace.wrench.Tz = holdTz;
      log.t.push_back(t);
      log.truth.push_back(truth);
      log.frames.push_back(frame);
      if (runDynamic) log.dynamicTrace.push_back(dynTrace);
      if (runKinematic) log.kinematicTrace.push_back(kinTrace);
      log.commands.push_back(cmdTrace);
      log.reachedGoal = true;
      log.endTime = t;
      return log;
    }

    // 5. Pure pursuit + inner loops -> wrench -> thruster commands.
    const double delta =
        steering(ctrlPose, wps[targetIndex], wps[targetIndex - 1], cfg.controller);
    const VelocityCommand vc = command(delta, cfg.controller);

    const LinearDamping& ld = cfg.vehicle.linDamp;
    const QuadraticDamping& qd = cfg.vehicle.quadDamp;
    Wrench6 wrench;
    wrench.Tx = cfg.surgeGain * (vc.surgeSpeed - frame.dvl[0]) -
                (ld.Xu + qd.Xuu * std::abs(vc.surgeSpeed)) * vc.surgeSpeed;
    wrench.Tpsi = cfg.yawGain * (vc.yawRate - frame.imuGyro[2]) -
                  (ld.Nr + qd.Nrr * std::abs(vc.yawRate)) * vc.yawRate;
    if (cfg.controlSource == ControlSource::Truth) {
      lastDepthReading = truth.pose.z;
    } else if (frame.depth) {
      lastDepthReading = *frame.depth;
    }
    const double depthErr = wps[targetIndex].z - lastDepthReading;
    wrench.Tz = (std::abs(depthErr) <= cfg.depthDeadband)
                    ? holdTz
                    : holdTz + cfg.depthGain * depthErr;

    const std::array<double, 8> commands =
        allocate(wrench, cfg.layout, cfg.thrustClamp, cfg.wrenchFormula);

    cmdTrace.surgeRef = vc.surgeSpeed;
    cmdTrace.yawRateRef = vc.yawRate;
    cmdTrace.steering = delta;
    cmdTrace.wrench = wrench;
    cmdTrace.thrusterCommands = commands;

    log.t.push_back(t);
    log.truth.push_back(truth);
    log.frames.push_back(frame);
    if (runDynamic) log.dynamicTrace.push_back(dynTrace);
    if (runKinematic) log.kinematicTrace.push_back(kinTrace);
    log.commands.push_back(cmdTrace);

    // 6. Integrate truth under the new commands (zero-order hold).
    activeCommands = commands;
    std::array<double, 8> thrusts{};
    for (int i = 0; i < 8; ++i) thrusts[i] = cfg.lookup.lookup(commands[i]);
    const Wrench6 applied =
        wrench_from_thrusts(thrusts, cfg.layout, cfg.wrenchFormula);
    for (int s = 0; s < stepsPerTick; ++s) {
      truth = integrate_step(truth, applied, cfg.innerDt, cfg.vehicle,
                             cfg.integrator);
      detail::check_finite_envelope(truth, t + (s + 1) * cfg.innerDt);
    }
  }

  log.timedOut = true;
  log.endTime = log.t.empty() ? 0.0 : log.t.back();
  return log;
}

}  // namespace auvkit
