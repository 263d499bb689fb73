#pragma once

// ============================================================================
// sensors.hpp
//
// Simulated sensor suite sampled from ground truth with seeded noise:
//   * IMU: body accelerations with a random-walk bias, body angular rates,
//     and a compass heading,
//   * DVL: body linear velocities,
//   * GPS: horizontal NED position fix (on its own rate ticks),
//   * pressure: depth (on its own rate ticks).
//
// All noise is zero-mean Gaussian from per-channel deterministic streams.
// ============================================================================

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "auvkit/frames.hpp"
#include "auvkit/rng.hpp"

namespace auvkit {

// ============================================================================
// Domain types
// ============================================================================

/** @brief Variances, rates, and seed for the whole sensor rig. */
struct SensorConfig {
  double imuAccelVar = 0.004;    ///< accelerometer variance [(m/s^2)^2] per axis
  double imuGyroVar = 1e-5;      ///< gyro variance [(rad/s)^2] per axis
  double imuBiasWalkVar = 1e-8;  ///< accel bias random-walk variance [(m/s^2)^2] per step
  double dvlVar = 1e-4;          ///< DVL variance [(m/s)^2] per axis
  double gpsVar = 0.25;          ///< GPS variance [m^2] per axis
  double depthVar = 0.01;        ///< pressure-depth variance [m^2]
  double headingVar = 1e-4;      ///< compass variance [rad^2]
  double imuRate = 10.0;         ///< [Hz]
  double dvlRate = 10.0;         ///< [Hz]
  double gpsRate = 10.0;         ///< [Hz]
  double depthRate = 10.0;       ///< [Hz]
  std::uint64_t seed = 0;
};

/** @brief One timestamped bundle of sensor readings. */
struct SensorFrame {
  double t = 0.0;                      ///< [s]
  std::array<double, 3> imuAccel{};    ///< body accelerations [m/s^2]
  std::array<double, 3> imuGyro{};     ///< body angular rates [rad/s]
  double heading = 0.0;                ///< compass yaw [rad]
  std::array<double, 3> dvl{};         ///< body velocities [m/s]
  std::optional<std::array<double, 2>> gps;  ///< NED (x, y) fix [m]
  std::optional<double> depth;               ///< NED z [m]
};

/** @brief Accelerometer bias state; evolves only via advance_bias. */
struct BiasState {
  std::array<double, 3> accelBias{};
};

/** @brief True state snapshot consumed by the sampler. */
struct TruthSample {
  Pose6 pose;
  BodyVel6 vel;
  BodyAcc6 acc;
};

// ============================================================================
// Sampling
// ============================================================================

/** @brief Independent per-channel streams for one simulated run. */
struct SensorStreams {
  explicit SensorStreams(std::uint64_t seed)
      : imuAccel(seed, "imu_accel"),
        imuGyro(seed, "imu_gyro"),
        imuBias(seed, "imu_bias"),
        heading(seed, "heading"),
        dvl(seed, "dvl"),
        gps(seed, "gps"),
        depth(seed, "depth") {}

  NoiseStream imuAccel;
  NoiseStream imuGyro;
  NoiseStream imuBias;
  NoiseStream heading;
  NoiseStream dvl;
  NoiseStream gps;
  NoiseStream depth;
};

/** @brief One random-walk step of the accelerometer bias. */
inline BiasState advance_bias(const BiasState& b, const SensorConfig& cfg,
                              SensorStreams& streams) {
  BiasState out = b;
  for (int i = 0; i < 3; ++i) {
    out.accelBias[i] += streams.imuBias.gaussian_var(cfg.imuBiasWalkVar);
  }
  return out;
}

/**
 * @brief Sample every channel from ground truth.
 *
 * GPS and depth readings are attached only when the caller marks their rate
 * ticks; their noise streams are consumed only on those ticks.
 */
inline SensorFrame sample_sensors(const TruthSample& truth, const BiasState& bias,
                                  const SensorConfig& cfg, SensorStreams& streams,
                                  double t, bool gpsTick = true,
                                  bool depthTick = true) {
  SensorFrame f;
  f.t = t;
  const std::array<double, 3> acc{truth.acc.du, truth.acc.dv, truth.acc.dw};
  const std::array<double, 3> gyr{truth.vel.p, truth.vel.q, truth.vel.r};
  const std::array<double, 3> vel{truth.vel.u, truth.vel.v, truth.vel.w};
  for (int i = 0; i < 3; ++i) {
    f.imuAccel[i] = acc[i] + bias.accelBias[i] +
                    streams.imuAccel.gaussian_var(cfg.imuAccelVar);
    f.imuGyro[i] = gyr[i] + streams.imuGyro.gaussian_var(cfg.imuGyroVar);
    f.dvl[i] = vel[i] + streams.dvl.gaussian_var(cfg.dvlVar);
  }
  f.heading = wrap_angle(truth.pose.psi +
                         streams.heading.gaussian_var(cfg.headingVar));
  if (gpsTick) {
    f.gps = {{truth.pose.x + streams.gps.gaussian_var(cfg.gpsVar),
              truth.pose.y + streams.gps.gaussian_var(cfg.gpsVar)}};
  }
  if (depthTick) {
    f.depth = truth.pose.z + streams.depth.gaussian_var(cfg.depthVar);
  }
  return f;
}

/** @brief Collect sensor-config constraint violations. */
inline std::vector<std::string> check_sensor_config(const SensorConfig& c) {
  std::vector<std::string> bad;
  auto require = [&bad](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  require(c.imuAccelVar >= 0.0, "imu_accel_var must be >= 0");
  require(c.imuGyroVar >= 0.0, "imu_gyro_var must be >= 0");
  require(c.imuBiasWalkVar >= 0.0, "imu_bias_walk_var must be >= 0");
  require(c.dvlVar >= 0.0, "dvl_var must be >= 0");
  require(c.gpsVar >= 0.0, "gps_var must be >= 0");
  require(c.depthVar >= 0.0, "depth_var must be >= 0");
  require(c.headingVar >= 0.0, "heading_var must be >= 0");
  require(c.imuRate > 0.0, "imu_rate must be > 0");
  require(c.dvlRate > 0.0, "dvl_rate must be > 0");
  require(c.gpsRate > 0.0, "gps_rate must be > 0");
  require(c.depthRate > 0.0, "depth_rate must be > 0");
  return bad;
}

}  // namespace auvkit
