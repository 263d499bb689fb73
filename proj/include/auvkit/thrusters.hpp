#pragma once

// ============================================================================
// thrusters.hpp
//
// RexROV 8-thruster geometry, per-thruster thrust resolution into a body
// wrench, command-to-thrust lookup, and minimum-norm wrench-to-thrust
// allocation for the controller.
//
// Thrusters 0-3 are pitched out of the horizontal plane and provide the
// heave force; thrusters 4-7 are horizontal and provide surge/sway/yaw
// authority.  The reduced-model wrench carries no roll/pitch torque.
// ============================================================================

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "auvkit/dynamics.hpp"

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown when a thrust lookup table is empty or malformed. */
class ThrustTableError : public std::invalid_argument {
 public:
  explicit ThrustTableError(const std::string& what)
      : std::invalid_argument(what) {}
};

/** @brief Thrown when the allocation matrix loses rank on the controlled axes. */
class AllocationRankError : public std::runtime_error {
 public:
  AllocationRankError()
      : std::runtime_error(
            "thruster allocation matrix is rank-deficient on (x, y, z, yaw)") {}
};

// ============================================================================
// Domain types
// ============================================================================

/** @brief One thruster: position from CG [m] and mount orientation [rad]. */
struct Thruster {
  double lx = 0.0;
  double ly = 0.0;
  double lz = 0.0;
  double phi = 0.0;    ///< roll mount angle (unused by the wrench model)
  double theta = 0.0;  ///< elevation from the body xy-plane
  double psi = 0.0;    ///< azimuth about the body z-axis
};

/** @brief Fixed 8-thruster layout. */
struct ThrusterLayout {
  std::array<Thruster, 8> thrusters{};
};

/** @brief Which resolution formulas to use when forming the body wrench. */
enum class WrenchFormula {
  Corrected,  ///< default: geometry-consistent sway/heave resolution
  AsPrinted,  ///< literal legacy form (sway duplicates surge for thrusters
              ///< 0-3; heave sums sin(psi) over thrusters 1-3) for comparison
};

namespace detail {

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

inline Thruster make_thruster(double lx, double ly, double lz, double phi_deg,
                              double theta_deg, double psi_deg) {
  return {lx, ly, lz, deg2rad(phi_deg), deg2rad(theta_deg), deg2rad(psi_deg)};
}

}  // namespace detail

/**
 * @brief Default RexROV thruster layout (positions and mount angles).
 *
 * Note the published azimuth of thruster 5 (+45 deg) is not the xz-mirror
 * of thruster 4; the layout is reproduced verbatim.  See
 * rexrov_layout_mirror_corrected() for the fully mirror-symmetric variant.
 */
inline ThrusterLayout rexrov_layout() {
  using detail::make_thruster;
  ThrusterLayout lay;
  lay.thrusters = {
      make_thruster(-0.890895, 0.334385, -0.528822, 0.0, 74.53, -53.21),
      make_thruster(-0.890895, -0.334385, -0.528822, 0.0, 74.53, 53.21),
      make_thruster(0.890895, 0.334385, -0.528822, 0.0, 105.47, 53.21),
      make_thruster(0.890895, -0.334385, -0.528822, 0.0, 105.47, -53.21),
      make_thruster(-0.412125, 0.505415, -0.129, 0.0, 0.0, 45.0),
      make_thruster(-0.412125, -0.505415, -0.129, 0.0, 0.0, 45.0),
      make_thruster(0.412125, 0.505415, -0.129, 0.0, 0.0, 135.0),
      make_thruster(0.412125, -0.505415, -0.129, 0.0, 0.0, -135.0),
  };
  return lay;
}

/**
 * @brief RexROV layout with thruster 5's azimuth flipped to -45 deg so that
 *        every port/starboard pair is truly mirror-symmetric about xz.
 */
inline ThrusterLayout rexrov_layout_mirror_corrected() {
  ThrusterLayout lay = rexrov_layout();
  lay.thrusters[5].psi = detail::deg2rad(-45.0);
  return lay;
}

/** @brief Collect layout constraint violations; empty result means valid. */
inline std::vector<std::string> check_layout(const ThrusterLayout& lay) {
  std::vector<std::string> bad;
  // Positions must pair up mirror-symmetrically about the xz-plane:
  // (0,1), (2,3), (4,5), (6,7).
  for (int i = 0; i < 8; i += 2) {
    const Thruster& a = lay.thrusters[i];
    const Thruster& b = lay.thrusters[i + 1];
    if (std::abs(a.lx - b.lx) > 1e-12 || std::abs(a.ly + b.ly) > 1e-12 ||
        std::abs(a.lz - b.lz) > 1e-12) {
      bad.push_back("thrusters " + std::to_string(i) + "/" +
                    std::to_string(i + 1) +
                    " positions are not mirror-symmetric about xz");
    }
  }
  return bad;
}

// ============================================================================
// Wrench resolution
// ============================================================================

/**
 * @brief Resolve 8 thrust magnitudes [N] into a body wrench.
 *
 * Corrected formulas (default):
 *   Tx   = sum_{i=0..3} t_i cos(theta_i) cos(psi_i) + sum_{j=4..7} t_j cos(psi_j)
 *   Ty   = sum_{i=0..3} t_i cos(theta_i) sin(psi_i) + sum_{j=4..7} t_j sin(psi_j)
 *   Tz   = sum_{i=0..3} t_i sin(theta_i)
 *   Tpsi = sum_{i=0..7} t_i (lx_i sin(psi_i) - ly_i cos(psi_i))
 * Roll and pitch torques are zero by construction in the reduced model.
 */
inline Wrench6 wrench_from_thrusts(const std::array<double, 8>& t,
                                   const ThrusterLayout& lay,
                                   WrenchFormula formula = WrenchFormula::Corrected) {
  Wrench6 w;
  for (int i = 0; i < 8; ++i) {
    const Thruster& th = lay.thrusters[i];
    const double cth = std::cos(th.theta), sth = std::sin(th.theta);
    const double cps = std::cos(th.psi), sps = std::sin(th.psi);
    if (i < 4) {
      w.Tx += t[i] * cth * cps;
      if (formula == WrenchFormula::Corrected) {
        w.Ty += t[i] * cth * sps;
        w.Tz += t[i] * sth;
      } else {
        w.Ty += t[i] * cth * cps;       // legacy: duplicates the surge term
        if (i >= 1) w.Tz += t[i] * sps; // legacy: i = 1..3 with sin(psi)
      }
    } else {
      w.Tx += t[i] * cps;
      w.Ty += t[i] * sps;
    }
    w.Tpsi += t[i] * (th.lx * sps - th.ly * cps);
  }
  return w;
}

// ============================================================================
// Command -> thrust lookup
// ============================================================================

/**
 * @brief Monotone command-to-thrust table with piecewise-linear interpolation.
 *
 * Commands must be strictly increasing and the curve must pass through
 * (0, 0).  Lookups beyond either end clamp to the end thrust.
 */
class ThrustLookup {
 public:
  /** @brief Build from (command, thrust) pairs. @throws ThrustTableError */
  explicit ThrustLookup(std::vector<std::pair<double, double>> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw ThrustTableError("thrust table is empty");
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (!(entries_[i].first > entries_[i - 1].first)) {
        throw ThrustTableError("thrust table commands must be strictly increasing");
      }
    }
    if (std::abs(lookup(0.0)) > 1e-12) {
      throw ThrustTableError("thrust table must map command 0 to 0 N");
    }
  }

  /** @brief Identity passthrough: commands are already newtons. */
  static ThrustLookup identity(double span = 1e6) {
    return ThrustLookup({{-span, -span}, {0.0, 0.0}, {span, span}});
  }

  /**
   * @brief Load from a two-column CSV `command,thrust_newtons` with a header
   *        row.  @throws ThrustTableError on I/O or format problems.
   */
  static ThrustLookup from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ThrustTableError("cannot open thrust table: " + path);
    std::string line;
    if (!std::getline(in, line)) {
      throw ThrustTableError("thrust table missing header row: " + path);
    }
    std::vector<std::pair<double, double>> entries;
    int lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string a, b;
      if (!std::getline(row, a, ',') || !std::getline(row, b)) {
        throw ThrustTableError(path + ":" + std::to_string(lineno) +
                               ": expected `command,thrust_newtons`");
      }
      try {
        entries.emplace_back(std::stod(a), std::stod(b));
      } catch (const std::exception&) {
        throw ThrustTableError(path + ":" + std::to_string(lineno) +
                               ": non-numeric entry");
      }
    }
    return ThrustLookup(std::move(entries));
  }

  /** @brief Interpolated thrust [N] for a command value; clamped at ends. */
  double lookup(double cmd) const {
    if (cmd <= entries_.front().first) return entries_.front().second;
    if (cmd >= entries_.back().first) return entries_.back().second;
    auto hi = std::upper_bound(
        entries_.begin(), entries_.end(), cmd,
        [](double c, const std::pair<double, double>& e) { return c < e.first; });
    auto lo = hi - 1;
    const double s = (cmd - lo->first) / (hi->first - lo->first);
    return lo->second + s * (hi->second - lo->second);
  }

  const std::vector<std::pair<double, double>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<double, double>> entries_;
};

/** @brief Free-function form of ThrustLookup::lookup. */
inline double thrust_lookup(double cmd, const ThrustLookup& table) {
  return table.lookup(cmd);
}

// ============================================================================
// Wrench -> thrust allocation
// ============================================================================

/**
 * @brief 4x8 allocation matrix mapping thrusts to (Tx, Ty, Tz, Tpsi).
 */
inline Eigen::Matrix<double, 4, 8> allocation_matrix(
    const ThrusterLayout& lay, WrenchFormula formula = WrenchFormula::Corrected) {
  Eigen::Matrix<double, 4, 8> B = Eigen::Matrix<double, 4, 8>::Zero();
  for (int i = 0; i < 8; ++i) {
    std::array<double, 8> unit{};
    unit[i] = 1.0;
    const Wrench6 w = wrench_from_thrusts(unit, lay, formula);
    B(0, i) = w.Tx;
    B(1, i) = w.Ty;
    B(2, i) = w.Tz;
    B(3, i) = w.Tpsi;
  }
  return B;
}

/**
 * @brief Minimum-norm thrusts realizing a desired (Tx, Ty, Tz, Tpsi) wrench.
 *
 * Solves t = B^T (B B^T)^{-1} tau over the four controlled axes.  An
 * optional symmetric clamp bounds each |t_i|; 0 disables clamping.
 * @throws AllocationRankError when B has rank < 4.
 */
inline std::array<double, 8> allocate(
    const Wrench6& desired, const ThrusterLayout& lay, double clamp = 0.0,
    WrenchFormula formula = WrenchFormula::Corrected) {
  const Eigen::Matrix<double, 4, 8> B = allocation_matrix(lay, formula);
  const Eigen::Matrix4d G = B * B.transpose();
  Eigen::FullPivLU<Eigen::Matrix4d> lu(G);
  if (!lu.isInvertible()) throw AllocationRankError();
  Eigen::Vector4d tau(desired.Tx, desired.Ty, desired.Tz, desired.Tpsi);
  Eigen::Matrix<double, 8, 1> t = B.transpose() * lu.solve(tau);
  std::array<double, 8> out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = t(i);
    if (clamp > 0.0) out[i] = std::clamp(out[i], -clamp, clamp);
  }
  return out;
}

}  // namespace auvkit
