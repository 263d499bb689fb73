#pragma once

// ============================================================================
// params.hpp
//
// Physical parameters and hydrodynamic coefficients of the simulated vehicle.
// Defaults describe the RexROV work-class ROV.  Damping coefficients are
// dissipative (<= 0); added-mass entries are stored as positive magnitudes
// and enter the equations of motion as effective-mass increases
// (m + X_du etc.), which keeps every effective mass positive definite.
// ============================================================================

#include <stdexcept>
#include <string>
#include <vector>

namespace auvkit {

/** @brief Diagonal added-mass magnitudes (positive). */
struct AddedMass {
  double Xdu = 0.0;  ///< surge added mass [kg]
  double Ydv = 0.0;  ///< sway added mass [kg]
  double Zdw = 0.0;  ///< heave added mass [kg]
  double Kdp = 0.0;  ///< roll added inertia [kg m^2]
  double Mdq = 0.0;  ///< pitch added inertia [kg m^2]
  double Ndr = 0.0;  ///< yaw added inertia [kg m^2]
};

/** @brief Diagonal linear damping coefficients (each <= 0). */
struct LinearDamping {
  double Xu = 0.0;
  double Yv = 0.0;
  double Zw = 0.0;
  double Kp = 0.0;
  double Mq = 0.0;
  double Nr = 0.0;
};

/** @brief Diagonal quadratic damping coefficients (each <= 0). */
struct QuadraticDamping {
  double Xuu = 0.0;
  double Yvv = 0.0;
  double Zww = 0.0;
  double Kpp = 0.0;
  double Mqq = 0.0;
  double Nrr = 0.0;
};

/** @brief Rigid-body, hydrostatic, and hydrodynamic vehicle parameters. */
struct VehicleParams {
  double m = 0.0;    ///< mass [kg]
  double V = 0.0;    ///< displaced volume [m^3] (informational)
  double B = 0.0;    ///< buoyancy force [N]
  double W = 0.0;    ///< weight [N], = m * g
  double g = 9.81;   ///< gravitational acceleration [m/s^2]
  double rho = 1000.0;  ///< water density [kg/m^3]
  double Ixx = 0.0;  ///< roll inertia [kg m^2]
  double Iyy = 0.0;  ///< pitch inertia [kg m^2]
  double Izz = 0.0;  ///< yaw inertia [kg m^2]
  double zB = 0.0;   ///< center-of-buoyancy offset from CG along body z [m]
  AddedMass addedMass;
  LinearDamping linDamp;
  QuadraticDamping quadDamp;
};

/** @brief Validation failure listing every violated parameter constraint. */
class ParamValidationError : public std::invalid_argument {
 public:
  explicit ParamValidationError(const std::vector<std::string>& problems)
      : std::invalid_argument(join(problems)) {}

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string msg = "invalid vehicle parameters:";
    for (const auto& p : problems) msg += "\n  - " + p;
    return msg;
  }
};

/** @brief Collect all constraint violations; empty result means valid. */
inline std::vector<std::string> check_params(const VehicleParams& p) {
  std::vector<std::string> bad;
  auto require = [&bad](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  require(p.m > 0.0, "m must be > 0");
  require(p.m + p.addedMass.Xdu > 0.0, "effective surge mass m + Xdu must be > 0");
  require(p.m + p.addedMass.Ydv > 0.0, "effective sway mass m + Ydv must be > 0");
  require(p.m + p.addedMass.Zdw > 0.0, "effective heave mass m + Zdw must be > 0");
  require(p.Ixx + p.addedMass.Kdp > 0.0, "effective roll inertia Ixx + Kdp must be > 0");
  require(p.Iyy + p.addedMass.Mdq > 0.0, "effective pitch inertia Iyy + Mdq must be > 0");
  require(p.Izz + p.addedMass.Ndr > 0.0, "effective yaw inertia Izz + Ndr must be > 0");
  require(p.B >= 0.0, "B must be >= 0");
  require(p.W >= 0.0, "W must be >= 0");
  require(p.linDamp.Xu <= 0.0, "Xu must be <= 0 (dissipative)");
  require(p.linDamp.Yv <= 0.0, "Yv must be <= 0 (dissipative)");
  require(p.linDamp.Zw <= 0.0, "Zw must be <= 0 (dissipative)");
  require(p.linDamp.Kp <= 0.0, "Kp must be <= 0 (dissipative)");
  require(p.linDamp.Mq <= 0.0, "Mq must be <= 0 (dissipative)");
  require(p.linDamp.Nr <= 0.0, "Nr must be <= 0 (dissipative)");
  require(p.quadDamp.Xuu <= 0.0, "Xuu must be <= 0 (dissipative)");
  require(p.quadDamp.Yvv <= 0.0, "Yvv must be <= 0 (dissipative)");
  require(p.quadDamp.Zww <= 0.0, "Zww must be <= 0 (dissipative)");
  require(p.quadDamp.Kpp <= 0.0, "Kpp must be <= 0 (dissipative)");
  require(p.quadDamp.Mqq <= 0.0, "Mqq must be <= 0 (dissipative)");
  require(p.quadDamp.Nrr <= 0.0, "Nrr must be <= 0 (dissipative)");
  return bad;
}

/** @brief Throwing variant of check_params. */
inline void validate_params(const VehicleParams& p) {
  auto bad = check_params(p);
  if (!bad.empty()) throw ParamValidationError(bad);
}

/**
 * @brief Default RexROV parameter set.
 *
 * Roll and pitch rigid-body inertias are not published for this vehicle;
 * they default to the yaw inertia (they never enter the reduced model).
 * Buoyancy is taken as the published force value rather than recomputed
 * from rho * g * V.  The CB-CG offset defaults to zero, which removes the
 * hydrostatic restoring moments of an already self-stable hull.
 */
inline VehicleParams rexrov_params() {
  VehicleParams p;
  p.m = 1863.0;
  p.V = 1.838;
  p.B = 18393.9972;
  p.g = 9.81;
  p.W = p.m * p.g;  // 18276.03 N
  p.rho = 1000.0;
  p.Izz = 691.23;
  p.Ixx = p.Izz;
  p.Iyy = p.Izz;
  p.zB = 0.0;
  p.addedMass = {779.79, 1222.0, 3659.9, 534.9, 842.69, 224.32};
  p.linDamp = {-74.82, -69.48, -782.4, -268.8, -309.77, -105.0};
  p.quadDamp = {-748.22, -992.53, -1821.01, -672.0, -774.44, -523.27};
  return p;
}

}  // namespace auvkit
