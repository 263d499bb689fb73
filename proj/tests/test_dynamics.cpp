// Force-term and acceleration-model tests for the 6-DoF and reduced 4-DoF
// vehicle models.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "auvkit/dynamics.hpp"
#include "auvkit/params.hpp"

namespace {

using namespace auvkit;

BodyVel6 vel6(double u, double v, double w, double p, double q, double r) {
  BodyVel6 nu;
  nu.u = u; nu.v = v; nu.w = w;
  nu.p = p; nu.q = q; nu.r = r;
  return nu;
}

Eigen::Matrix<double, 6, 1> to_vec(const BodyVel6& nu) {
  Eigen::Matrix<double, 6, 1> v;
  v << nu.u, nu.v, nu.w, nu.p, nu.q, nu.r;
  return v;
}

BodyVel6 random_vel(std::mt19937_64& rng, double lim = 2.0) {
  std::uniform_real_distribution<double> d(-lim, lim);
  return vel6(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
}

TEST(CoriolisRb, ZeroAtRestAndPureSurge) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Matrix<double, 6, 1> atRest =
      coriolis_rb(vel6(0, 0, 0, 0, 0, 0), prm);
  const Eigen::Matrix<double, 6, 1> surge =
      coriolis_rb(vel6(1.5, 0, 0, 0, 0, 0), prm);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(atRest(i), 0.0);
    EXPECT_EQ(surge(i), 0.0);
  }
}

TEST(CoriolisRb, SurgeSwayYawOracle) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Matrix<double, 6, 1> f =
      coriolis_rb(vel6(1, 2, 0, 0, 0, 0.5), prm);
  EXPECT_DOUBLE_EQ(f(0), -1863.0);  // m (q w - r v) = 1863 * (-1.0)
  EXPECT_DOUBLE_EQ(f(1), 931.5);    // m (r u - p w) = 1863 * 0.5
  EXPECT_DOUBLE_EQ(f(2), 0.0);
  EXPECT_DOUBLE_EQ(f(3), 0.0);
  EXPECT_DOUBLE_EQ(f(4), 0.0);
  EXPECT_DOUBLE_EQ(f(5), 0.0);
}

TEST(CoriolisAdded, ZeroAtRest) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Matrix<double, 6, 1> f =
      coriolis_added(vel6(0, 0, 0, 0, 0, 0), prm);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(f(i), 0.0);
}

TEST(CoriolisAdded, TranslationOnlyLeavesTranslationRowsZero) {
  const VehicleParams prm = rexrov_params();
  const AddedMass& a = prm.addedMass;
  const Eigen::Matrix<double, 6, 1> f =
      coriolis_added(vel6(1, 1, 1, 0, 0, 0), prm);
  EXPECT_EQ(f(0), 0.0);
  EXPECT_EQ(f(1), 0.0);
  EXPECT_EQ(f(2), 0.0);
  EXPECT_DOUBLE_EQ(f(3), a.Ydv - a.Zdw);
  EXPECT_DOUBLE_EQ(f(4), a.Zdw - a.Xdu);
  EXPECT_DOUBLE_EQ(f(5), a.Xdu - a.Ydv);
}

TEST(CoriolisAdded, SurgeYawSwayCouplingOracle) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Matrix<double, 6, 1> f =
      coriolis_added(vel6(0.3, 0, 0, 0, 0, 0.1), prm);
  // Sway row: Zdw w p - Xdu u r = -779.79 * 0.3 * 0.1.
  EXPECT_NEAR(f(1), -23.3937, 1e-9);
}

TEST(Coriolis, ZeroPowerProperty) {
  const VehicleParams prm = rexrov_params();
  std::mt19937_64 rng(101);
  for (int k = 0; k < 500; ++k) {
    const BodyVel6 nu = random_vel(rng);
    const Eigen::Matrix<double, 6, 1> v = to_vec(nu);
    const double normSq = v.squaredNorm();
    EXPECT_LE(std::abs(v.dot(coriolis_rb(nu, prm))), 1e-9 * normSq);
    EXPECT_LE(std::abs(v.dot(coriolis_added(nu, prm))), 1e-9 * normSq);
  }
}

TEST(Damping, ZeroAtRest) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Matrix<double, 6, 1> f = damping(vel6(0, 0, 0, 0, 0, 0), prm);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(f(i), 0.0);
}

TEST(Damping, SurgeOracle) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Matrix<double, 6, 1> f = damping(vel6(0.3, 0, 0, 0, 0, 0), prm);
  // (Xu + Xuu |u|) u = (-74.82 - 748.22 * 0.3) * 0.3
  EXPECT_NEAR(f(0), -89.7858, 1e-9);
  EXPECT_NEAR(f(0), -89.786, 5e-4);
}

TEST(Damping, DissipativeComponentwise) {
  const VehicleParams prm = rexrov_params();
  std::mt19937_64 rng(55);
  for (int k = 0; k < 1000; ++k) {
    const BodyVel6 nu = random_vel(rng);
    const Eigen::Matrix<double, 6, 1> f = damping(nu, prm);
    const Eigen::Matrix<double, 6, 1> v = to_vec(nu);
    for (int i = 0; i < 6; ++i) EXPECT_LE(f(i) * v(i), 0.0);
    EXPECT_LE(v.dot(f), 0.0);
  }
}

TEST(Damping, VanishesContinuouslyAtZero) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Matrix<double, 6, 1> f =
      damping(vel6(1e-9, -1e-9, 1e-9, 1e-9, -1e-9, 1e-9), prm);
  EXPECT_LT(f.cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Hydrostatics, NeutralAndCenteredIsZero) {
  VehicleParams prm = rexrov_params();
  prm.B = prm.W;
  prm.zB = 0.0;
  Pose6 pose;
  pose.phi = 0.4;
  pose.theta = -0.6;
  const Eigen::Matrix<double, 6, 1> g = hydrostatics(pose, prm);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(g(i), 0.0);
}

TEST(Hydrostatics, LevelBuoyantHeaveOracle) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Matrix<double, 6, 1> g = hydrostatics(Pose6{}, prm);
  EXPECT_EQ(g(0), 0.0);
  EXPECT_EQ(g(1), 0.0);
  // Net buoyancy acts up (-z): restoring heave term is B - W.
  EXPECT_NEAR(g(2), 117.9672, 1e-8);
  EXPECT_DOUBLE_EQ(g(2), prm.B - prm.W);
}

TEST(Hydrostatics, OffsetBuoyancyPitchMoment) {
  VehicleParams prm = rexrov_params();
  prm.W = 1000.0;
  prm.B = 1000.0;
  prm.zB = 0.5;
  Pose6 pose;
  pose.theta = std::numbers::pi / 6.0;
  const Eigen::Matrix<double, 6, 1> g = hydrostatics(pose, prm);
  EXPECT_EQ(g(0), 0.0);
  EXPECT_EQ(g(1), 0.0);
  EXPECT_EQ(g(2), 0.0);
  EXPECT_EQ(g(3), 0.0);
  EXPECT_NEAR(g(4), -250.0, 1e-9);  // -zB * B * sin(theta)
  EXPECT_EQ(g(5), 0.0);
}

TEST(AccelFull, NeutralRestStaysAtRest) {
  VehicleParams prm = rexrov_params();
  prm.B = prm.W;
  const BodyAcc6 acc = accel_full(vel6(0, 0, 0, 0, 0, 0), Pose6{}, Wrench6{}, prm);
  EXPECT_EQ(acc.du, 0.0);
  EXPECT_EQ(acc.dv, 0.0);
  EXPECT_EQ(acc.dw, 0.0);
  EXPECT_EQ(acc.dp, 0.0);
  EXPECT_EQ(acc.dq, 0.0);
  EXPECT_EQ(acc.dr, 0.0);
}

TEST(AccelFull, EquilibriumHeaveOracle) {
  const VehicleParams prm = rexrov_params();
  const BodyAcc6 acc = accel_full(vel6(0, 0, 0, 0, 0, 0), Pose6{}, Wrench6{}, prm);
  const double expected = -(prm.B - prm.W) / (prm.m + prm.addedMass.Zdw);
  EXPECT_NEAR(acc.dw, expected, 1e-15);
  EXPECT_NEAR(acc.dw, -0.021359, 1e-6);
  EXPECT_EQ(acc.du, 0.0);
  EXPECT_EQ(acc.dv, 0.0);
  EXPECT_EQ(acc.dr, 0.0);
}

TEST(AccelFull, SurgeThrustOracle) {
  const VehicleParams prm = rexrov_params();
  Wrench6 tau;
  tau.Tx = 100.0;
  const BodyAcc6 acc = accel_full(vel6(0, 0, 0, 0, 0, 0), Pose6{}, tau, prm);
  EXPECT_NEAR(acc.du, 100.0 / (prm.m + prm.addedMass.Xdu), 1e-15);
  EXPECT_NEAR(acc.du, 0.037838, 1e-6);
}

TEST(AccelFull, LinearInWrenchWithoutDampingAndGravity) {
  VehicleParams prm = rexrov_params();
  prm.B = prm.W;
  prm.linDamp = {};
  prm.quadDamp = {};
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> d(-2000.0, 2000.0);
  const BodyVel6 rest = vel6(0, 0, 0, 0, 0, 0);
  for (int k = 0; k < 50; ++k) {
    Wrench6 a, b, sum;
    a.Tx = d(rng); a.Ty = d(rng); a.Tz = d(rng);
    a.Tphi = d(rng); a.Ttheta = d(rng); a.Tpsi = d(rng);
    b.Tx = d(rng); b.Ty = d(rng); b.Tz = d(rng);
    b.Tphi = d(rng); b.Ttheta = d(rng); b.Tpsi = d(rng);
    sum.Tx = a.Tx + b.Tx; sum.Ty = a.Ty + b.Ty; sum.Tz = a.Tz + b.Tz;
    sum.Tphi = a.Tphi + b.Tphi; sum.Ttheta = a.Ttheta + b.Ttheta;
    sum.Tpsi = a.Tpsi + b.Tpsi;
    const BodyAcc6 fa = accel_full(rest, Pose6{}, a, prm);
    const BodyAcc6 fb = accel_full(rest, Pose6{}, b, prm);
    const BodyAcc6 fs = accel_full(rest, Pose6{}, sum, prm);
    EXPECT_NEAR(fs.du, fa.du + fb.du, 1e-12);
    EXPECT_NEAR(fs.dv, fa.dv + fb.dv, 1e-12);
    EXPECT_NEAR(fs.dw, fa.dw + fb.dw, 1e-12);
    EXPECT_NEAR(fs.dp, fa.dp + fb.dp, 1e-12);
    EXPECT_NEAR(fs.dq, fa.dq + fb.dq, 1e-12);
    EXPECT_NEAR(fs.dr, fa.dr + fb.dr, 1e-12);
  }
}

TEST(AccelReduced, EquilibriumHeaveOracle) {
  const VehicleParams prm = rexrov_params();
  const Eigen::Vector4d acc =
      accel_reduced(vel6(0, 0, 0, 0, 0, 0), Wrench6{}, prm);
  EXPECT_NEAR(acc(2), -(prm.B - prm.W) / (prm.m + prm.addedMass.Zdw), 1e-15);
  EXPECT_NEAR(acc(2), -0.021359, 1e-6);
  EXPECT_EQ(acc(0), 0.0);
  EXPECT_EQ(acc(1), 0.0);
  EXPECT_EQ(acc(3), 0.0);
}

TEST(AccelReduced, ExactlyMatchesFullModelOnPlanarStates) {
  const VehicleParams prm = rexrov_params();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> v(-2.0, 2.0);
  std::uniform_real_distribution<double> f(-2000.0, 2000.0);
  for (int k = 0; k < 1000; ++k) {
    const BodyVel6 nu = vel6(v(rng), v(rng), v(rng), 0.0, 0.0, v(rng));
    Wrench6 tau;
    tau.Tx = f(rng);
    tau.Ty = f(rng);
    tau.Tz = f(rng);
    tau.Tpsi = f(rng);
    const BodyAcc6 full = accel_full(nu, Pose6{}, tau, prm);
    const Eigen::Vector4d red = accel_reduced(nu, tau, prm);
    // Bitwise agreement: the reduced model is the full model's (u, v, w, r)
    // rows with the roll/pitch terms dropped as exact signed zeros.
    EXPECT_EQ(full.du, red(0));
    EXPECT_EQ(full.dv, red(1));
    EXPECT_EQ(full.dw, red(2));
    EXPECT_EQ(full.dr, red(3));
  }
}

TEST(AccelReduced, DampingOpposesSteadySurge) {
  const VehicleParams prm = rexrov_params();
  Wrench6 tau;
  tau.Tz = prm.B - prm.W;  // hold depth
  const Eigen::Vector4d acc = accel_reduced(vel6(0.3, 0, 0, 0, 0, 0), tau, prm);
  EXPECT_LT(acc(0), 0.0);  // no surge thrust: drag decelerates
  EXPECT_NEAR(acc(2), 0.0, 1e-15);
}

TEST(Params, RexrovValues) {
  const VehicleParams prm = rexrov_params();
  EXPECT_DOUBLE_EQ(prm.m, 1863.0);
  EXPECT_DOUBLE_EQ(prm.Izz, 691.23);
  EXPECT_NEAR(prm.W, 18276.03, 1e-9);
  EXPECT_DOUBLE_EQ(prm.B, 18393.9972);
  EXPECT_DOUBLE_EQ(prm.addedMass.Xdu, 779.79);
  EXPECT_DOUBLE_EQ(prm.addedMass.Zdw, 3659.9);
  EXPECT_DOUBLE_EQ(prm.addedMass.Ndr, 224.32);
  EXPECT_DOUBLE_EQ(prm.linDamp.Xu, -74.82);
  EXPECT_DOUBLE_EQ(prm.quadDamp.Nrr, -523.27);
  EXPECT_TRUE(check_params(prm).empty());
}

TEST(Params, ValidationCatchesBadValues) {
  VehicleParams prm = rexrov_params();
  prm.m = -5.0;
  EXPECT_FALSE(check_params(prm).empty());
  EXPECT_THROW(validate_params(prm), ParamValidationError);
}

}  // namespace
