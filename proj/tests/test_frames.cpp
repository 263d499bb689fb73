// Kinematic transform and angle-wrapping tests.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "auvkit/frames.hpp"

namespace {

using namespace auvkit;

constexpr double kPi = std::numbers::pi;

Pose6 attitude(double phi, double theta, double psi) {
  Pose6 p;
  p.phi = phi;
  p.theta = theta;
  p.psi = psi;
  return p;
}

Eigen::Matrix3d rotm(const Pose6& p) { return rotation(p.phi, p.theta, p.psi); }

Eigen::Matrix3d angm(const Pose6& p) { return angular_transform(p.phi, p.theta); }

Eigen::Matrix3d axis_rotation_z(double a) {
  Eigen::Matrix3d r;
  r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return r;
}

Eigen::Matrix3d axis_rotation_y(double a) {
  Eigen::Matrix3d r;
  r << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return r;
}

Eigen::Matrix3d axis_rotation_x(double a) {
  Eigen::Matrix3d r;
  r << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
  return r;
}

TEST(Rotation, IdentityAtZeroAttitude) {
  const Eigen::Matrix<double, 6, 6> J = build_transform(attitude(0, 0, 0));
  const Eigen::Matrix<double, 6, 6> I = Eigen::Matrix<double, 6, 6>::Identity();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) EXPECT_EQ(J(i, j), I(i, j));
  }
}

TEST(Rotation, MatchesComposedAxisRotations) {
  // Oracle: R = Rz(psi) * Ry(theta) * Rx(phi) from elementary matrices.
  const Pose6 p = attitude(0.1, 0.2, 0.3);
  const Eigen::Matrix3d R = rotm(p);
  const Eigen::Matrix3d expected =
      axis_rotation_z(0.3) * axis_rotation_y(0.2) * axis_rotation_x(0.1);
  EXPECT_LT((R - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Rotation, OrthonormalWithUnitDeterminant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> pitch(-1.45, 1.45);
  for (int k = 0; k < 200; ++k) {
    const Pose6 p = attitude(ang(rng), pitch(rng), ang(rng));
    const Eigen::Matrix3d R = rotm(p);
    EXPECT_LT((R.transpose() * R - Eigen::Matrix3d::Identity())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
  }
}

TEST(Rotation, BlockDiagonalStructure) {
  const Pose6 p = attitude(0.4, -0.7, 2.1);
  const Eigen::Matrix<double, 6, 6> J = build_transform(p);
  EXPECT_LT((J.block<3, 3>(0, 3)).cwiseAbs().maxCoeff(), 1e-300);
  EXPECT_LT((J.block<3, 3>(3, 0)).cwiseAbs().maxCoeff(), 1e-300);
  EXPECT_LT((J.block<3, 3>(0, 0) - rotm(p)).cwiseAbs().maxCoeff(), 1e-300);
  EXPECT_LT((J.block<3, 3>(3, 3) - angm(p)).cwiseAbs().maxCoeff(),
            1e-300);
}

TEST(AngularTransform, MatchesFiniteDifferenceOfRotation) {
  // Oracle: for body rates omega, R^T dR/dt must equal skew(omega) where
  // dTheta/dt = T(Theta) * omega.  Finite-difference R along that path.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ang(-1.0, 1.0);
  for (int k = 0; k < 25; ++k) {
    const double phi = ang(rng), theta = 0.9 * ang(rng), psi = ang(rng);
    const Eigen::Vector3d omega(ang(rng), ang(rng), ang(rng));
    const Pose6 p = attitude(phi, theta, psi);
    const Eigen::Vector3d thetaDot = angm(p) * omega;

    const double h = 1e-6;
    const Pose6 pp = attitude(phi + h * thetaDot(0), theta + h * thetaDot(1),
                              psi + h * thetaDot(2));
    const Pose6 pm = attitude(phi - h * thetaDot(0), theta - h * thetaDot(1),
                              psi - h * thetaDot(2));
    const Eigen::Matrix3d Rdot = (rotm(pp) - rotm(pm)) / (2.0 * h);
    const Eigen::Matrix3d S = rotm(p).transpose() * Rdot;

    Eigen::Matrix3d skew;
    skew << 0, -omega(2), omega(1), omega(2), 0, -omega(0), -omega(1), omega(0), 0;
    EXPECT_LT((S - skew).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(BodyToNed, PureHeaveAtZeroAttitude) {
  BodyVel6 nu;
  nu.w = 1.0;
  const Eigen::Matrix<double, 6, 1> etaDot = body_to_ned(attitude(0, 0, 0), nu);
  EXPECT_EQ(etaDot(0), 0.0);
  EXPECT_EQ(etaDot(1), 0.0);
  EXPECT_EQ(etaDot(2), 1.0);
  EXPECT_EQ(etaDot(3), 0.0);
  EXPECT_EQ(etaDot(4), 0.0);
  EXPECT_EQ(etaDot(5), 0.0);
}

TEST(BodyToNed, YawRatePassThroughAtZeroAttitude) {
  BodyVel6 nu;
  nu.r = 0.5;
  const Eigen::Matrix<double, 6, 1> etaDot = body_to_ned(attitude(0, 0, 0), nu);
  EXPECT_EQ(etaDot(5), 0.5);
  EXPECT_EQ(etaDot(0), 0.0);
  EXPECT_EQ(etaDot(2), 0.0);
}

TEST(BodyToNed, SurgeMapsEastAtQuarterTurn) {
  BodyVel6 nu;
  nu.u = 1.0;
  const Eigen::Matrix<double, 6, 1> etaDot =
      body_to_ned(attitude(0, 0, kPi / 2.0), nu);
  EXPECT_NEAR(etaDot(0), 0.0, 1e-12);
  EXPECT_NEAR(etaDot(1), 1.0, 1e-12);
  EXPECT_NEAR(etaDot(2), 0.0, 1e-12);
}

TEST(BodyToNed, DiagonalMotionAtYaw45) {
  BodyVel6 nu;
  nu.u = 1.0;
  nu.v = 1.0;
  const Eigen::Matrix<double, 6, 1> etaDot =
      body_to_ned(attitude(0, 0, kPi / 4.0), nu);
  EXPECT_NEAR(etaDot(0), 0.0, 1e-12);
  EXPECT_NEAR(etaDot(1), std::sqrt(2.0), 1e-12);
}

TEST(BodyToNed, LinearInBodyVelocity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  const Pose6 p = attitude(0.3, -0.5, 1.9);
  for (int k = 0; k < 100; ++k) {
    BodyVel6 a, b, sum;
    a.u = d(rng); a.v = d(rng); a.w = d(rng);
    a.p = d(rng); a.q = d(rng); a.r = d(rng);
    b.u = d(rng); b.v = d(rng); b.w = d(rng);
    b.p = d(rng); b.q = d(rng); b.r = d(rng);
    sum.u = a.u + b.u; sum.v = a.v + b.v; sum.w = a.w + b.w;
    sum.p = a.p + b.p; sum.q = a.q + b.q; sum.r = a.r + b.r;
    const Eigen::Matrix<double, 6, 1> lhs = body_to_ned(p, sum);
    const Eigen::Matrix<double, 6, 1> rhs = body_to_ned(p, a) + body_to_ned(p, b);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BodyToNed, InverseRecoversBodyVelocity) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::uniform_real_distribution<double> pitch(-1.3, 1.3);
  for (int k = 0; k < 100; ++k) {
    const Pose6 p = attitude(d(rng), pitch(rng), d(rng));
    Eigen::Matrix<double, 6, 1> nuVec;
    for (int i = 0; i < 6; ++i) nuVec(i) = d(rng);
    BodyVel6 nu;
    nu.u = nuVec(0); nu.v = nuVec(1); nu.w = nuVec(2);
    nu.p = nuVec(3); nu.q = nuVec(4); nu.r = nuVec(5);
    const Eigen::Matrix<double, 6, 1> etaDot = body_to_ned(p, nu);
    const Eigen::Matrix<double, 6, 1> back =
        build_transform(p).fullPivLu().solve(etaDot);
    EXPECT_LT((back - nuVec).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Singularity, VerticalPitchThrows) {
  BodyVel6 nu;
  nu.u = 1.0;
  EXPECT_THROW(build_transform(attitude(0, kPi / 2.0, 0)), SingularAttitudeError);
  EXPECT_THROW(body_to_ned(attitude(0, std::acos(1e-7), 0), nu),
               SingularAttitudeError);
  EXPECT_NO_THROW(build_transform(attitude(0, kPi / 2.0 - 0.01, 0)));
}

TEST(WrapAngle, Examples) {
  EXPECT_EQ(wrap_angle(0.0), 0.0);
  EXPECT_EQ(wrap_angle(2.0 * kPi), 0.0);
  EXPECT_NEAR(wrap_angle(-kPi / 2.0), 3.0 * kPi / 2.0, 1e-15);
  EXPECT_NEAR(wrap_angle(7.5), 7.5 - 2.0 * kPi, 1e-15);
  EXPECT_NEAR(wrap_angle(7.5), 1.21681, 1e-5);
  EXPECT_NEAR(wrap_angle(-0.1), 2.0 * kPi - 0.1, 1e-15);
}

TEST(WrapAngle, IdempotentAndInRange) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-50.0, 50.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = d(rng);
    const double w = wrap_angle(a);
    EXPECT_GE(w, 0.0);
    EXPECT_LT(w, 2.0 * kPi);
    EXPECT_EQ(wrap_angle(w), w);
    // The wrapped value differs from the input by a whole number of turns.
    const double turns = (a - w) / (2.0 * kPi);
    EXPECT_NEAR(turns, std::round(turns), 1e-9);
  }
}

TEST(WrapPi, RangeAndShortestForm) {
  EXPECT_EQ(wrap_pi(0.0), 0.0);
  EXPECT_NEAR(wrap_pi(kPi + 0.1), -kPi + 0.1, 1e-12);
  EXPECT_NEAR(wrap_pi(-kPi - 0.1), kPi - 0.1, 1e-12);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-50.0, 50.0);
  for (int k = 0; k < 1000; ++k) {
    const double w = wrap_pi(d(rng));
    EXPECT_GT(w, -kPi - 1e-15);
    EXPECT_LE(w, kPi);
  }
}

}  // namespace
