#include <gtest/gtest.h>

#include <cmath>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/dynamics.hpp"
#include "nhgeo/systems.hpp"

namespace nhgeo::dynamics {
namespace {

using chaplygin::BundleSystem;

BundleSystem particle() { return systems::build({systems::kParticle, {}, {}}); }
BundleSystem disk(double r = 1.0) { return systems::build({systems::kVerticalDisk, {{"R", r}}, {}}); }

// Euclidean plane with the fiber velocity frozen: (x | z), zdot = 0.
BundleSystem frozen_fiber() {
  BundleSystem::Definition s;
  s.name = "frozen";
  s.n = 2;
  s.m = 1;
  s.metric = geometry::MetricField(2, [](geometry::Point) { return DenseMatrix::identity(2); });
  s.constraints =
      geometry::Distribution::from_kernel(2, 1, [](geometry::Point) { return DenseMatrix{{0, 1}}; });
  s.section_fiber = {0.0};
  s.reference_base = {0.0};
  s.sample_box = {{-1, -1}, {1, 1}};
  s.trajectory_box = s.sample_box;
  return BundleSystem(std::move(s));
}

numeric::OdeStepper step(double dt) {
  numeric::OdeStepper st;
  st.step = dt;
  return st;
}

TEST(LdaRhs, ParticleAtYOne) {
  const auto r = lda_rhs(particle(), Vector{0.2, 1, -0.3}, Vector{1, 1, 1});
  EXPECT_NEAR(r.acceleration[0], -0.5, 1e-13);
  EXPECT_NEAR(r.acceleration[1], 0.0, 1e-13);
  EXPECT_NEAR(r.acceleration[2], 0.5, 1e-13);
  ASSERT_EQ(r.multipliers.size(), 1u);
  // zddot - y xddot - ydot xdot = 0 along the solution.
  EXPECT_NEAR(r.acceleration[2] - 1.0 * r.acceleration[0] - 1.0, 0.0, 1e-13);
  EXPECT_LT(r.constraint_residual, 1e-12);
}

TEST(LdaRhs, DiskRestrictedEquations) {
  // (theta, varphi, x, y) with varphi = 0, thetadot = varphidot = 1, xdot = R.
  const auto r = lda_rhs(disk(), Vector{0.4, 0, 1, 2}, Vector{1, 1, 1, 0});
  EXPECT_NEAR(r.acceleration[0], 0.0, 1e-13);
  EXPECT_NEAR(r.acceleration[1], 0.0, 1e-13);
  EXPECT_NEAR(r.acceleration[2], 0.0, 1e-13);
  EXPECT_NEAR(r.acceleration[3], 1.0, 1e-13);
  EXPECT_EQ(r.multipliers.size(), 2u);
}

TEST(LdaRhs, FlatFrozenFiberHasNoAcceleration) {
  const auto r = lda_rhs(frozen_fiber(), Vector{0.3, 0.1}, Vector{2.0, 0.0});
  EXPECT_NEAR(r.acceleration[0], 0.0, 1e-15);
  EXPECT_NEAR(r.acceleration[1], 0.0, 1e-15);
}

TEST(AdmissibleVelocity, RejectsLargeViolation) {
  std::vector<std::string> warnings;
  try {
    admissible_velocity(particle(), Vector{0, 0, 0}, Vector{1, 1, 1}, &warnings);
    FAIL() << "expected ConstraintViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::constraint_violated);
  }
}

TEST(AdmissibleVelocity, KeepsTruncationLevelViolation) {
  std::vector<std::string> warnings;
  const Vector v = admissible_velocity(particle(), Vector{0, 1, 0}, Vector{1, 0, 1 + 1e-9}, &warnings);
  EXPECT_EQ(v[2], 1 + 1e-9);
  EXPECT_TRUE(warnings.empty());
}

TEST(AdmissibleVelocity, ProjectsSmallViolationWithWarning) {
  std::vector<std::string> warnings;
  const Vector v = admissible_velocity(particle(), Vector{0, 1, 0}, Vector{1, 0, 1 + 1e-7}, &warnings);
  EXPECT_LT(particle().constraints().violation(Vector{0, 1, 0}, v), 1e-15);
  EXPECT_FALSE(warnings.empty());
}

TEST(IntegrateNonholonomic, DiskBaseAnglesAffine) {
  const auto sys = disk(1.3);
  const double phi0 = 0.4;
  const Vector v0{0.8, -0.6, 1.3 * 0.8 * std::cos(phi0), 1.3 * 0.8 * std::sin(phi0)};
  const auto traj = integrate_nonholonomic(sys, Vector{0.1, phi0, 0, 0}, v0, 10.0, step(1e-3));
  for (std::size_t k = 0; k < traj.size(); k += 97) {
    const double t = traj.times[k];
    EXPECT_NEAR(traj.points[k][0], 0.1 + 0.8 * t, 1e-10);
    EXPECT_NEAR(traj.points[k][1], phi0 - 0.6 * t, 1e-10);
  }
  EXPECT_LT(max_constraint_violation(sys, traj), 1e-8);
  EXPECT_LT(max_relative_energy_drift(sys.metric(), nullptr, traj), 1e-8);
}

TEST(IntegrateNonholonomic, ParticleYLinear) {
  const auto traj = integrate_nonholonomic(particle(), Vector{0, 0, 0}, Vector{1, 1, 0}, 3.0, step(1e-3));
  for (std::size_t k = 0; k < traj.size(); k += 50) EXPECT_NEAR(traj.points[k][1], traj.times[k], 1e-12);
  EXPECT_DOUBLE_EQ(traj.times.back(), 3.0);
}

TEST(IntegrateNonholonomic, AtRestStaysPut) {
  const auto traj = integrate_nonholonomic(particle(), Vector{0.5, 1, 2}, Vector{0, 0, 0}, 1.0, step(0.1));
  for (const auto& p : traj.points) EXPECT_EQ(p, (Vector{0.5, 1, 2}));
}

TEST(IntegrateGeodesic, EuclideanStraightLine) {
  const geometry::MetricField g(2, [](geometry::Point) { return DenseMatrix::identity(2); });
  const auto traj = integrate_geodesic(g, Vector{1, 2}, Vector{0.5, -1}, 2.0, step(0.01));
  for (std::size_t k = 0; k < traj.size(); ++k) {
    EXPECT_NEAR(traj.points[k][0], 1 + 0.5 * traj.times[k], 1e-13);
    EXPECT_NEAR(traj.points[k][1], 2 - traj.times[k], 1e-13);
  }
}

TEST(IntegrateGeodesic, DiskPrincipalWithAdmissibleData) {
  const auto sys = disk();
  const auto h = chaplygin::principal_metric(sys);
  const double dt = 1e-3;
  const auto traj = integrate_geodesic(h, Vector{0, 0, 0, 0}, Vector{1, 1, 1, 0}, 3.0, step(dt));
  for (std::size_t k = 1; k + 1 < traj.size(); k += 101) {
    const double t = traj.times[k];
    EXPECT_NEAR(traj.points[k][0], t, 1e-9);
    EXPECT_NEAR(traj.points[k][1], t, 1e-9);
    const double xddot = (traj.velocities[k + 1][2] - traj.velocities[k - 1][2]) / (2 * dt);
    const double phi = traj.points[k][1];
    EXPECT_NEAR(xddot, -std::sin(phi), 1e-6);
  }
}

TEST(IntegrateMechanical, EnergyConserved) {
  const auto sys = systems::build({systems::kParticle, {}, {systems::PotentialKind::quadratic}});
  const auto h = chaplygin::principal_metric(sys);
  const auto v = sys.potential_on_total();
  ASSERT_TRUE(v.has_value());
  const auto traj = integrate_mechanical(h, &*v, Vector{0, 0.5, 0}, Vector{1, 0.3, 0.5}, 5.0, step(1e-3));
  EXPECT_LT(max_relative_energy_drift(h, &*v, traj), 1e-8);
}

TEST(TimeMap, DiskIsIdentity) {
  const auto sys = disk();
  const auto traj = integrate_nonholonomic(sys, Vector{0, 0, 0, 0}, Vector{1, 1, 1, 0}, 2.0, step(1e-2));
  const auto tm = time_map(sys, traj);
  EXPECT_TRUE(tm.strictly_increasing());
  for (std::size_t k = 0; k < tm.t.size(); ++k) EXPECT_NEAR(tm.tau[k], tm.t[k], 1e-12);
}

TEST(TimeMap, ParticleIsAsinh) {
  const auto sys = particle();
  const auto traj = integrate_nonholonomic(sys, Vector{0, 0, 0}, Vector{0, 1, 0}, 1.0, step(1e-2));
  const auto tm = time_map(sys, traj);
  EXPECT_EQ(tm.tau.front(), 0.0);
  EXPECT_TRUE(tm.strictly_increasing());
  EXPECT_NEAR(tm.tau.back(), std::asinh(1.0), 1e-9);
  for (std::size_t k = 0; k < tm.t.size(); ++k) EXPECT_NEAR(tm.tau[k], std::asinh(tm.t[k]), 1e-9);
}

}  // namespace
}  // namespace nhgeo::dynamics
