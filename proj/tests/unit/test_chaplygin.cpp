#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/systems.hpp"

namespace nhgeo::chaplygin {
namespace {

using systems::build;
constexpr double kPi = std::numbers::pi;

BundleSystem disk(double m = 1, double r = 1, double i = 1, double j = 1) {
  return build({systems::kVerticalDisk, {{"m", m}, {"R", r}, {"I", i}, {"J", j}}, {}});
}
BundleSystem particle() { return build({systems::kParticle, {}, {}}); }
BundleSystem veselova() { return build({systems::kVeselova, {}, {}}); }

// Third row of Rz(alpha) Rx(beta) Rz(gamma), computed by explicit products.
std::array<double, 3> body_vertical(double beta, double gamma) {
  using M = std::array<std::array<double, 3>, 3>;
  auto mul = [](const M& a, const M& b) {
    M c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  const M rx{{{1, 0, 0}, {0, std::cos(beta), -std::sin(beta)}, {0, std::sin(beta), std::cos(beta)}}};
  const M rz{{{std::cos(gamma), -std::sin(gamma), 0}, {std::sin(gamma), std::cos(gamma), 0}, {0, 0, 1}}};
  const M r = mul(rx, rz);
  return r[2];
}

double veselova_phi(double beta, double gamma) {
  const auto g = body_vertical(beta, gamma);
  // A for I = diag(1, 2, 3): sqrt(I2 I3 / I1), sqrt(I1 I3 / I2), sqrt(I1 I2 / I3).
  const double a[3] = {std::sqrt(6.0), std::sqrt(1.5), std::sqrt(2.0 / 3.0)};
  return -0.5 * std::log(a[0] * g[0] * g[0] + a[1] * g[1] * g[1] + a[2] * g[2] * g[2]);
}

TEST(HorizontalLift, DiskAtQuarterTurn) {
  const auto sys = disk(1, 1.7);
  const Vector l = horizontal_lift(sys, Vector{0.3, kPi / 2, 0.1, -0.4}, Vector{1, 0});
  EXPECT_NEAR(l[0], 1, 1e-15);
  EXPECT_NEAR(l[1], 0, 1e-15);
  EXPECT_NEAR(l[2], 0, 1e-15);
  EXPECT_NEAR(l[3], 1.7, 1e-15);
}

TEST(HorizontalLift, ParticleAtYTwo) {
  const Vector l = horizontal_lift(particle(), Vector{0.5, 2, 1}, Vector{1, 0});
  EXPECT_EQ(l, (Vector{1, 0, 2}));
}

TEST(HorizontalLift, ZeroMapsToZero) {
  const Vector l = horizontal_lift(veselova(), Vector{1.2, 0.3, -0.5}, Vector{0, 0});
  EXPECT_EQ(max_abs(l), 0.0);
}

TEST(HorizontalLift, SatisfiesConstraintAndProjects) {
  const auto sys = veselova();
  const Vector q{1.0, 0.4, 2.0};
  const Vector w{0.7, -1.3};
  const Vector l = horizontal_lift(sys, q, w);
  EXPECT_LT(sys.constraints().violation(q, l), 1e-14);
  EXPECT_EQ(l[0], w[0]);
  EXPECT_EQ(l[1], w[1]);
}

TEST(ReducedMetric, Disk) {
  const DenseMatrix g = reduced_metric(disk(2, 1.5, 0.7, 0.3), Vector{0.4, -1.0});
  EXPECT_NEAR(g(0, 0), 0.7 + 2 * 1.5 * 1.5, 1e-14);
  EXPECT_NEAR(g(1, 1), 0.3, 1e-14);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-14);
  EXPECT_NEAR(g(1, 0), 0.0, 1e-14);
}

TEST(ReducedMetric, Particle) {
  const DenseMatrix g = reduced_metric(particle(), Vector{-0.3, 1.4});
  EXPECT_NEAR(g(0, 0), 1 + 1.4 * 1.4, 1e-14);
  EXPECT_NEAR(g(1, 1), 1.0, 1e-14);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-14);
}

TEST(ReducedMetric, VeselovaIndependentOfFiber) {
  const auto sys = veselova();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    Vector q = sys.sample_box().sample(rng);
    const DenseMatrix a = reduced_metric_at(sys, q);
    q[2] += 1.3;
    const DenseMatrix b = reduced_metric_at(sys, q);
    EXPECT_LT(max_abs(a - b), 1e-10);
  }
}

TEST(GyroscopicTensor, DiskVanishes) {
  const auto c = gyroscopic_tensor(disk(), Vector{0.3, 1.1});
  for (double x : c.coeff) EXPECT_NEAR(x, 0.0, 1e-10);
}

TEST(GyroscopicTensor, ParticleAtYOne) {
  const auto c = gyroscopic_tensor(particle(), Vector{0.2, 1.0});
  EXPECT_NEAR(c(0, 0, 1), -0.5, 1e-9);
  EXPECT_NEAR(c(1, 0, 1), 0.0, 1e-9);
}

TEST(GyroscopicTensor, Antisymmetric) {
  for (const auto& sys : {disk(), particle(), veselova()}) {
    std::mt19937_64 rng(3);
    const Vector q = sys.sample_box().sample(rng);
    const auto c = gyroscopic_tensor_at(sys, q);
    EXPECT_LT(c.antisymmetry_defect(), 1e-12) << sys.name();
  }
}

TEST(RecoverDphi, ParticleAtYOne) {
  const auto d = recover_dphi(gyroscopic_tensor(particle(), Vector{0.0, 1.0}));
  EXPECT_NEAR(d.dphi[0], 0.0, 1e-9);
  EXPECT_NEAR(d.dphi[1], -0.5, 1e-9);
  EXPECT_LE(d.residual, 1e-8);
}

TEST(RecoverDphi, DiskIsZero) {
  const auto d = recover_dphi(gyroscopic_tensor(disk(), Vector{-2.0, 0.5}));
  EXPECT_NEAR(d.dphi[0], 0.0, 1e-10);
  EXPECT_NEAR(d.dphi[1], 0.0, 1e-10);
  EXPECT_EQ(d.residual, 0.0);
}

TEST(RecoverDphi, VeselovaMatchesClosedForm) {
  const auto sys = veselova();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const Vector q = sys.sample_box().sample(rng);
    const Vector qbar{q[0], q[1]};
    const auto d = recover_dphi(gyroscopic_tensor(sys, qbar));
    EXPECT_LE(d.residual, 1e-6);
    const double h = 1e-5;
    const double db = (veselova_phi(q[0] + h, q[1]) - veselova_phi(q[0] - h, q[1])) / (2 * h);
    const double dg = (veselova_phi(q[0], q[1] + h) - veselova_phi(q[0], q[1] - h)) / (2 * h);
    EXPECT_NEAR(d.dphi[0], db, 1e-7);
    EXPECT_NEAR(d.dphi[1], dg, 1e-7);
  }
}

TEST(RecoverDphi, HandBuiltPhiSimplePattern) {
  // C^c_ab = d_b phi delta^c_a - d_a phi delta^c_b with dphi = (0.3, -0.2, 0.5).
  const Vector dphi{0.3, -0.2, 0.5};
  GyroscopicField c{Vector(3, 0.0), 3, std::vector<double>(27, 0.0)};
  for (std::size_t cc = 0; cc < 3; ++cc)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        c(cc, a, b) = (cc == a ? dphi[b] : 0.0) - (cc == b ? dphi[a] : 0.0);
  const auto d = recover_dphi(c);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(d.dphi[i], dphi[i], 1e-15);
  EXPECT_LT(d.residual, 1e-15);
}

TEST(RecoverDphi, NotPhiSimpleThrows) {
  GyroscopicField c{Vector(3, 0.0), 3, std::vector<double>(27, 0.0)};
  c(2, 0, 1) = 1.0;
  c(2, 1, 0) = -1.0;
  try {
    recover_dphi(c);
    FAIL() << "expected NotPhiSimple";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_phi_simple);
  }
}

TEST(RecoverPhi, ParticleLineIntegral) {
  PhiOptions opt;
  opt.source = PhiSource::recovered;
  EXPECT_NEAR(recover_phi(particle(), Vector{0, 0}, Vector{0, 1}, opt), -0.5 * std::log(2.0), 1e-7);
  // Pinned to the attached closed form at the basepoint.
  EXPECT_DOUBLE_EQ(recover_phi(particle(), Vector{0.4, -1.2}, Vector{0.4, -1.2}, opt),
                   -0.5 * std::log(1 + 1.44));
}

TEST(RecoverPhi, DiskIsZero) {
  PhiOptions opt;
  opt.source = PhiSource::recovered;
  EXPECT_NEAR(recover_phi(disk(), Vector{0, 0}, Vector{2.0, -1.5}, opt), 0.0, 1e-9);
}

TEST(RecoverPhi, VeselovaDiffersFromClosedFormByConstant) {
  const auto sys = veselova();
  PhiOptions opt;
  opt.source = PhiSource::recovered;
  const Vector ref = sys.reference_base();
  std::mt19937_64 rng(9);
  for (int k = 0; k < 5; ++k) {
    const Vector q = sys.sample_box().sample(rng);
    const double rec = recover_phi(sys, ref, Vector{q[0], q[1]}, opt);
    // Line integral from ref plus the pin phi(ref).
    EXPECT_NEAR(rec, veselova_phi(q[0], q[1]), 1e-6);
  }
}

TEST(CanonicalMetric, Particle) {
  const auto gcan = canonical_metric(particle());
  const DenseMatrix g = gcan(Vector{1.0, 2.0});
  EXPECT_NEAR(g(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(g(1, 1), 0.2, 1e-14);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-14);
}

TEST(CanonicalMetric, DiskEqualsReduced) {
  const auto sys = disk(2, 1.5, 0.7, 0.3);
  const Vector qbar{0.4, 2.2};
  EXPECT_LT(max_abs(canonical_metric(sys)(qbar) - reduced_metric(sys, qbar)), 1e-14);
}

TEST(CanonicalMetric, VeselovaConformalFactor) {
  const auto sys = veselova();
  const auto gcan = canonical_metric(sys);
  const Vector qbar{1.1, -0.7};
  const double factor = std::exp(2 * veselova_phi(qbar[0], qbar[1]));
  EXPECT_LT(max_abs(gcan(qbar) - reduced_metric(sys, qbar) * factor), 1e-12);
}

TEST(PrincipalMetric, DiskClosedForm) {
  const double m = 2, r = 1.5, i = 0.7, j = 0.3;
  const auto h = principal_metric(disk(m, r, i, j));
  for (double phi : {0.0, kPi / 3, 2.0}) {
    const DenseMatrix hq = h(Vector{0.5, phi, 0.1, -0.2});
    // (theta, varphi, x, y)
    EXPECT_NEAR(hq(0, 0), i + 2 * m * r * r, 1e-12);
    EXPECT_NEAR(hq(1, 1), j, 1e-12);
    EXPECT_NEAR(hq(2, 2), m, 1e-12);
    EXPECT_NEAR(hq(3, 3), m, 1e-12);
    EXPECT_NEAR(hq(0, 2), -m * r * std::cos(phi), 1e-12);
    EXPECT_NEAR(hq(0, 3), -m * r * std::sin(phi), 1e-12);
    EXPECT_NEAR(hq(1, 2), 0, 1e-12);
    EXPECT_NEAR(hq(1, 3), 0, 1e-12);
    EXPECT_NEAR(hq(2, 3), 0, 1e-12);
    EXPECT_EQ(asymmetry(hq), 0.0);
  }
}

TEST(PrincipalMetric, DiskAtThirdTurn) {
  const auto h = principal_metric(disk());
  EXPECT_NEAR(h(Vector{0, kPi / 3, 0, 0})(2, 0), -0.5, 1e-12);
}

TEST(PrincipalMetric, ParticleAtYOneAndTwo) {
  const auto h = principal_metric(particle());
  const DenseMatrix one{{2, 0, -1}, {0, 0.5, 0}, {-1, 0, 1}};
  const DenseMatrix two{{5, 0, -2}, {0, 0.2, 0}, {-2, 0, 1}};
  EXPECT_LT(max_abs(h(Vector{0.3, 1, -0.5}) - one), 1e-12);
  EXPECT_LT(max_abs(h(Vector{-1.0, 2, 0.7}) - two), 1e-12);
}

TEST(PrincipalMetric, FiniteDifferenceModeAgreesOnValues) {
  const auto sys = veselova();
  const auto a = principal_metric(sys, {}, geometry::DiffMode::dual);
  const auto b = principal_metric(sys, {}, geometry::DiffMode::finite_difference);
  EXPECT_EQ(b.mode(), geometry::DiffMode::finite_difference);
  const Vector q{1.3, 0.2, -0.9};
  EXPECT_LT(max_abs(a(q) - b(q)), 1e-12);
  for (std::size_t axis = 0; axis < 3; ++axis)
    EXPECT_LT(max_abs(a.partial(q, axis) - b.partial(q, axis)), 1e-8);
}

TEST(PrincipalMetric, PositiveDefiniteOnRandomVectors) {
  for (const auto& sys : {disk(), particle(), veselova()}) {
    const auto h = principal_metric(sys);
    std::mt19937_64 rng(21);
    std::normal_distribution<double> n01;
    for (int k = 0; k < 100; ++k) {
      const Vector q = sys.sample_box().sample(rng);
      Vector v(sys.dim());
      for (double& x : v) x = n01(rng);
      EXPECT_GT(bilinear(h(q), v, v), 0.0) << sys.name();
    }
  }
}

TEST(PrincipalMetric, DistributionOrthogonalToFibers) {
  const auto sys = veselova();
  const auto h = principal_metric(sys);
  const Vector q{0.9, 1.7, -2.5};
  const DenseMatrix hq = h(q);
  const Vector vertical{0, 0, 1};
  for (const Vector& w : {Vector{1, 0}, Vector{0, 1}}) {
    const Vector l = horizontal_lift(sys, q, w);
    EXPECT_NEAR(bilinear(hq, l, vertical), 0.0, 1e-12);
  }
  EXPECT_NEAR(hq(2, 2), sys.metric()(q)(2, 2), 1e-12);
}

TEST(BundleSystem, SectionAndProjection) {
  const auto sys = particle();
  const Vector s = sys.section(Vector{0.5, -1});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(sys.project(s), (Vector{0.5, -1}));
  EXPECT_NO_THROW(check_structure(sys, s));
  EXPECT_LT(fiber_invariance_defect(sys, s, 0.7), 1e-12);
}

}  // namespace
}  // namespace nhgeo::chaplygin
