#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/systems.hpp"

namespace nhgeo::systems {
namespace {

double expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    return 1.0;
  }
  ADD_FAILURE() << "no error raised";
  return 0.0;
}

// Kernel of a 1-form row matches the expected form up to scale.
void expect_same_form(std::span<const double> row, std::span<const double> expected) {
  std::size_t pivot = 0;
  while (expected[pivot] == 0.0) ++pivot;
  const double s = row[pivot] / expected[pivot];
  for (std::size_t i = 0; i < row.size(); ++i) EXPECT_NEAR(row[i], s * expected[i], 1e-14) << i;
}

TEST(Build, DiskConstraintForms) {
  const auto sys = build({kVerticalDisk, {{"R", 1.5}}, {}});
  const double phi = 0.8;
  const DenseMatrix f = sys.constraints().forms(Vector{0.1, phi, 0.3, 0.4});
  ASSERT_EQ(f.rows(), 2u);
  // mu1 = dx - R cos(varphi) dtheta, mu2 = dy - R sin(varphi) dtheta in (theta, varphi, x, y).
  const Vector mu1{-1.5 * std::cos(phi), 0, 1, 0};
  const Vector mu2{-1.5 * std::sin(phi), 0, 0, 1};
  expect_same_form(f.row(0), mu1);
  expect_same_form(f.row(1), mu2);
}

TEST(Build, ParticleConstraintForm) {
  const auto sys = build({kParticle, {}, {}});
  const DenseMatrix f = sys.constraints().forms(Vector{0.2, -1.3, 4});
  expect_same_form(f.row(0), Vector{1.3, 0, 1});
}

TEST(Build, IsotropicVeselovaHasConstantPhi) {
  const Vector a = veselova_a_matrix(1, 1, 1);
  EXPECT_EQ(a, (Vector{1, 1, 1}));
  const auto sys = build({kVeselova, {{"I1", 1}, {"I2", 1}, {"I3", 1}}, {}});
  ASSERT_TRUE(sys.analytic_phi().has_value());
  EXPECT_NEAR((*sys.analytic_phi())(Vector{1.0, 0.4}), 0.0, 1e-15);
  chaplygin::PhiOptions opt;
  opt.source = chaplygin::PhiSource::recovered;
  EXPECT_NEAR(chaplygin::recover_phi(sys, Vector{1.5, 0}, Vector{0.7, 2.0}, opt), 0.0, 1e-8);
}

TEST(Build, VeselovaAMatrix) {
  const Vector a = veselova_a_matrix(1, 2, 3);
  EXPECT_NEAR(a[0], std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(a[1], std::sqrt(1.5), 1e-15);
  EXPECT_NEAR(a[2], std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(Build, RejectsBadParameters) {
  expect_code(ErrorCode::invalid_parameters, [] { build({kVerticalDisk, {{"m", -1}}, {}}); });
  expect_code(ErrorCode::invalid_parameters, [] { build({kVerticalDisk, {{"mass", 1}}, {}}); });
  expect_code(ErrorCode::invalid_parameters, [] { build({"rolling-ball", {}, {}}); });
  expect_code(ErrorCode::invalid_parameters, [] { build({kVeselova, {{"I2", 0}}, {}}); });
  expect_code(ErrorCode::invalid_parameters, [] { build({kParticle, {{"exponent", 1.5}}, {}}); });
  expect_code(ErrorCode::invalid_parameters, [] {
    build({kParticle, {}, {PotentialKind::quadratic, 1.0, std::size_t{5}}});
  });
}

TEST(Build, VeselovaOutsideChartIsDomainError) {
  const auto sys = build({kVeselova, {}, {}});
  expect_code(ErrorCode::domain_error, [&] { sys.metric()(Vector{0.1, 0, 0}); });
}

TEST(Build, Normalized) {
  const auto d = normalized({kVerticalDisk, {{"R", 2}}, {}});
  EXPECT_EQ(d.parameters.at("R"), 2.0);
  EXPECT_EQ(d.parameters.at("m"), 1.0);
  EXPECT_EQ(default_parameters(kVeselova).at("I3"), 3.0);
  EXPECT_EQ(system_names().size(), 3u);
}

TEST(Build, StructureOnSamplingBox) {
  for (const auto& name : system_names()) {
    const auto sys = build({name, {}, {}});
    std::mt19937_64 rng(17);
    for (int k = 0; k < 20; ++k) {
      const Vector q = sys.sample_box().sample(rng);
      EXPECT_NO_THROW(chaplygin::check_structure(sys, q)) << name;
      EXPECT_LT(chaplygin::fiber_invariance_defect(sys, q, 0.7), 1e-10) << name;
    }
  }
}

TEST(Build, PhiSimpleOnSamplingBox) {
  for (const auto& name : system_names()) {
    const auto sys = build({name, {}, {}});
    std::mt19937_64 rng(23);
    for (int k = 0; k < 20; ++k) {
      const Vector q = sys.sample_box().sample(rng);
      const auto fit = chaplygin::dphi_fit(sys, sys.project(q));
      EXPECT_LE(fit.residual, 1e-6) << name;
    }
  }
}

TEST(Crosschecks, PrincipalMetricMatchesClosedForms) {
  for (const char* name : {kVerticalDisk, kParticle}) {
    const SystemDescriptor d{name, {}, {}};
    const auto sys = build(d);
    const auto h = chaplygin::principal_metric(sys);
    std::size_t count = 0;
    for (const auto& c : analytic_crosschecks(d, 4, 100)) {
      if (c.quantity != "h") continue;
      ++count;
      EXPECT_LT(max_abs(h(c.point) - c.expected), 1e-9) << name;
    }
    EXPECT_EQ(count, 100u) << name;
  }
}

TEST(Crosschecks, SeededAndReproducible) {
  const SystemDescriptor d{kParticle, {}, {}};
  const auto a = analytic_crosschecks(d, 1, 10);
  const auto b = analytic_crosschecks(d, 1, 10);
  const auto c = analytic_crosschecks(d, 2, 10);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].point, b[i].point);
  EXPECT_NE(a.front().point, c.front().point);
}

TEST(Crosschecks, VeselovaOnlyCarriesPhi) {
  for (const auto& c : analytic_crosschecks({kVeselova, {}, {}}, 0, 5))
    EXPECT_TRUE(c.quantity == "phi" || c.quantity == "dphi") << c.quantity;
}

TEST(Potential, QuadraticOnLastBaseAxis) {
  const auto sys = build({kParticle, {}, {PotentialKind::quadratic}});
  ASSERT_TRUE(sys.potential().has_value());
  EXPECT_DOUBLE_EQ((*sys.potential())(Vector{3.0, 2.0}), 2.0);
  const auto total = sys.potential_on_total();
  EXPECT_DOUBLE_EQ((*total)(Vector{3.0, 2.0, -1.0}), 2.0);
}

TEST(LeftTranslation, KineticMetricIsInvariant) {
  // g is built from body angular velocity, which left translations preserve.
  const auto sys = build({kVeselova, {}, {}});
  EXPECT_LT(veselova_left_translation_defect(sys.metric(), Vector{1.1, 0.4, -0.7}, 0.3), 1e-6);
}

TEST(LeftTranslation, LeavingChartThrows) {
  const auto sys = build({kVeselova, {}, {}});
  EXPECT_THROW(veselova_left_translation_defect(sys.metric(), Vector{0.3, 0.0, 0.0}, -0.25), Error);
}

}  // namespace
}  // namespace nhgeo::systems
