#include <gtest/gtest.h>

#include <cmath>

#include "nhgeo/numeric.hpp"

namespace nhgeo::numeric {
namespace {

TEST(SolveLinear, IdentityReturnsRhs) {
  const Vector x = solve_linear(DenseMatrix::identity(3), Vector{1, 2, 3});
  EXPECT_EQ(x, (Vector{1, 2, 3}));
}

TEST(SolveLinear, Diagonal) {
  const Vector x = solve_linear(DenseMatrix{{2, 0}, {0, 4}}, Vector{2, 8});
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(SolveLinear, RankDeficientThrows) {
  try {
    solve_linear(DenseMatrix{{1, 1}, {1, 1}}, Vector{1, 3});
    FAIL() << "expected SingularMatrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular_matrix);
  }
}

TEST(SolveLinear, NeedsPivoting) {
  // Zero leading entry; solution checked by substitution.
  const DenseMatrix a{{0, 2, 1}, {1, 1, 0}, {3, 0, 1}};
  const Vector b{5, 3, 6};
  const Vector x = solve_linear(a, b);
  const Vector back = a * x;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[i], b[i], 1e-14);
}

TEST(SolveLinear, DualSolveDifferentiatesDoubleSolve) {
  // d/ds of x(s) = A(s)^-1 b with A(s) = [[2+s, 1], [1, 3]] at s = 0.
  const BasicMatrix<Dual> a{{Dual(2, 1), Dual(1)}, {Dual(1), Dual(3)}};
  const BasicMatrix<Dual> b{{Dual(1)}, {Dual(2)}};
  const auto x = solve_linear_generic(a, b);
  // x = (1/5, 3/5); dx = -A^-1 (dA) x = -A^-1 (x0, 0) = -(3/25, -1/25).
  EXPECT_NEAR(x(0, 0).value, 0.2, 1e-15);
  EXPECT_NEAR(x(1, 0).value, 0.6, 1e-15);
  EXPECT_NEAR(x(0, 0).deriv, -0.12, 1e-15);
  EXPECT_NEAR(x(1, 0).deriv, 0.04, 1e-15);
}

TEST(PositiveDefinite, DetectsIndefinite) {
  EXPECT_TRUE(is_positive_definite(DenseMatrix{{2, 1}, {1, 2}}));
  EXPECT_FALSE(is_positive_definite(DenseMatrix{{1, 2}, {2, 1}}));
}

TEST(Differentiate, SquareDual) {
  const Vector q{3.0};
  const double d = derivative_dual([](std::span<const Dual> x) { return x[0] * x[0]; }, q, 0);
  EXPECT_DOUBLE_EQ(d, 6.0);
}

TEST(Differentiate, RationalBothPaths) {
  const Vector q{1.0};
  const double exact = -2.0 * 1.0 / std::pow(2.0, 2);
  const double dual =
      derivative_dual([](std::span<const Dual> x) { return 1.0 / (1.0 + x[0] * x[0]); }, q, 0);
  const double fd =
      derivative_fd([](std::span<const double> x) { return 1.0 / (1.0 + x[0] * x[0]); }, q, 0);
  EXPECT_NEAR(dual, exact, 1e-15);
  EXPECT_NEAR(fd, exact, 1e-10);
}

TEST(Differentiate, ConstantIsZero) {
  const Vector q{0.3, -1.2};
  EXPECT_EQ(derivative_dual([](std::span<const Dual>) { return Dual(4.0); }, q, 1), 0.0);
  EXPECT_EQ(derivative_fd([](std::span<const double>) { return 4.0; }, q, 1), 0.0);
}

TEST(Differentiate, MatrixValuedField) {
  const Vector q{0.5};
  const auto d = derivative_fd(
      [](std::span<const double> x) { return DenseMatrix{{std::sin(x[0]), x[0] * x[0]}}; }, q, 0);
  EXPECT_NEAR(d(0, 0), std::cos(0.5), 1e-11);
  EXPECT_NEAR(d(0, 1), 1.0, 1e-12);
}

TEST(Differentiate, NonFiniteStencilRaisesEvaluationFailure) {
  const Vector q{0.0};
  try {
    derivative_fd([](std::span<const double> x) { return std::log(x[0] + 0.0015); }, q, 0);
    FAIL() << "expected EvaluationFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::evaluation_failure);
  }
}

TEST(Rk4, ExponentialOneStep) {
  const State y = rk4_step([](std::span<const double> s) { return State{s[0]}; }, State{1.0}, 0.1);
  // k1..k4 by hand: 1, 1.05, 1.0525, 1.10525.
  EXPECT_NEAR(y[0], 1.1051708333333333, 1e-15);
}

TEST(Rk4, ZeroFieldKeepsState) {
  const State y = rk4_step([](std::span<const double>) { return State{0.0, 0.0}; },
                           State{2.5, -1.0}, 0.3);
  EXPECT_EQ(y, (State{2.5, -1.0}));
}

TEST(Rk4, AffineExact) {
  const State y = rk4_step([](std::span<const double>) { return State{1.0}; }, State{2.0}, 0.5);
  EXPECT_DOUBLE_EQ(y[0], 2.5);
}

TEST(IntegrateOde, LandsOnEndTime) {
  OdeStepper st;
  st.step = 0.3;
  const auto sol = integrate_ode([](std::span<const double> s) { return State{s[0]}; }, State{1.0},
                                 1.0, st);
  EXPECT_DOUBLE_EQ(sol.times.back(), 1.0);
  EXPECT_NEAR(sol.states.back()[0], std::exp(1.0), 1e-3);
}

TEST(IntegrateOde, StepDoublingMeetsTolerance) {
  OdeStepper st;
  st.method = StepMethod::rk4_step_doubling;
  st.step = 0.1;
  st.tolerance = 1e-12;
  const auto sol = integrate_ode([](std::span<const double> s) { return State{-s[0]}; },
                                 State{1.0}, 2.0, st);
  EXPECT_NEAR(sol.states.back()[0], std::exp(-2.0), 1e-9);
}

TEST(IntegrateOde, RejectsBadStepper) {
  OdeStepper st;
  st.step = -1.0;
  EXPECT_THROW(st.validate(), Error);
}

TEST(Simpson, CubicExact) {
  EXPECT_NEAR(simpson_integral([](double x) { return x * x; }, 0, 1, 2), 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(simpson_integral([](double x) { return x * x * x; }, 0, 2, 4), 4.0, 1e-14);
}

TEST(Simpson, InverseSqrtMatchesAsinh) {
  const double v = simpson_integral([](double s) { return 1.0 / std::sqrt(1.0 + s * s); }, 0, 1, 64);
  EXPECT_NEAR(v, std::asinh(1.0), 1e-9);
}

TEST(Simpson, EmptyInterval) {
  EXPECT_EQ(simpson_integral([](double x) { return x; }, 0.7, 0.7, 2), 0.0);
}

TEST(Simpson, SamplesOddIntervalCount) {
  // The end correction is exact on quadratics and fourth order in general.
  std::vector<double> t, f, g;
  for (int i = 0; i <= 7; ++i) {
    t.push_back(i / 7.0);
    f.push_back(std::pow(i / 7.0, 2));
    g.push_back(std::exp(i / 7.0));
  }
  EXPECT_NEAR(simpson_samples(t, f), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(simpson_samples(t, g), std::exp(1.0) - 1.0, 1e-4);
}

TEST(Simpson, CumulativeIsFourthOrderEverywhere) {
  std::vector<double> t, f;
  for (int i = 0; i <= 41; ++i) {
    const double s = 2.0 * i / 41.0;
    t.push_back(s);
    f.push_back(std::cos(s));
  }
  const auto c = cumulative_simpson(t, f);
  ASSERT_EQ(c.size(), t.size());
  EXPECT_EQ(c[0], 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(c[i], std::sin(t[i]), 2e-6) << i;
}

}  // namespace
}  // namespace nhgeo::numeric
