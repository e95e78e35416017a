// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// Numeric kernel: pivoted dense solves, dual-number and finite-difference
// derivatives, composite Simpson quadrature and RK4 stepping.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nhgeo/dual.hpp"
#include "nhgeo/error.hpp"
#include "nhgeo/matrix.hpp"

namespace nhgeo::numeric {

// ---------------------------------------------------------------------------
// Linear algebra
// ---------------------------------------------------------------------------

/// Relative pivot threshold below which a matrix is reported singular.
inline constexpr double kPivotTolerance = 1e-13;

/// Solve A x = b by Gaussian elimination with scaled partial pivoting.
/// Throws SingularMatrix when a pivot falls below 1e-13 times its row scale.
Vector solve_linear(const DenseMatrix& a, std::span<const double> b);

/// Multi right-hand-side variant: columns of B are solved simultaneously.
DenseMatrix solve_linear(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix inverse(const DenseMatrix& a);

/// Scaled partial pivoting on plain or dual entries; pivots are chosen on
/// values, so a dual solve differentiates the double solve exactly.
template <class T>
BasicMatrix<T> solve_linear_generic(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (!a.square()) fail(ErrorCode::invalid_argument, "solve_linear: matrix is not square");
  if (b.rows() != a.rows()) fail(ErrorCode::invalid_argument, "solve_linear: rhs length mismatch");
  const std::size_t n = a.rows();
  const std::size_t k = b.cols();
  BasicMatrix<T> lu = a;
  BasicMatrix<T> x = b;

  std::vector<double> scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale[i] = std::max(scale[i], std::abs(value_of(lu(i, j))));
    if (scale[i] == 0.0 || !std::isfinite(scale[i]))
      fail(ErrorCode::singular_matrix, "solve_linear: row " + std::to_string(i) + " is zero");
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = -1.0;
    for (std::size_t r = col; r < n; ++r) {
      const double rel = std::abs(value_of(lu(r, col))) / scale[r];
      if (rel > best) {
        best = rel;
        piv = r;
      }
    }
    if (best < kPivotTolerance)
      fail(ErrorCode::singular_matrix,
           "solve_linear: pivot below tolerance in column " + std::to_string(col));
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
      for (std::size_t j = 0; j < k; ++j) std::swap(x(col, j), x(piv, j));
      std::swap(scale[col], scale[piv]);
    }
    const T p = lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T factor = lu(r, col) / p;
      lu(r, col) = T(0.0);
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= factor * lu(col, j);
      for (std::size_t j = 0; j < k; ++j) x(r, j) -= factor * x(col, j);
    }
  }

  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < k; ++j) {
      T s = x(ii, j);
      for (std::size_t c = ii + 1; c < n; ++c) s -= lu(ii, c) * x(c, j);
      x(ii, j) = s / lu(ii, ii);
    }
  }
  return x;
}

/// Cholesky succeeds (all pivots strictly positive).
bool is_positive_definite(const DenseMatrix& a);

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

/// Finite-difference step rule used everywhere: 1e-3 * (1 + |x|).
inline double fd_step(double x) { return 1e-3 * (1.0 + std::abs(x)); }

using DualScalarFn = std::function<Dual(std::span<const Dual>)>;

/// Exact derivative of an analytic scalar field along one coordinate axis,
/// by seeding a unit tangent on that axis.
double derivative_dual(const DualScalarFn& f, std::span<const double> q, std::size_t axis);

namespace detail {

inline double fd_combine(double m2, double m1, double p1, double p2, double h) {
  return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
}

inline Vector fd_combine(const Vector& m2, const Vector& m1, const Vector& p1, const Vector& p2,
                         double h) {
  Vector out(m2.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fd_combine(m2[i], m1[i], p1[i], p2[i], h);
  return out;
}

inline DenseMatrix fd_combine(const DenseMatrix& m2, const DenseMatrix& m1, const DenseMatrix& p1,
                              const DenseMatrix& p2, double h) {
  DenseMatrix out(m2.rows(), m2.cols());
  for (std::size_t i = 0; i < out.entries().size(); ++i)
    out.entries()[i] =
        fd_combine(m2.entries()[i], m1.entries()[i], p1.entries()[i], p2.entries()[i], h);
  return out;
}

inline bool finite_value(double x) { return std::isfinite(x); }
inline bool finite_value(const Vector& v) { return all_finite(v); }
inline bool finite_value(const DenseMatrix& m) { return all_finite(m.entries()); }

}  // namespace detail

/// Fourth-order central difference
///   f'(x) ~ (f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)) / 12h,  h = fd_step(x).
/// Works for scalar, Vector and DenseMatrix valued fields. Throws
/// EvaluationFailure when the field throws or is non-finite at a stencil point.
template <class F>
auto derivative_fd(const F& f, std::span<const double> q, std::size_t axis) {
  if (axis >= q.size()) fail(ErrorCode::invalid_argument, "derivative axis out of range");
  const double h = fd_step(q[axis]);
  Vector x(q.begin(), q.end());
  auto eval = [&](double offset) {
    x[axis] = q[axis] + offset;
    try {
      auto v = f(std::span<const double>(x));
      if (!detail::finite_value(v))
        fail(ErrorCode::evaluation_failure,
             "field is not finite at stencil point (axis " + std::to_string(axis) + ")");
      return v;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::evaluation_failure) throw;
      fail(ErrorCode::evaluation_failure,
           "field not defined at stencil point (axis " + std::to_string(axis) + "): " + e.what());
    }
  };
  auto m2 = eval(-2.0 * h);
  auto m1 = eval(-h);
  auto p1 = eval(h);
  auto p2 = eval(2.0 * h);
  return detail::fd_combine(m2, m1, p1, p2, h);
}

/// Jacobian of a vector field: column j holds d f / d q_j.
template <class F>
DenseMatrix jacobian_fd(const F& f, std::span<const double> q) {
  DenseMatrix jac;
  for (std::size_t j = 0; j < q.size(); ++j) {
    Vector col = derivative_fd(f, q, j);
    if (j == 0) jac = DenseMatrix(col.size(), q.size());
    for (std::size_t i = 0; i < col.size(); ++i) jac(i, j) = col[i];
  }
  return jac;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Composite Simpson rule on [a, b] with an even number of panels >= 2.
double simpson_integral(const std::function<double(double)>& f, double a, double b,
                        int n_panels);

/// Simpson rule over tabulated, possibly irregularly spaced samples. An odd
/// interval count is closed with the three-point end correction.
double simpson_samples(std::span<const double> t, std::span<const double> f);

/// Running integral from t[0] to every sample, fourth-order accurate at every
/// index.
std::vector<double> cumulative_simpson(std::span<const double> t, std::span<const double> f);

// ---------------------------------------------------------------------------
// ODE stepping
// ---------------------------------------------------------------------------

using State = std::vector<double>;
using OdeRhs = std::function<State(std::span<const double>)>;

enum class StepMethod { rk4_fixed, rk4_step_doubling };

struct OdeStepper {
  StepMethod method = StepMethod::rk4_fixed;
  double step = 1e-3;        ///< fixed step, or initial step for step doubling
  double tolerance = 1e-10;  ///< local error target, step doubling only

  void validate() const;
};

std::string to_string(StepMethod m);

/// One classical four-stage Runge-Kutta step of an autonomous field.
State rk4_step(const OdeRhs& f, std::span<const double> y, double dt);

struct OdeSolution {
  std::vector<double> times;
  std::vector<State> states;
  std::size_t rejected_steps = 0;
};

/// Integrate y' = f(y) over [0, t_end]. Fixed RK4 lands exactly on t_end
/// (final step shortened when t_end is not a multiple of the step).
OdeSolution integrate_ode(const OdeRhs& f, State y0, double t_end, const OdeStepper& stepper);

}  // namespace nhgeo::numeric
