// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nhgeo/numeric.hpp"

namespace nhgeo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::evaluation_failure: return "EvaluationFailure";
    case ErrorCode::non_finite_state: return "NonFiniteState";
    case ErrorCode::rank_deficient: return "RankDeficient";
    case ErrorCode::not_phi_simple: return "NotPhiSimple";
    case ErrorCode::non_closed_form: return "NonClosedForm";
    case ErrorCode::constraint_violated: return "ConstraintViolated";
    case ErrorCode::singular_saddle: return "SingularSaddle";
    case ErrorCode::shooting_diverged: return "ShootingDiverged";
    case ErrorCode::invalid_parameters: return "InvalidParameters";
    case ErrorCode::domain_error: return "DomainError";
  }
  return "Unknown";
}

}  // namespace nhgeo

namespace nhgeo::numeric {

DenseMatrix solve_linear(const DenseMatrix& a, const DenseMatrix& b) {
  return solve_linear_generic(a, b);
}

Vector solve_linear(const DenseMatrix& a, std::span<const double> b) {
  DenseMatrix rhs(b.size(), 1, Vector(b.begin(), b.end()));
  return solve_linear(a, rhs).entries();
}

DenseMatrix inverse(const DenseMatrix& a) {
  return solve_linear(a, DenseMatrix::identity(a.rows()));
}

bool is_positive_definite(const DenseMatrix& a) {
  if (!a.square()) return false;
  const std::size_t n = a.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.5 * (a(i, j) + a(j, i));
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

double derivative_dual(const DualScalarFn& f, std::span<const double> q, std::size_t axis) {
  if (axis >= q.size()) fail(ErrorCode::invalid_argument, "derivative axis out of range");
  std::vector<Dual> x(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) x[i] = Dual(q[i], i == axis ? 1.0 : 0.0);
  const Dual r = f(x);
  if (!std::isfinite(r.value) || !std::isfinite(r.deriv))
    fail(ErrorCode::evaluation_failure, "dual evaluation produced a non-finite value");
  return r.deriv;
}

}  // namespace nhgeo::numeric
