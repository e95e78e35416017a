// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nhgeo/geometry.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::geometry {

Vector project_g(const MetricField& metric, const Distribution& dist, Point q,
                 std::span<const double> v) {
  const DenseMatrix s = dist.span_basis(q);
  const DenseMatrix g = metric(q);
  const DenseMatrix gs = g * s;
  const DenseMatrix gram = s.transposed() * gs;
  const Vector rhs = gs.transposed() * v;
  Vector coeff;
  try {
    coeff = numeric::solve_linear(gram, rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_matrix) throw;
    fail(ErrorCode::rank_deficient, "project_g: Gram matrix of the spanning fields is singular");
  }
  return s * coeff;
}

Vector grad(const MetricField& metric, const ScalarField& f, Point q) {
  return numeric::solve_linear(metric(q), f.differential(q));
}

}  // namespace nhgeo::geometry
