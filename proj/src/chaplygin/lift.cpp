// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "generic.hpp"

namespace nhgeo::chaplygin {

DenseMatrix lift_matrix(const BundleSystem& sys, Point q) {
  if (q.size() != sys.dim()) fail(ErrorCode::invalid_argument, "lift: point has wrong dimension");
  const DenseMatrix a = sys.fiber_dim() == 0 ? DenseMatrix(0, sys.dim()) : sys.constraints().forms(q);
  return detail::lifts_from_forms(a, sys.dim(), sys.base_dim());
}

Vector horizontal_lift(const BundleSystem& sys, Point q, std::span<const double> w) {
  if (w.size() != sys.base_dim())
    fail(ErrorCode::invalid_argument, "horizontal_lift: base vector has wrong dimension");
  return lift_matrix(sys, q) * w;
}

DenseMatrix reduced_metric_at(const BundleSystem& sys, Point q) {
  return detail::congruence(lift_matrix(sys, q), sys.metric()(q));
}

DenseMatrix reduced_metric(const BundleSystem& sys, Point qbar) {
  return reduced_metric_at(sys, sys.section(qbar));
}

}  // namespace nhgeo::chaplygin
