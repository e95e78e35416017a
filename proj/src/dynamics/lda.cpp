// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>

#include "nhgeo/dynamics.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::dynamics {

LdaSolveResult lda_solve(const BundleSystem& sys, Point q, std::span<const double> v) {
  const std::size_t n = sys.dim();
  const std::size_t k = sys.fiber_dim();
  if (q.size() != n || v.size() != n)
    fail(ErrorCode::invalid_argument, "lda_rhs: state has wrong dimension");

  const geometry::MetricField& metric = sys.metric();
  Vector force = geometry::first_kind_contraction(metric, q, v);
  for (double& f : force) f = -f;
  if (sys.potential()) {
    const Vector dv = sys.potential()->differential(sys.project(q));
    for (std::size_t a = 0; a < dv.size(); ++a) force[a] -= dv[a];
  }

  const DenseMatrix g = metric(q);
  DenseMatrix a(0, n);
  Vector a_dot_v(k, 0.0);
  if (k > 0) {
    a = sys.constraints().forms(q);
    auto forms = [&sys](Point x) { return sys.constraints().forms(x); };
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0.0) continue;
      const Vector row = numeric::derivative_fd(forms, q, j) * v;
      for (std::size_t r = 0; r < k; ++r) a_dot_v[r] += v[j] * row[r];
    }
  }

  DenseMatrix saddle(n + k, n + k);
  Vector rhs(n + k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) saddle(i, j) = g(i, j);
    rhs[i] = force[i];
  }
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      saddle(n + r, j) = a(r, j);
      saddle(j, n + r) = a(r, j);
    }
    rhs[n + r] = -a_dot_v[r];
  }

  Vector x;
  try {
    x = numeric::solve_linear(saddle, rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_matrix) throw;
    fail(ErrorCode::singular_saddle, "lda_rhs: constraint rows are rank deficient");
  }

  LdaSolveResult out;
  out.acceleration.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  out.multipliers.resize(k);
  for (std::size_t r = 0; r < k; ++r) out.multipliers[r] = -x[n + r];
  if (k > 0) {
    const Vector aq = a * out.acceleration;
    for (std::size_t r = 0; r < k; ++r)
      out.constraint_residual = std::max(out.constraint_residual, std::abs(aq[r] + a_dot_v[r]));
  }
  return out;
}

LdaSolveResult lda_rhs(const BundleSystem& sys, Point q, std::span<const double> v) {
  if (q.size() != sys.dim() || v.size() != sys.dim())
    fail(ErrorCode::invalid_argument, "lda_rhs: state has wrong dimension");
  const double viol = sys.constraints().violation(q, v);
  if (viol > kConstraintTolerance) {
    std::ostringstream msg;
    msg << "lda_rhs: velocity violates the constraints by " << viol;
    fail(ErrorCode::constraint_violated, msg.str());
  }
  return lda_solve(sys, q, v);
}

Vector admissible_velocity(const BundleSystem& sys, Point q, std::span<const double> v,
                           std::vector<std::string>* warnings) {
  if (v.size() != sys.dim()) fail(ErrorCode::invalid_argument, "initial velocity has wrong dimension");
  const double viol = sys.constraints().violation(q, v);
  if (viol <= kConstraintTolerance) return Vector(v.begin(), v.end());
  if (viol > kProjectionLimit) {
    std::ostringstream msg;
    msg << "initial velocity violates the constraints by " << viol << " (limit "
        << kProjectionLimit << ")";
    fail(ErrorCode::constraint_violated, msg.str());
  }
  if (warnings != nullptr) {
    std::ostringstream msg;
    msg << "initial velocity off the constraint distribution by " << viol
        << "; projected g-orthogonally";
    warnings->push_back(msg.str());
  }
  return geometry::project_g(sys.metric(), sys.constraints(), q, v);
}

}  // namespace nhgeo::dynamics
