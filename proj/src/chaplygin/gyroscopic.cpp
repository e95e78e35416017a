// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::chaplygin {

double GyroscopicField::antisymmetry_defect() const {
  double d = 0.0;
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) d = std::max(d, std::abs((*this)(c, a, b) + (*this)(c, b, a)));
  return d;
}

GyroscopicField gyroscopic_tensor_at(const BundleSystem& sys, Point q) {
  const std::size_t n = sys.dim();
  const std::size_t m = sys.base_dim();
  const DenseMatrix lifts = lift_matrix(sys, q);

  // dL[j] = d(lift matrix)/dq_j, so column a of dL[j] is d X_a / dq_j.
  auto lift_of = [&sys](Point x) { return lift_matrix(sys, x); };
  std::vector<DenseMatrix> d_lifts;
  d_lifts.reserve(n);
  for (std::size_t j = 0; j < n; ++j) d_lifts.push_back(numeric::derivative_fd(lift_of, q, j));

  GyroscopicField field;
  field.base_point = sys.project(q);
  field.m = m;
  field.coeff.assign(m * m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      // [X_a, X_b]^i = X_a^j d_j X_b^i - X_b^j d_j X_a^i
      Vector bracket(n, 0.0);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
          bracket[i] += lifts(j, a) * d_lifts[j](i, b) - lifts(j, b) * d_lifts[j](i, a);
      const Vector projected = geometry::project_g(sys.metric(), sys.constraints(), q, bracket);
      // The base coordinate fields commute, and pi_* is truncation to the
      // first m components.
      for (std::size_t c = 0; c < m; ++c) {
        field(c, a, b) = projected[c];
        field(c, b, a) = -projected[c];
      }
    }
  }
  return field;
}

GyroscopicField gyroscopic_tensor(const BundleSystem& sys, Point qbar) {
  return gyroscopic_tensor_at(sys, sys.section(qbar));
}

PhiDifferential recover_dphi(const GyroscopicField& c, double threshold) {
  const std::size_t m = c.m;
  if (m < 2)
    fail(ErrorCode::invalid_argument,
         "recover_dphi: phi-simplicity is vacuous on a one-dimensional base");
  PhiDifferential out;
  out.dphi.assign(m, 0.0);
  for (std::size_t b = 0; b < m; ++b) {
    double s = 0.0;
    for (std::size_t a = 0; a < m; ++a)
      if (a != b) s += c(a, a, b);
    out.dphi[b] = s / static_cast<double>(m - 1);
  }
  for (std::size_t cc = 0; cc < m; ++cc)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const double pattern = (cc == a ? out.dphi[b] : 0.0) - (cc == b ? out.dphi[a] : 0.0);
        out.residual = std::max(out.residual, std::abs(c(cc, a, b) - pattern));
      }
  if (out.residual > threshold)
    fail(ErrorCode::not_phi_simple, "gyroscopic tensor deviates from the phi-simple pattern by " +
                                        std::to_string(out.residual));
  return out;
}

PhiDifferential dphi_fit(const BundleSystem& sys, Point qbar) {
  return recover_dphi(gyroscopic_tensor(sys, qbar), std::numeric_limits<double>::infinity());
}

double dphi_curl(const BundleSystem& sys, Point qbar) {
  auto dphi = [&sys](Point x) { return dphi_fit(sys, x).dphi; };
  const DenseMatrix jac = numeric::jacobian_fd(dphi, qbar);  // jac(b, a) = d_a dphi_b
  double curl = 0.0;
  for (std::size_t a = 0; a < jac.cols(); ++a)
    for (std::size_t b = a + 1; b < jac.rows(); ++b)
      curl = std::max(curl, std::abs(jac(b, a) - jac(a, b)));
  return curl;
}

}  // namespace nhgeo::chaplygin
