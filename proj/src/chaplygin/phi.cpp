// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::chaplygin {

double recover_phi(const BundleSystem& sys, Point qbar0, Point qbar, const PhiOptions& options) {
  const std::size_t m = sys.base_dim();
  if (qbar0.size() != m || qbar.size() != m)
    fail(ErrorCode::invalid_argument, "recover_phi: base points have wrong dimension");
  const double pin = sys.analytic_phi() ? (*sys.analytic_phi())(qbar0) : 0.0;

  Vector delta(m);
  bool same = true;
  for (std::size_t i = 0; i < m; ++i) {
    delta[i] = qbar[i] - qbar0[i];
    same = same && delta[i] == 0.0;
  }
  if (same) return pin;

  Vector x(m);
  auto integrand = [&](double s) {
    for (std::size_t i = 0; i < m; ++i) x[i] = qbar0[i] + s * delta[i];
    const PhiDifferential d = recover_dphi(gyroscopic_tensor(sys, x), options.threshold);
    return dot(d.dphi, delta);
  };
  const double value = numeric::simpson_integral(integrand, 0.0, 1.0, options.panels);

  if (options.check_closedness && m >= 2) {
    const double curl = dphi_curl(sys, qbar);
    if (curl > kClosednessThreshold)
      fail(ErrorCode::non_closed_form,
           "recovered dphi is not closed (curl " + std::to_string(curl) + ")");
  }
  return pin + value;
}

geometry::ScalarField phi_field(const BundleSystem& sys, const PhiOptions& options) {
  const bool have_analytic = sys.analytic_phi().has_value();
  if (options.source == PhiSource::analytic && !have_analytic)
    fail(ErrorCode::invalid_argument, "phi_field: system has no analytic phi attached");
  if (options.source != PhiSource::recovered && have_analytic) return *sys.analytic_phi();

  const Vector base = options.basepoint.value_or(sys.reference_base());
  if (options.check_closedness && sys.base_dim() >= 2) {
    const double curl = dphi_curl(sys, base);
    if (curl > kClosednessThreshold)
      fail(ErrorCode::non_closed_form,
           "recovered dphi is not closed (curl " + std::to_string(curl) + ")");
  }
  PhiOptions inner = options;
  inner.check_closedness = false;
  return geometry::ScalarField(sys.base_dim(), [sys, base, inner](Point qbar) {
    return recover_phi(sys, base, qbar, inner);
  });
}

}  // namespace nhgeo::chaplygin
