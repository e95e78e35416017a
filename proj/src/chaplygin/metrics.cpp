// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "generic.hpp"

namespace nhgeo::chaplygin {

namespace {

bool dual_available(const BundleSystem& sys, const geometry::ScalarField& phi) {
  return sys.metric().has_dual() && phi.has_dual() &&
         (sys.fiber_dim() == 0 || sys.constraints().has_dual_forms());
}

std::vector<Dual> dual_section(const BundleSystem& sys, std::span<const Dual> qbar) {
  std::vector<Dual> q(qbar.begin(), qbar.end());
  for (double f : sys.section_fiber()) q.emplace_back(f);
  return q;
}

BasicMatrix<Dual> dual_lifts(const BundleSystem& sys, std::span<const Dual> q) {
  const BasicMatrix<Dual> a =
      sys.fiber_dim() == 0 ? BasicMatrix<Dual>(0, sys.dim()) : sys.constraints().forms_dual(q);
  return detail::lifts_from_forms(a, sys.dim(), sys.base_dim());
}

BasicMatrix<Dual> dual_gcan(const BundleSystem& sys, const geometry::ScalarField& phi,
                            std::span<const Dual> qbar) {
  const std::vector<Dual> q = dual_section(sys, qbar);
  BasicMatrix<Dual> g = detail::congruence(dual_lifts(sys, q), sys.metric().evaluate_dual(q));
  g *= exp(2.0 * phi.evaluate_dual(qbar));
  return g;
}

}  // namespace

geometry::MetricField canonical_metric(const BundleSystem& sys, const PhiOptions& options,
                                       geometry::DiffMode mode) {
  geometry::ScalarField phi = phi_field(sys, options);
  auto f = [sys, phi](Point qbar) {
    DenseMatrix g = reduced_metric(sys, qbar);
    g *= std::exp(2.0 * phi(qbar));
    return g;
  };
  if (mode == geometry::DiffMode::dual && dual_available(sys, phi)) {
    return geometry::MetricField(sys.base_dim(), f, [sys, phi](std::span<const Dual> qbar) {
      return dual_gcan(sys, phi, qbar);
    });
  }
  return geometry::MetricField(sys.base_dim(), f);
}

geometry::MetricField principal_metric(const BundleSystem& sys, const PhiOptions& options,
                                       geometry::DiffMode mode) {
  geometry::ScalarField phi = phi_field(sys, options);
  geometry::MetricField g_can = canonical_metric(sys, options, geometry::DiffMode::finite_difference);
  auto f = [sys, g_can](Point q) {
    return detail::assemble_h(lift_matrix(sys, q), g_can(sys.project(q)), sys.metric()(q), sys.dim(),
                              sys.base_dim());
  };
  if (mode == geometry::DiffMode::dual && dual_available(sys, phi)) {
    return geometry::MetricField(sys.dim(), f, [sys, phi](std::span<const Dual> q) {
      return detail::assemble_h(dual_lifts(sys, q), dual_gcan(sys, phi, q.first(sys.base_dim())),
                                sys.metric().evaluate_dual(q), sys.dim(), sys.base_dim());
    });
  }
  return geometry::MetricField(sys.dim(), f);
}

}  // namespace nhgeo::chaplygin
