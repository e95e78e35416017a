// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::chaplygin {

Vector SampleBox::sample(std::mt19937_64& rng) const {
  Vector out(lo.size());
  // Fixed 53-bit mantissa draw: independent of the standard library's
  // distribution implementation, so seeds reproduce across toolchains.
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out[i] = lo[i] + u * (hi[i] - lo[i]);
  }
  return out;
}

Vector SampleBox::center() const {
  Vector out(lo.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (lo[i] + hi[i]);
  return out;
}

BundleSystem::BundleSystem(Definition def) : def_(std::move(def)) {
  const std::size_t n = def_.n;
  const std::size_t m = def_.m;
  auto bad = [](const std::string& what) { fail(ErrorCode::invalid_parameters, "BundleSystem: " + what); };
  if (n == 0 || m == 0 || m > n) bad("need 0 < m <= n");
  if (def_.metric.dim() != n) bad("metric dimension differs from n");
  if (def_.constraints.ambient_dim() != n || def_.constraints.rank() != m)
    bad("constraint distribution must have rank m in dimension n");
  if (def_.potential && def_.potential->dim() != m) bad("potential must live on the base");
  if (def_.analytic_phi && def_.analytic_phi->dim() != m) bad("analytic phi must live on the base");
  if (def_.section_fiber.size() != n - m) bad("section needs n - m fiber coordinates");
  if (def_.reference_base.empty()) def_.reference_base.assign(m, 0.0);
  if (def_.reference_base.size() != m) bad("reference base point has the wrong dimension");
  if (def_.sample_box.lo.empty()) def_.sample_box = {Vector(n, -1.0), Vector(n, 1.0)};
  if (def_.trajectory_box.lo.empty()) def_.trajectory_box = def_.sample_box;
  for (const SampleBox* box : {&def_.sample_box, &def_.trajectory_box}) {
    if (box->lo.size() != n || box->hi.size() != n) bad("sampling boxes must span the full chart");
    for (std::size_t i = 0; i < n; ++i)
      if (!(box->lo[i] <= box->hi[i])) bad("sampling box bounds are inverted");
  }
  if (!(def_.speed_scale > 0.0)) bad("speed scale must be positive");
}

Vector BundleSystem::section(Point qbar) const {
  if (qbar.size() != def_.m) fail(ErrorCode::invalid_argument, "section: base point has wrong dimension");
  Vector q(qbar.begin(), qbar.end());
  q.insert(q.end(), def_.section_fiber.begin(), def_.section_fiber.end());
  return q;
}

Vector BundleSystem::project(Point q) const {
  if (q.size() != def_.n) fail(ErrorCode::invalid_argument, "project: point has wrong dimension");
  return Vector(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(def_.m));
}

std::optional<geometry::ScalarField> BundleSystem::potential_on_total() const {
  if (!def_.potential) return std::nullopt;
  return def_.potential->pulled_back(def_.n);
}

BundleSystem BundleSystem::with_potential(std::optional<geometry::ScalarField> potential) const {
  Definition s = def_;
  s.potential = std::move(potential);
  return BundleSystem(std::move(s));
}

void check_structure(const BundleSystem& sys, Point q) {
  sys.metric().check_at(q);
  const std::size_t m = sys.base_dim();
  const std::size_t k = sys.fiber_dim();
  if (k == 0) return;
  const DenseMatrix a = sys.constraints().forms(q);
  const DenseMatrix fiber_block = block(a, 0, m, k, k);
  try {
    (void)numeric::inverse(fiber_block);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_matrix) throw;
    fail(ErrorCode::rank_deficient, "constraint distribution is not transversal to the fiber");
  }
}

double fiber_invariance_defect(const BundleSystem& sys, Point q, double shift) {
  const DenseMatrix g0 = sys.metric()(q);
  double defect = 0.0;
  for (std::size_t j = sys.base_dim(); j < sys.dim(); ++j) {
    Vector shifted(q.begin(), q.end());
    shifted[j] += shift;
    defect = std::max(defect, max_abs(sys.metric()(shifted) - g0));
  }
  return defect;
}

}  // namespace nhgeo::chaplygin
