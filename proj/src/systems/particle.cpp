// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "builtin.hpp"

namespace nhgeo::systems::detail {

namespace {

// y^e for the integer exponent e >= 1 validated by the registry.
template <class T>
T ipow(const T& y, int e) {
  T out(1.0);
  for (int i = 0; i < e; ++i) out *= y;
  return out;
}

template <class T>
T particle_phi(const T& y) {
  using std::log;
  return -0.5 * log(1.0 + y * y);
}

}  // namespace

chaplygin::BundleSystem build_particle(const Params& p,
                                       std::optional<geometry::ScalarField> potential) {
  const int e = static_cast<int>(p.at("exponent"));
  chaplygin::BundleSystem::Definition def;
  def.name = kParticle;
  def.n = 3;
  def.m = 2;
  def.metric = geometry::MetricField(
      3, [](geometry::Point) { return DenseMatrix::identity(3); },
      [](std::span<const Dual>) { return BasicMatrix<Dual>::identity(3); });
  def.constraints = geometry::Distribution::from_kernel(
      3, 2, [e](geometry::Point q) { return DenseMatrix{{-ipow(q[1], e), 0.0, 1.0}}; },
      [e](std::span<const Dual> q) {
        return BasicMatrix<Dual>{{-ipow(q[1], e), Dual(0.0), Dual(1.0)}};
      });
  def.potential = std::move(potential);
  // Kept at -1/2 ln(1 + y^2) for every exponent: the corrupted variants are
  // meant to disagree with it.
  def.analytic_phi = geometry::ScalarField(
      2, [](geometry::Point q) { return particle_phi(q[1]); },
      [](std::span<const Dual> q) { return particle_phi(q[1]); });
  def.section_fiber = {0.0};
  def.reference_base = {0.0, 0.0};
  def.sample_box = {{-2.0, -2.0, -2.0}, {2.0, 2.0, 2.0}};
  return chaplygin::BundleSystem(std::move(def));
}

std::vector<CrossCheck> particle_crosschecks(const Params& p, const std::vector<Vector>& points) {
  const int e = static_cast<int>(p.at("exponent"));
  std::vector<CrossCheck> out;
  for (const Vector& q : points) {
    const double y = q[1];
    const double s = 1.0 + y * y;
    const double ye = ipow(y, e);
    const Vector qbar{q[0], q[1]};

    const DenseMatrix gbar{{1.0 + ye * ye, 0.0}, {0.0, 1.0}};
    const DenseMatrix gcan{{(1.0 + ye * ye) / s, 0.0}, {0.0, 1.0 / s}};
    DenseMatrix h{{gcan(0, 0) + ye * ye, 0.0, -ye}, {0.0, 1.0 / s, 0.0}, {-ye, 0.0, 1.0}};
    out.push_back({"h", q, std::move(h)});
    out.push_back({"gbar", qbar, gbar});
    out.push_back({"g_can", qbar, gcan});
    out.push_back({"phi", qbar, scalar_matrix(-0.5 * std::log(s))});
    out.push_back({"dphi", qbar, DenseMatrix{{0.0, -y / s}}});
  }
  return out;
}

}  // namespace nhgeo::systems::detail
