// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "builtin.hpp"

namespace nhgeo::systems::detail {

namespace {

struct DiskParams {
  double m, r, inertia, j;
};

DiskParams read(const Params& p) {
  return {p.at("m"), p.at("R"), p.at("I"), p.at("J")};
}

template <class T>
BasicMatrix<T> disk_metric(const DiskParams& d) {
  BasicMatrix<T> g(4, 4);
  g(0, 0) = T(d.inertia);
  g(1, 1) = T(d.j);
  g(2, 2) = T(d.m);
  g(3, 3) = T(d.m);
  return g;
}

// mu1 = dx - R cos(varphi) dtheta, mu2 = dy - R sin(varphi) dtheta
template <class T>
BasicMatrix<T> disk_forms(const DiskParams& d, std::span<const T> q) {
  using std::cos;
  using std::sin;
  BasicMatrix<T> a(2, 4);
  a(0, 0) = -d.r * cos(q[1]);
  a(0, 2) = T(1.0);
  a(1, 0) = -d.r * sin(q[1]);
  a(1, 3) = T(1.0);
  return a;
}

}  // namespace

chaplygin::BundleSystem build_disk(const Params& p, std::optional<geometry::ScalarField> potential) {
  const DiskParams d = read(p);
  const double pi = std::numbers::pi;
  chaplygin::BundleSystem::Definition def;
  def.name = kVerticalDisk;
  def.n = 4;
  def.m = 2;
  def.metric = geometry::MetricField(
      4, [d](geometry::Point) { return disk_metric<double>(d); },
      [d](std::span<const Dual>) { return disk_metric<Dual>(d); });
  def.constraints = geometry::Distribution::from_kernel(
      4, 2, [d](geometry::Point q) { return disk_forms<double>(d, q); },
      [d](std::span<const Dual> q) { return disk_forms<Dual>(d, q); });
  def.potential = std::move(potential);
  def.analytic_phi = geometry::ScalarField(
      2, [](geometry::Point) { return 0.0; }, [](std::span<const Dual>) { return Dual(0.0); });
  def.section_fiber = {0.0, 0.0};
  def.reference_base = {0.0, 0.0};
  def.sample_box = {{-pi, -pi, -2.0, -2.0}, {pi, pi, 2.0, 2.0}};
  return chaplygin::BundleSystem(std::move(def));
}

std::vector<CrossCheck> disk_crosschecks(const Params& p, const std::vector<Vector>& points) {
  const DiskParams d = read(p);
  std::vector<CrossCheck> out;
  for (const Vector& q : points) {
    const double c = std::cos(q[1]);
    const double s = std::sin(q[1]);
    DenseMatrix h(4, 4);
    h(0, 0) = d.inertia + 2.0 * d.m * d.r * d.r;
    h(1, 1) = d.j;
    h(2, 2) = d.m;
    h(3, 3) = d.m;
    h(0, 2) = h(2, 0) = -d.m * d.r * c;
    h(0, 3) = h(3, 0) = -d.m * d.r * s;
    out.push_back({"h", q, h});

    const Vector qbar{q[0], q[1]};
    const DenseMatrix gbar{{d.inertia + d.m * d.r * d.r, 0.0}, {0.0, d.j}};
    out.push_back({"gbar", qbar, gbar});
    out.push_back({"g_can", qbar, gbar});
    out.push_back({"phi", qbar, scalar_matrix(0.0)});
    out.push_back({"dphi", qbar, DenseMatrix(1, 2, 0.0)});
  }
  return out;
}

}  // namespace nhgeo::systems::detail
