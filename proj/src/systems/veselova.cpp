// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// ZXZ Euler angles R = Rz(alpha) Rx(beta) Rz(gamma), chart order
// (beta, gamma | alpha). Rotations about the spatial e3 shift alpha.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "builtin.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::systems::detail {

namespace {

constexpr double kBetaMargin = 0.2;

struct Inertia {
  double i1, i2, i3;
};

Inertia read(const Params& p) { return {p.at("I1"), p.at("I2"), p.at("I3")}; }

void check_chart(double beta) {
  if (!(beta > kBetaMargin && beta < std::numbers::pi - kBetaMargin)) {
    std::ostringstream msg;
    msg << "veselova: beta = " << beta << " outside the Euler-angle chart (0.2, pi - 0.2)";
    fail(ErrorCode::domain_error, msg.str());
  }
}

// Columns map (beta', gamma', alpha') to the body angular velocity.
template <class T>
BasicMatrix<T> body_velocity_map(const T& beta, const T& gamma) {
  using std::cos;
  using std::sin;
  const T sb = sin(beta), cb = cos(beta), sg = sin(gamma), cg = cos(gamma);
  BasicMatrix<T> b(3, 3);
  b(0, 0) = cg;
  b(1, 0) = -sg;
  b(2, 0) = T(0.0);
  b(0, 1) = T(0.0);
  b(1, 1) = T(0.0);
  b(2, 1) = T(1.0);
  b(0, 2) = sb * sg;
  b(1, 2) = sb * cg;
  b(2, 2) = cb;
  return b;
}

template <class T>
BasicMatrix<T> veselova_metric(const Inertia& in, std::span<const T> q) {
  check_chart(value_of(q[0]));
  const BasicMatrix<T> b = body_velocity_map(q[0], q[1]);
  const double diag[3] = {in.i1, in.i2, in.i3};
  BasicMatrix<T> g(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      T acc(0.0);
      for (std::size_t k = 0; k < 3; ++k) acc += diag[k] * b(k, i) * b(k, j);
      g(i, j) = acc;
    }
  return g;
}

template <class T>
BasicMatrix<T> veselova_forms(std::span<const T> q) {
  using std::cos;
  check_chart(value_of(q[0]));
  return BasicMatrix<T>{{T(0.0), cos(q[0]), T(1.0)}};
}

/// -1/2 ln (A gamma_pt, gamma_pt) with gamma_pt = R^T e3.
template <class T>
T veselova_phi(const Vector& a, const T& beta, const T& gamma) {
  using std::cos;
  using std::log;
  using std::sin;
  const T g1 = sin(beta) * sin(gamma);
  const T g2 = sin(beta) * cos(gamma);
  const T g3 = cos(beta);
  return -0.5 * log(a[0] * g1 * g1 + a[1] * g2 * g2 + a[2] * g3 * g3);
}

using Rot = std::array<std::array<double, 3>, 3>;

Rot multiply(const Rot& a, const Rot& b) {
  Rot c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Rot rot_x(double t) {
  return {{{1, 0, 0}, {0, std::cos(t), -std::sin(t)}, {0, std::sin(t), std::cos(t)}}};
}

Rot rot_z(double t) {
  return {{{std::cos(t), -std::sin(t), 0}, {std::sin(t), std::cos(t), 0}, {0, 0, 1}}};
}

// Chart point (beta, gamma, alpha) of Rx(angle) R(q), with gamma and alpha
// unwrapped towards `near`.
Vector left_translate(std::span<const double> q, double angle, std::span<const double> near) {
  const Rot r = multiply(rot_x(angle), multiply(rot_z(q[2]), multiply(rot_x(q[0]), rot_z(q[1]))));
  Vector out{std::acos(std::clamp(r[2][2], -1.0, 1.0)), std::atan2(r[2][0], r[2][1]),
             std::atan2(r[0][2], -r[1][2])};
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 1; i < 3; ++i) out[i] += two_pi * std::round((near[i] - out[i]) / two_pi);
  return out;
}

}  // namespace

chaplygin::BundleSystem build_veselova(const Params& p,
                                       std::optional<geometry::ScalarField> potential) {
  const Inertia in = read(p);
  const Vector a = veselova_a_matrix(in.i1, in.i2, in.i3);
  const double pi = std::numbers::pi;
  chaplygin::BundleSystem::Definition def;
  def.name = kVeselova;
  def.n = 3;
  def.m = 2;
  def.metric = geometry::MetricField(
      3, [in](geometry::Point q) { return veselova_metric<double>(in, q); },
      [in](std::span<const Dual> q) { return veselova_metric<Dual>(in, q); });
  // Spatial angular velocity along e3: alpha' + cos(beta) gamma' = 0.
  def.constraints = geometry::Distribution::from_kernel(
      3, 2, [](geometry::Point q) { return veselova_forms<double>(q); },
      [](std::span<const Dual> q) { return veselova_forms<Dual>(q); });
  def.potential = std::move(potential);
  def.analytic_phi = geometry::ScalarField(
      2, [a](geometry::Point q) { return veselova_phi(a, q[0], q[1]); },
      [a](std::span<const Dual> q) { return veselova_phi(a, q[0], q[1]); });
  def.section_fiber = {0.0};
  def.reference_base = {pi / 2.0, 0.0};
  def.sample_box = {{0.25, -pi, -pi}, {pi - 0.25, pi, pi}};
  def.trajectory_box = {{pi / 2.0 - 0.3, -pi, -pi}, {pi / 2.0 + 0.3, pi, pi}};
  def.speed_scale = 0.1;
  return chaplygin::BundleSystem(std::move(def));
}

std::vector<CrossCheck> veselova_crosschecks(const Params& p, const std::vector<Vector>& points) {
  const Inertia in = read(p);
  const Vector a = veselova_a_matrix(in.i1, in.i2, in.i3);
  std::vector<CrossCheck> out;
  for (const Vector& q : points) {
    const Vector qbar{q[0], q[1]};
    out.push_back({"phi", qbar, scalar_matrix(veselova_phi(a, q[0], q[1]))});
    DenseMatrix d(1, 2);
    for (std::size_t axis = 0; axis < 2; ++axis) {
      d(0, axis) = numeric::derivative_dual(
          [&a](std::span<const Dual> x) { return veselova_phi(a, x[0], x[1]); }, qbar, axis);
    }
    out.push_back({"dphi", qbar, d});
  }
  return out;
}

}  // namespace nhgeo::systems::detail

namespace nhgeo::systems {

double veselova_left_translation_defect(const geometry::MetricField& metric,
                                        std::span<const double> q, double angle) {
  if (metric.dim() != 3 || q.size() != 3)
    fail(ErrorCode::invalid_argument, "left translation defect: expects the 3-dimensional chart");
  const Vector center = detail::left_translate(q, angle, q);
  const DenseMatrix jac = numeric::jacobian_fd(
      [&](std::span<const double> x) { return detail::left_translate(x, angle, center); }, q);
  const DenseMatrix pulled = jac.transposed() * metric(center) * jac;
  return max_abs(metric(q) - pulled);
}

}  // namespace nhgeo::systems
