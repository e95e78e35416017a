// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "nhgeo/geometry.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::geometry {

Vector Christoffel::contract(std::span<const double> u, std::span<const double> w) const {
  Vector out(n_, 0.0);
  for (std::size_t k = 0; k < n_; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) s += (*this)(k, i, j) * u[i] * w[j];
    out[k] = s;
  }
  return out;
}

double Christoffel::lower_asymmetry() const {
  double m = 0.0;
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        m = std::max(m, std::abs((*this)(k, i, j) - (*this)(k, j, i)));
  return m;
}

Christoffel christoffel(const MetricField& metric, Point q) {
  const std::size_t n = metric.dim();
  const DenseMatrix g = metric(q);
  const DenseMatrix g_inv = numeric::inverse(g);
  std::vector<DenseMatrix> dg;
  dg.reserve(n);
  for (std::size_t a = 0; a < n; ++a) dg.push_back(metric.partial(q, a));

  // First kind: Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  std::vector<double> first(n * n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        first[(l * n + i) * n + j] = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));

  Christoffel gamma(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += g_inv(k, l) * first[(l * n + i) * n + j];
        gamma(k, i, j) = s;
      }
  return gamma;
}

Vector first_kind_contraction(const MetricField& metric, Point q, std::span<const double> v) {
  const std::size_t n = metric.dim();
  Vector c(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    const DenseMatrix dga = metric.partial(q, a);
    // d_a g_jl v^a v^j contributes to c_l; -1/2 v^T d_l g v contributes to c_a.
    for (std::size_t l = 0; l < n; ++l) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += dga(j, l) * v[j];
      c[l] += v[a] * s;
    }
    c[a] -= 0.5 * bilinear(dga, v, v);
  }
  return c;
}

namespace {

void check_state(const MetricField& metric, std::span<const double> state) {
  if (state.size() != 2 * metric.dim())
    fail(ErrorCode::invalid_argument, "state must hold a point and a velocity of the metric's dimension");
}

}  // namespace

Vector geodesic_rhs(const MetricField& metric, std::span<const double> state) {
  return mechanical_rhs(metric, nullptr, state);
}

Vector mechanical_rhs(const MetricField& metric, const ScalarField* potential,
                      std::span<const double> state) {
  check_state(metric, state);
  const std::size_t n = metric.dim();
  const Point q = state.first(n);
  const auto v = state.subspan(n, n);
  Vector c = first_kind_contraction(metric, q, v);
  const DenseMatrix g = metric(q);
  if (potential != nullptr) {
    const Vector dv = potential->differential(q);
    for (std::size_t i = 0; i < n; ++i) c[i] += dv[i];
  }
  const Vector acc = numeric::solve_linear(g, c);
  Vector out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = v[i];
    out[n + i] = -acc[i];
  }
  return out;
}

}  // namespace nhgeo::geometry
