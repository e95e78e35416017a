// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "nhgeo/verify.hpp"

namespace nhgeo::verify {

double check_psi_relatedness(const BundleSystem& sys, const std::vector<Vector>& points,
                             const std::vector<Vector>& velocities, double epsilon,
                             const chaplygin::PhiOptions& phi) {
  if (points.size() != velocities.size())
    fail(ErrorCode::invalid_argument, "psi check: points and velocities differ in count");
  if (!(epsilon > 0.0)) fail(ErrorCode::invalid_argument, "psi check: epsilon must be positive");
  const std::size_t n = sys.dim();
  const geometry::ScalarField phi_f = chaplygin::phi_field(sys, phi);
  const geometry::MetricField h = chaplygin::principal_metric(sys, phi);
  const auto v_total = sys.potential_on_total();

  auto rate = [&](std::span<const double> y) { return std::exp(-phi_f(sys.project(y.first(n)))); };
  auto scaled_field = [&](std::span<const double> y, double sign) {
    const auto r = dynamics::lda_solve(sys, y.first(n), y.subspan(n, n));
    const double s = sign * rate(y);
    numeric::State out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = s * y[n + i];
      out[n + i] = s * r.acceleration[i];
    }
    return out;
  };
  auto psi = [&](std::span<const double> y) {
    const double s = rate(y);
    Vector out(y.begin(), y.end());
    for (std::size_t i = n; i < 2 * n; ++i) out[i] *= s;
    return out;
  };
  // Flow of the scaled field for signed time s, two RK4 substeps.
  auto flow = [&](const numeric::State& y0, double s) {
    const double sign = s < 0.0 ? -1.0 : 1.0;
    const numeric::OdeRhs f = [&, sign](std::span<const double> y) { return scaled_field(y, sign); };
    numeric::State y = y0;
    for (int i = 0; i < 2; ++i) y = numeric::rk4_step(f, y, std::abs(s) / 2.0);
    return y;
  };

  double worst = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    numeric::State y0(points[k].begin(), points[k].end());
    y0.insert(y0.end(), velocities[k].begin(), velocities[k].end());
    const Vector lhs = numeric::detail::fd_combine(
        psi(flow(y0, -2.0 * epsilon)), psi(flow(y0, -epsilon)), psi(flow(y0, epsilon)),
        psi(flow(y0, 2.0 * epsilon)), epsilon);
    const Vector rhs = geometry::mechanical_rhs(h, v_total ? &*v_total : nullptr, psi(y0));
    for (std::size_t i = 0; i < 2 * n; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  }
  return worst;
}

}  // namespace nhgeo::verify
