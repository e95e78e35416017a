// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "nhgeo/verify.hpp"

namespace nhgeo::verify {

namespace {

double max_gap(const Vector& a, const Vector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<double> arclength(const geometry::MetricField& h, const Trajectory& traj) {
  std::vector<double> speed(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k)
    speed[k] = std::sqrt(std::max(0.0, bilinear(h(traj.points[k]), traj.velocities[k],
                                                traj.velocities[k])));
  return numeric::cumulative_simpson(traj.times, speed);
}

// Parameter of `traj` at which its arclength reaches s (linear in between).
double parameter_at(const Trajectory& traj, const std::vector<double>& s_of_t, double s) {
  auto it = std::lower_bound(s_of_t.begin(), s_of_t.end(), s);
  if (it == s_of_t.begin()) return traj.times.front();
  if (it == s_of_t.end()) return traj.times.back();
  const std::size_t k = static_cast<std::size_t>(it - s_of_t.begin());
  const double span = s_of_t[k] - s_of_t[k - 1];
  const double w = span > 0.0 ? (s - s_of_t[k - 1]) / span : 0.0;
  return traj.times[k - 1] + w * (traj.times[k] - traj.times[k - 1]);
}

}  // namespace

EquivalenceResult check_equivalence(const BundleSystem& sys, Point q0, std::span<const double> v0,
                                    double t_end, const numeric::OdeStepper& stepper,
                                    const chaplygin::PhiOptions& phi) {
  const Trajectory c = dynamics::integrate_nonholonomic(sys, q0, v0, t_end, stepper);
  const dynamics::TimeMap tm = dynamics::time_map(sys, c, phi);

  const geometry::ScalarField phi_f = chaplygin::phi_field(sys, phi);
  const double scale = std::exp(-phi_f(sys.project(q0)));
  Vector w0 = c.velocities.front();
  for (double& x : w0) x *= scale;

  const geometry::MetricField h = chaplygin::principal_metric(sys, phi);
  const auto v_total = sys.potential_on_total();
  const double tau_end = tm.tau.back();
  const Trajectory gamma = dynamics::integrate_mechanical(
      h, v_total ? &*v_total : nullptr, c.points.front(), w0, tau_end + stepper.step, stepper);

  EquivalenceResult out;
  out.tau_end = tau_end;
  out.tau_increasing = tm.strictly_increasing();
  for (std::size_t k = 0; k < c.size(); ++k) {
    out.identity_defect = std::max(out.identity_defect, std::abs(tm.tau[k] - tm.t[k]));
    out.residual = std::max(out.residual, max_gap(interpolate_point(gamma, tm.tau[k]), c.points[k]));
  }

  const std::vector<double> s_c = arclength(h, c);
  const std::vector<double> s_g = arclength(h, gamma);
  if (s_c.back() > 0.0 && s_c.back() <= s_g.back()) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double tau = parameter_at(gamma, s_g, s_c[k]);
      out.image_residual =
          std::max(out.image_residual, max_gap(interpolate_point(gamma, tau), c.points[k]));
    }
  } else {
    out.image_residual = out.residual;
  }
  return out;
}

}  // namespace nhgeo::verify
