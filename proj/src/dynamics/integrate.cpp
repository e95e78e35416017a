// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "nhgeo/dynamics.hpp"

namespace nhgeo::dynamics {

namespace {

numeric::State stack(Point q, std::span<const double> v) {
  numeric::State y(q.begin(), q.end());
  y.insert(y.end(), v.begin(), v.end());
  return y;
}

void check_horizon(double t_end) {
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    fail(ErrorCode::invalid_argument, "integration horizon must be positive");
}

}  // namespace

Trajectory integrate_nonholonomic(const BundleSystem& sys, Point q0, std::span<const double> v0,
                                  double t_end, const numeric::OdeStepper& stepper) {
  check_horizon(t_end);
  if (q0.size() != sys.dim()) fail(ErrorCode::invalid_argument, "initial point has wrong dimension");
  TrajectoryMeta meta{stepper, sys.name(), "nonholonomic", {}};
  const Vector v_start = admissible_velocity(sys, q0, v0, &meta.warnings);
  const std::size_t n = sys.dim();
  numeric::OdeRhs rhs = [&sys, n](std::span<const double> y) {
    const Point q = y.first(n);
    const auto v = y.subspan(n, n);
    const LdaSolveResult r = lda_solve(sys, q, v);
    numeric::State out(v.begin(), v.end());
    out.insert(out.end(), r.acceleration.begin(), r.acceleration.end());
    return out;
  };
  const auto sol = numeric::integrate_ode(rhs, stack(q0, v_start), t_end, stepper);
  return Trajectory::from_ode(sol, n, std::move(meta));
}

Trajectory integrate_mechanical(const geometry::MetricField& metric,
                                const geometry::ScalarField* potential, Point q0,
                                std::span<const double> v0, double t_end,
                                const numeric::OdeStepper& stepper) {
  check_horizon(t_end);
  const std::size_t n = metric.dim();
  if (q0.size() != n || v0.size() != n)
    fail(ErrorCode::invalid_argument, "initial state has wrong dimension");
  numeric::OdeRhs rhs = [&metric, potential](std::span<const double> y) {
    return geometry::mechanical_rhs(metric, potential, y);
  };
  const auto sol = numeric::integrate_ode(rhs, stack(q0, v0), t_end, stepper);
  return Trajectory::from_ode(sol, n,
                              TrajectoryMeta{stepper, "", potential ? "mechanical" : "geodesic", {}});
}

Trajectory integrate_geodesic(const geometry::MetricField& metric, Point q0,
                              std::span<const double> v0, double t_end,
                              const numeric::OdeStepper& stepper) {
  return integrate_mechanical(metric, nullptr, q0, v0, t_end, stepper);
}

double max_constraint_violation(const BundleSystem& sys, const Trajectory& traj) {
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k)
    worst = std::max(worst, sys.constraints().violation(traj.points[k], traj.velocities[k]));
  return worst;
}

double max_relative_energy_drift(const geometry::MetricField& metric,
                                 const geometry::ScalarField* potential, const Trajectory& traj) {
  if (traj.size() == 0) return 0.0;
  const double e0 = geometry::energy(metric, potential, traj.points[0], traj.velocities[0]);
  const double scale = std::max(std::abs(e0), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double e = geometry::energy(metric, potential, traj.points[k], traj.velocities[k]);
    worst = std::max(worst, std::abs(e - e0) / scale);
  }
  return worst;
}

}  // namespace nhgeo::dynamics
