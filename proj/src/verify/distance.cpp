// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nhgeo/numeric.hpp"
#include "nhgeo/verify.hpp"

namespace nhgeo::verify {

namespace {

double max_norm(const Vector& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

}  // namespace

ShootingResult shoot_geodesic(const geometry::MetricField& metric, Point q0, Point q1, double t,
                              Vector guess, const numeric::OdeStepper& stepper, double tolerance,
                              int max_iterations) {
  const std::size_t n = metric.dim();
  if (q0.size() != n || q1.size() != n || guess.size() != n)
    fail(ErrorCode::invalid_argument, "shooting: dimension mismatch");
  auto endpoint = [&](std::span<const double> u) {
    return dynamics::integrate_geodesic(metric, q0, u, t, stepper).points.back();
  };
  auto miss = [&](std::span<const double> u) {
    Vector r = endpoint(u);
    for (std::size_t i = 0; i < n; ++i) r[i] -= q1[i];
    return r;
  };

  ShootingResult out;
  out.velocity = std::move(guess);
  Vector f = miss(out.velocity);
  out.endpoint_error = max_norm(f);
  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    if (out.endpoint_error <= tolerance) {
      out.converged = true;
      return out;
    }
    const DenseMatrix jac = numeric::jacobian_fd(endpoint, out.velocity);
    Vector step = numeric::solve_linear(jac, f);
    bool accepted = false;
    for (double damping = 1.0; damping >= 0x1.0p-10; damping *= 0.5) {
      Vector trial = out.velocity;
      for (std::size_t i = 0; i < n; ++i) trial[i] -= damping * step[i];
      Vector f_trial = miss(trial);
      const double err = max_norm(f_trial);
      if (err < out.endpoint_error) {
        out.velocity = std::move(trial);
        f = std::move(f_trial);
        out.endpoint_error = err;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.converged = out.endpoint_error <= tolerance;
  return out;
}

DistanceResult check_distance(const BundleSystem& sys, Point q0, std::span<const double> v0,
                              double t_small, const numeric::OdeStepper& stepper,
                              const chaplygin::PhiOptions& phi, int max_halvings) {
  if (!(t_small > 0.0)) fail(ErrorCode::invalid_argument, "distance check: t_small must be positive");
  const geometry::MetricField h = chaplygin::principal_metric(sys, phi);
  DistanceResult out;
  double t = t_small;
  for (out.halvings = 0; out.halvings <= max_halvings; ++out.halvings, t *= 0.5) {
    const Trajectory c = dynamics::integrate_nonholonomic(sys, q0, v0, t, stepper);
    Vector guess(c.points.back());
    for (std::size_t i = 0; i < guess.size(); ++i) guess[i] = (guess[i] - c.points.front()[i]) / t;
    ShootingResult shot;
    try {
      shot = shoot_geodesic(h, c.points.front(), c.points.back(), t, std::move(guess), stepper);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::singular_matrix && e.code() != ErrorCode::non_finite_state &&
          e.code() != ErrorCode::evaluation_failure && e.code() != ErrorCode::domain_error)
        throw;
      continue;
    }
    if (!shot.converged) continue;
    const Trajectory geo = dynamics::integrate_geodesic(h, c.points.front(), shot.velocity, t, stepper);
    out.length = geometry::curve_length(h, c);
    out.distance = geometry::curve_length(h, geo);
    out.residual = std::abs(out.length - out.distance);
    out.t_used = t;
    out.iterations = shot.iterations;
    out.endpoint_error = shot.endpoint_error;
    return out;
  }
  std::ostringstream msg;
  msg << "shooting did not reach the endpoint tolerance " << kShootingTolerance << " within "
      << kShootingMaxIterations << " iterations, down to t = " << 2.0 * t;
  fail(ErrorCode::shooting_diverged, msg.str());
}

}  // namespace nhgeo::verify
