// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <string>

#include "nhgeo/trajectory.hpp"

namespace nhgeo {

void Trajectory::validate() const {
  if (points.size() != times.size() || velocities.size() != times.size())
    fail(ErrorCode::invalid_argument, "trajectory: sample arrays have different lengths");
  const std::size_t n = dim();
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (points[k].size() != n || velocities[k].size() != n)
      fail(ErrorCode::invalid_argument,
           "trajectory: inconsistent state dimension at sample " + std::to_string(k));
    if (k > 0 && !(times[k] > times[k - 1]))
      fail(ErrorCode::invalid_argument, "trajectory: times must be strictly increasing");
  }
}

Trajectory Trajectory::from_ode(const numeric::OdeSolution& sol, std::size_t dim,
                                TrajectoryMeta meta) {
  Trajectory t;
  t.times = sol.times;
  t.points.reserve(sol.states.size());
  t.velocities.reserve(sol.states.size());
  for (const auto& s : sol.states) {
    t.points.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(dim));
    t.velocities.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(dim), s.end());
  }
  t.meta = std::move(meta);
  return t;
}

Vector interpolate_point(const Trajectory& traj, double t) {
  if (traj.size() == 0) fail(ErrorCode::invalid_argument, "interpolate_point: empty trajectory");
  const double t0 = traj.times.front();
  const double t1 = traj.times.back();
  const double slack = 1e-12 * std::max(1.0, std::abs(t1));
  if (t < t0 - slack || t > t1 + slack)
    fail(ErrorCode::domain_error, "interpolate_point: time " + std::to_string(t) +
                                      " outside sampled range");
  if (traj.size() == 1) return traj.points.front();
  t = std::clamp(t, t0, t1);
  auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - traj.times.begin());
  hi = std::clamp<std::size_t>(hi, 1, traj.size() - 1);
  const std::size_t lo = hi - 1;
  const double h = traj.times[hi] - traj.times[lo];
  const double s = (t - traj.times[lo]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const auto& p0 = traj.points[lo];
  const auto& p1 = traj.points[hi];
  const auto& v0 = traj.velocities[lo];
  const auto& v1 = traj.velocities[hi];
  Vector out(p0.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = h00 * p0[i] + h10 * h * v0[i] + h01 * p1[i] + h11 * h * v1[i];
  return out;
}

}  // namespace nhgeo
