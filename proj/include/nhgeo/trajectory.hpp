// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nhgeo/matrix.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo {

struct TrajectoryMeta {
  numeric::OdeStepper stepper;
  std::string system;
  std::string kind;  ///< "nonholonomic", "geodesic", "mechanical", ...
  std::vector<std::string> warnings;
};

/// Time-stamped (point, velocity) samples of a curve in one chart.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> points;
  std::vector<Vector> velocities;
  TrajectoryMeta meta;

  std::size_t size() const noexcept { return times.size(); }
  std::size_t dim() const noexcept { return points.empty() ? 0 : points.front().size(); }

  /// Throws InvalidArgument unless times strictly increase and every sample
  /// has the same dimension.
  void validate() const;

  /// Build from a first-order solution whose states are (q, qdot) stacked.
  static Trajectory from_ode(const numeric::OdeSolution& sol, std::size_t dim, TrajectoryMeta meta);
};

/// Cubic Hermite interpolation of the configuration at time t, using the
/// stored velocities as end-point slopes. t must lie inside the sampled range.
Vector interpolate_point(const Trajectory& traj, double t);

}  // namespace nhgeo
