// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "nhgeo/geometry.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::geometry {

double curve_length(const MetricField& metric, const Trajectory& traj) {
  traj.validate();
  std::vector<double> speed(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double sq = bilinear(metric(traj.points[k]), traj.velocities[k], traj.velocities[k]);
    speed[k] = std::sqrt(std::max(sq, 0.0));
  }
  return numeric::simpson_samples(traj.times, speed);
}

}  // namespace nhgeo::geometry
