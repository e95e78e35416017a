// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "nhgeo/dynamics.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::dynamics {

bool TimeMap::strictly_increasing() const {
  for (std::size_t k = 1; k < tau.size(); ++k)
    if (!(tau[k] > tau[k - 1])) return false;
  return true;
}

TimeMap time_map(const BundleSystem& sys, const Trajectory& nh_traj,
                 const chaplygin::PhiOptions& options) {
  nh_traj.validate();
  const geometry::ScalarField phi = chaplygin::phi_field(sys, options);
  std::vector<double> rate(nh_traj.size());
  for (std::size_t k = 0; k < nh_traj.size(); ++k)
    rate[k] = std::exp(phi(sys.project(nh_traj.points[k])));
  TimeMap map;
  map.t = nh_traj.times;
  map.tau = numeric::cumulative_simpson(nh_traj.times, rate);
  return map;
}

}  // namespace nhgeo::dynamics
