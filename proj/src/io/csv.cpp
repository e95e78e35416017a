// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>

#include "nhgeo/io.hpp"

namespace nhgeo::io {

namespace {

void append(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  const std::size_t n = traj.dim();
  std::string out = "t";
  for (std::size_t i = 1; i <= n; ++i) out += ",q" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) out += ",v" + std::to_string(i);
  out += '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    append(out, traj.times[k]);
    for (double x : traj.points[k]) {
      out += ',';
      append(out, x);
    }
    for (double x : traj.velocities[k]) {
      out += ',';
      append(out, x);
    }
    out += '\n';
  }
  return out;
}

}  // namespace nhgeo::io
