// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "nhgeo/trajectory.hpp"
#include "nhgeo/verify.hpp"

namespace nhgeo::io {

/// Header `t,q1..qn,v1..vn`, one sample per line, %.17g, LF endings.
std::string trajectory_csv(const Trajectory& traj);

/// Shortest round-trip decimal for a finite double.
std::string format_number(double x);

/// Pretty-printed JSON report with a trailing newline. Non-finite residuals
/// are written as null.
std::string report_json(const verify::VerificationReport& report);

}  // namespace nhgeo::io
