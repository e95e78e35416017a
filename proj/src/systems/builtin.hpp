// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nhgeo/systems.hpp"

namespace nhgeo::systems::detail {

using Params = std::map<std::string, double>;

chaplygin::BundleSystem build_disk(const Params& p, std::optional<geometry::ScalarField> potential);
chaplygin::BundleSystem build_particle(const Params& p,
                                       std::optional<geometry::ScalarField> potential);
chaplygin::BundleSystem build_veselova(const Params& p,
                                       std::optional<geometry::ScalarField> potential);

/// `points` are full chart points from the sampling box.
std::vector<CrossCheck> disk_crosschecks(const Params& p, const std::vector<Vector>& points);
std::vector<CrossCheck> particle_crosschecks(const Params& p, const std::vector<Vector>& points);
std::vector<CrossCheck> veselova_crosschecks(const Params& p, const std::vector<Vector>& points);

inline DenseMatrix scalar_matrix(double x) { return DenseMatrix(1, 1, x); }

}  // namespace nhgeo::systems::detail
