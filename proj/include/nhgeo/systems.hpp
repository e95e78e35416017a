// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// Built-in Chaplygin systems in bundle-adapted charts (base coordinates first):
//
//   vertical-disk          (theta, varphi | x, y)   params m, R, I, J
//   nonholonomic-particle  (x, y | z)               param exponent (constraint zdot = y^e xdot)
//   veselova               (beta, gamma | alpha)    params I1, I2, I3  (ZXZ Euler angles)
//
// Sampling boxes used by the randomized checks:
//   vertical-disk          theta, varphi in [-pi, pi], x, y in [-2, 2]
//   nonholonomic-particle  x, y, z in [-2, 2]
//   veselova               beta in [0.25, pi - 0.25], gamma, alpha in [-pi, pi]
// Trajectory initial points are drawn from the same boxes, except for
// veselova where beta starts in [pi/2 - 0.3, pi/2 + 0.3] with slow base
// velocities so ten time units stay inside the Euler-angle chart.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nhgeo/chaplygin.hpp"

namespace nhgeo::systems {

enum class PotentialKind { none, quadratic };

/// Vbar = k/2 * qbar[axis]^2 (axis defaults to the last base coordinate).
struct PotentialSpec {
  PotentialKind kind = PotentialKind::none;
  double k = 1.0;
  std::optional<std::size_t> axis;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

struct SystemDescriptor {
  std::string name;
  std::map<std::string, double> parameters;  ///< missing keys take defaults
  PotentialSpec potential;
};

inline constexpr const char* kVerticalDisk = "vertical-disk";
inline constexpr const char* kParticle = "nonholonomic-particle";
inline constexpr const char* kVeselova = "veselova";

const std::vector<std::string>& system_names();

/// Default parameters; throws InvalidParameters for unknown names.
std::map<std::string, double> default_parameters(const std::string& name);

/// Descriptor with defaults filled in; throws InvalidParameters on unknown
/// names/keys, non-positive physical parameters or a bad potential axis.
SystemDescriptor normalized(const SystemDescriptor& descriptor);

chaplygin::BundleSystem build(const SystemDescriptor& descriptor);

/// Veselova: A = diag(sqrt(I2 I3 / I1), sqrt(I1 I3 / I2), sqrt(I1 I2 / I3)).
Vector veselova_a_matrix(double i1, double i2, double i3);

/// Veselova chart only: max entry of M(q) - J^T M(Lq) J, where Lq is the
/// chart point of Rx(angle) R(q) and J the Jacobian of q -> Lq. Zero for
/// metrics invariant under left translations. Throws DomainError when Lq
/// leaves the chart.
double veselova_left_translation_defect(const geometry::MetricField& metric,
                                        std::span<const double> q, double angle);

/// One expected value for the cross-check tables. `point` is a full chart
/// point for quantity "h" and a base point otherwise. Scalars are 1x1,
/// differentials 1xm.
struct CrossCheck {
  std::string quantity;  ///< "h", "gbar", "g_can", "phi", "dphi"
  Vector point;
  DenseMatrix expected;
};

/// Closed-form values at `count` seeded points of the sampling box.
/// Veselova only carries phi/dphi entries; its reduced metric is checked
/// intrinsically (fiber invariance, phi-simplicity, phi match).
std::vector<CrossCheck> analytic_crosschecks(const SystemDescriptor& descriptor,
                                             std::uint64_t seed, std::size_t count);

}  // namespace nhgeo::systems
