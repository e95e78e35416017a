// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/geometry.hpp"
#include "nhgeo/numeric.hpp"
#include "nhgeo/trajectory.hpp"

namespace nhgeo::dynamics {

using chaplygin::BundleSystem;
using geometry::Point;

/// States with |mu^a(qdot)| above this are rejected by lda_rhs.
inline constexpr double kConstraintTolerance = 1e-8;
/// Initial velocities violating the constraints by at most this much are
/// g-orthogonally projected onto D (with a warning); larger ones are errors.
inline constexpr double kProjectionLimit = 1e-6;

struct LdaSolveResult {
  Vector acceleration;
  Vector multipliers;               ///< lambda_a
  double constraint_residual = 0.;  ///< max |A qddot + (dA/dt) qdot|
};

/// Lagrange-d'Alembert accelerations and multipliers from the saddle system
///   [ g   A^T ] [ qddot ]   [ F             ]
///   [ A   0   ] [ -lam  ] = [ -(dA/dt) qdot ]
/// with F = -Gamma_first(qdot, qdot) - dV. Throws ConstraintViolated when
/// qdot is off D by more than 1e-8, SingularSaddle when A is rank deficient.
LdaSolveResult lda_rhs(const BundleSystem& sys, Point q, std::span<const double> v);

/// Same solve without the precondition check (used inside integrators, where
/// the state drifts off D at truncation level).
LdaSolveResult lda_solve(const BundleSystem& sys, Point q, std::span<const double> v);

/// Apply the initial-velocity admission rule. Appends a warning when a
/// projection happened.
Vector admissible_velocity(const BundleSystem& sys, Point q, std::span<const double> v,
                           std::vector<std::string>* warnings);

Trajectory integrate_nonholonomic(const BundleSystem& sys, Point q0, std::span<const double> v0,
                                  double t_end, const numeric::OdeStepper& stepper);

Trajectory integrate_geodesic(const geometry::MetricField& metric, Point q0,
                              std::span<const double> v0, double t_end,
                              const numeric::OdeStepper& stepper);

/// `potential` may be null (then identical to integrate_geodesic).
Trajectory integrate_mechanical(const geometry::MetricField& metric,
                                const geometry::ScalarField* potential, Point q0,
                                std::span<const double> v0, double t_end,
                                const numeric::OdeStepper& stepper);

/// Predicted reparametrization tau(t) = int_0^t exp(phi(pi(c(s)))) ds,
/// tabulated on the samples of the nonholonomic trajectory.
struct TimeMap {
  std::vector<double> t;
  std::vector<double> tau;

  bool strictly_increasing() const;
};

TimeMap time_map(const BundleSystem& sys, const Trajectory& nh_traj,
                 const chaplygin::PhiOptions& options = {});

/// max_t max_a |mu^a(cdot(t))|
double max_constraint_violation(const BundleSystem& sys, const Trajectory& traj);

/// max_t |E(t) - E(0)| / max(|E(0)|, tiny)
double max_relative_energy_drift(const geometry::MetricField& metric,
                                 const geometry::ScalarField* potential, const Trajectory& traj);

}  // namespace nhgeo::dynamics
