// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// Numerical certificates for a Chaplygin system and its metric h: the
// reparametrized-geodesic equivalence, psi-bar relatedness of the vector
// fields, submersion and lift identities, and the local distance identity.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/dynamics.hpp"

namespace nhgeo::verify {

using chaplygin::BundleSystem;
using geometry::Point;

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

struct EquivalenceResult {
  double residual = 0.0;        ///< sup_t |gamma(tau(t)) - c(t)|
  double image_residual = 0.0;  ///< same after matching both curves by h-arclength
  double tau_end = 0.0;
  double identity_defect = 0.0;  ///< max |tau(t) - t|
  bool tau_increasing = false;
};

/// Integrates the nonholonomic trajectory c from (q0, v0) and the h-geodesic
/// (h-mechanical trajectory when a potential is attached) from
/// (q0, exp(-phi(pi q0)) v0), then compares gamma(tau(t)) with c(t) at every
/// sample of c, using cubic Hermite interpolation of gamma.
EquivalenceResult check_equivalence(const BundleSystem& sys, Point q0, std::span<const double> v0,
                                    double t_end, const numeric::OdeStepper& stepper,
                                    const chaplygin::PhiOptions& phi = {});

/// Largest max-norm gap between Tpsi(exp(-phi) X_nh) and the h-mechanical
/// field at psi(q, v), over the given states (q, v) in D. The left side is a
/// fourth-order central difference of psi along short flows of the scaled
/// nonholonomic field with time step `epsilon`.
double check_psi_relatedness(const BundleSystem& sys, const std::vector<Vector>& points,
                             const std::vector<Vector>& velocities, double epsilon = 1e-3,
                             const chaplygin::PhiOptions& phi = {});

struct ShootingResult {
  Vector velocity;  ///< initial velocity of the connecting geodesic over [0, t]
  double endpoint_error = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline constexpr double kShootingTolerance = 1e-8;
inline constexpr int kShootingMaxIterations = 50;

/// Damped Newton on the initial velocity of geodesics of `metric` over
/// [0, t] so that they end at q1. The Jacobian is a finite-difference one.
ShootingResult shoot_geodesic(const geometry::MetricField& metric, Point q0, Point q1, double t,
                              Vector guess, const numeric::OdeStepper& stepper,
                              double tolerance = kShootingTolerance,
                              int max_iterations = kShootingMaxIterations);

struct DistanceResult {
  double length = 0.0;    ///< h-length of c on [0, t_used]
  double distance = 0.0;  ///< length of the shooting geodesic
  double residual = 0.0;
  double t_used = 0.0;
  int halvings = 0;
  int iterations = 0;
  double endpoint_error = 0.0;
};

/// |length_h(c|[0,t]) - d_h(c(0), c(t))| for the nonholonomic trajectory c
/// from (q0, v0). When shooting does not converge, t is halved (at most
/// `max_halvings` times) before giving up with ShootingDiverged.
DistanceResult check_distance(const BundleSystem& sys, Point q0, std::span<const double> v0,
                              double t_small, const numeric::OdeStepper& stepper,
                              const chaplygin::PhiOptions& phi = {}, int max_halvings = 4);

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string statement;  ///< the property being certified, in words
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> details;
  std::string note;  ///< error message when the check could not be evaluated
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  numeric::OdeStepper stepper{};
  std::size_t sample_points = 50;   ///< structural checks
  std::size_t trajectories = 2;     ///< random initial data for dynamic checks
  std::size_t psi_states = 20;
  double conservation_horizon = 10.0;
  double equivalence_horizon = 5.0;
  double t_small = 0.3;
  std::map<std::string, double> tolerances;  ///< overrides by check name
};

/// Names of every check run_suite can emit, sorted.
const std::vector<std::string>& check_names();

/// Default tolerance for a check on a given system.
double default_tolerance(const std::string& check, const std::string& system);

/// Throws InvalidArgument for unknown override names or non-positive values.
void validate(const SuiteConfig& config);

struct VerificationReport {
  std::string system;
  std::uint64_t seed = 0;
  numeric::OdeStepper stepper;
  SuiteConfig config;
  std::vector<CheckResult> checks;  ///< sorted by name
  /// Informational numbers that never affect all_pass(). Currently only the
  /// left-translation defects of g and h on the rotation group.
  std::vector<std::pair<std::string, double>> diagnostics;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs every check sequentially with seeded sampling. Failures (including
/// thrown numerical errors) are recorded in the report, never thrown.
VerificationReport run_suite(const BundleSystem& sys, const SuiteConfig& config = {});

}  // namespace nhgeo::verify
