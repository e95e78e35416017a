// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// Chaplygin systems in a bundle-adapted chart: the projection pi keeps the
// first m coordinates (the base), the remaining n - m coordinates are fiber
// coordinates and span the vertical bundle.

#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nhgeo/geometry.hpp"

namespace nhgeo::chaplygin {

using geometry::Point;

/// Axis-aligned box used for seeded random sampling.
struct SampleBox {
  Vector lo;
  Vector hi;

  std::size_t dim() const noexcept { return lo.size(); }
  Vector sample(std::mt19937_64& rng) const;
  Vector center() const;
};

class BundleSystem {
 public:
  struct Definition {
    std::string name;
    std::size_t n = 0;  ///< total dimension
    std::size_t m = 0;  ///< base dimension
    geometry::MetricField metric;
    /// Rank-m distribution; in kernel form its n - m rows are the mu^a.
    geometry::Distribution constraints;
    std::optional<geometry::ScalarField> potential;     ///< on the base
    std::optional<geometry::ScalarField> analytic_phi;  ///< on the base
    Vector section_fiber;   ///< fiber coordinates of sigma(qbar)
    Vector reference_base;  ///< basepoint for phi recovery
    SampleBox sample_box;   ///< full-chart box for randomized checks
    SampleBox trajectory_box;  ///< full-chart box for trajectory initial points
    double speed_scale = 1.0;  ///< magnitude of random base velocities
  };

  explicit BundleSystem(Definition def);

  const std::string& name() const noexcept { return def_.name; }
  std::size_t dim() const noexcept { return def_.n; }
  std::size_t base_dim() const noexcept { return def_.m; }
  std::size_t fiber_dim() const noexcept { return def_.n - def_.m; }
  const geometry::MetricField& metric() const noexcept { return def_.metric; }
  const geometry::Distribution& constraints() const noexcept { return def_.constraints; }
  const std::optional<geometry::ScalarField>& potential() const noexcept { return def_.potential; }
  const std::optional<geometry::ScalarField>& analytic_phi() const noexcept {
    return def_.analytic_phi;
  }
  const Vector& section_fiber() const noexcept { return def_.section_fiber; }
  const Vector& reference_base() const noexcept { return def_.reference_base; }
  const SampleBox& sample_box() const noexcept { return def_.sample_box; }
  const SampleBox& trajectory_box() const noexcept { return def_.trajectory_box; }
  double speed_scale() const noexcept { return def_.speed_scale; }

  /// sigma(qbar) = (qbar, section_fiber)
  Vector section(Point qbar) const;
  /// pi(q): the first m coordinates.
  Vector project(Point q) const;
  /// V o pi on the full chart, when a potential is attached.
  std::optional<geometry::ScalarField> potential_on_total() const;

  /// Copy with the potential replaced (or removed).
  BundleSystem with_potential(std::optional<geometry::ScalarField> potential) const;

 private:
  Definition def_;
};

/// Structural invariants at one chart point: g positive definite,
/// constraints of full rank, D transversal to the fiber (fiber block of the
/// constraint rows invertible). Throws DomainError / RankDeficient.
void check_structure(const BundleSystem& sys, Point q);

/// Largest change of g over a fiber translation of `shift` at q.
double fiber_invariance_defect(const BundleSystem& sys, Point q, double shift);

// ---------------------------------------------------------------------------
// Horizontal lifts and reduced data
// ---------------------------------------------------------------------------

/// Unique v in D_q with pi_* v = w; fiber part from an (n-m)x(n-m) solve.
Vector horizontal_lift(const BundleSystem& sys, Point q, std::span<const double> w);

/// n x m matrix whose columns are the lifts of the base coordinate fields.
DenseMatrix lift_matrix(const BundleSystem& sys, Point q);

/// gbar(qbar) evaluated on the section point sigma(qbar).
DenseMatrix reduced_metric(const BundleSystem& sys, Point qbar);
/// gbar computed from the fiber representative q instead of the section.
DenseMatrix reduced_metric_at(const BundleSystem& sys, Point q);

/// Coefficients C^c_ab of the gyroscopic tensor at a base point.
struct GyroscopicField {
  Vector base_point;
  std::size_t m = 0;
  std::vector<double> coeff;  ///< index (c * m + a) * m + b

  double operator()(std::size_t c, std::size_t a, std::size_t b) const {
    return coeff[(c * m + a) * m + b];
  }
  double& operator()(std::size_t c, std::size_t a, std::size_t b) {
    return coeff[(c * m + a) * m + b];
  }
  /// max |C^c_ab + C^c_ba|
  double antisymmetry_defect() const;
};

/// Projected bracket of horizontal lifts of base coordinate fields, pushed to
/// the base. Brackets use finite-difference Jacobians of the lift map.
GyroscopicField gyroscopic_tensor(const BundleSystem& sys, Point qbar);
GyroscopicField gyroscopic_tensor_at(const BundleSystem& sys, Point q);

// ---------------------------------------------------------------------------
// phi recovery
// ---------------------------------------------------------------------------

inline constexpr double kPhiSimpleThreshold = 1e-6;
inline constexpr double kClosednessThreshold = 1e-5;

struct PhiDifferential {
  Vector dphi;
  double residual = 0.0;  ///< max deviation of C from the phi-simple pattern
};

/// Fit C^c_ab = d_b phi delta^c_a - d_a phi delta^c_b. d_b phi is the mean of
/// C^a_ab over a != b. Throws NotPhiSimple when the residual exceeds
/// `threshold`, InvalidArgument when m < 2.
PhiDifferential recover_dphi(const GyroscopicField& c, double threshold = kPhiSimpleThreshold);

/// Recovered dphi at a base point without the threshold check.
PhiDifferential dphi_fit(const BundleSystem& sys, Point qbar);

/// max over a<b of |d_a (dphi)_b - d_b (dphi)_a| by central differences.
double dphi_curl(const BundleSystem& sys, Point qbar);

enum class PhiSource { automatic, analytic, recovered };

struct PhiOptions {
  PhiSource source = PhiSource::automatic;  ///< automatic: analytic when attached
  double threshold = kPhiSimpleThreshold;
  int panels = 64;
  std::optional<Vector> basepoint;  ///< defaults to the system's reference base
  bool check_closedness = true;
};

/// Line integral of the recovered dphi along the straight segment
/// qbar0 -> qbar, pinned to analytic_phi(qbar0) when available (else 0).
double recover_phi(const BundleSystem& sys, Point qbar0, Point qbar,
                   const PhiOptions& options = {});

/// phi as a field on the base according to `options`.
geometry::ScalarField phi_field(const BundleSystem& sys, const PhiOptions& options = {});

// ---------------------------------------------------------------------------
// Constructed metrics
// ---------------------------------------------------------------------------

// `mode` selects how derivatives of the constructed metrics are taken. With
// DiffMode::dual the returned field carries a dual-number evaluator whenever
// g, the constraint rows and phi all have one (exact Christoffels); otherwise,
// or with DiffMode::finite_difference, derivatives use the FD stencil.

/// g_can = exp(2 phi) gbar on the base.
geometry::MetricField canonical_metric(const BundleSystem& sys, const PhiOptions& options = {},
                                       geometry::DiffMode mode = geometry::DiffMode::dual);

/// The metric h on the total space: equal to g_can through pi on D, to g on
/// the vertical bundle, and making D and the vertical bundle orthogonal.
/// H(q) = B^{-T} blockdiag(g_can(pi q), g_vv(q)) B^{-1} with
/// B = [lifts of base coordinate fields | fiber coordinate fields].
geometry::MetricField principal_metric(const BundleSystem& sys, const PhiOptions& options = {},
                                       geometry::DiffMode mode = geometry::DiffMode::dual);

}  // namespace nhgeo::chaplygin
