// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// Metric fields, distributions, Levi-Civita data, g-orthogonal projections,
// gradients and the geodesic / mechanical vector fields.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nhgeo/dual.hpp"
#include "nhgeo/matrix.hpp"
#include "nhgeo/trajectory.hpp"

namespace nhgeo::geometry {

using Point = std::span<const double>;

enum class DiffMode { dual, finite_difference };

/// Smooth real function on a chart, optionally with a dual-number evaluator
/// for exact derivatives.
class ScalarField {
 public:
  using Evaluator = std::function<double(Point)>;
  using DualEvaluator = std::function<Dual(std::span<const Dual>)>;

  ScalarField() = default;
  ScalarField(std::size_t dim, Evaluator f);
  ScalarField(std::size_t dim, Evaluator f, DualEvaluator f_dual);

  std::size_t dim() const noexcept { return dim_; }
  DiffMode mode() const noexcept { return dual_ ? DiffMode::dual : DiffMode::finite_difference; }

  double operator()(Point q) const;

  /// dF at q: dual path when available, otherwise the fourth-order stencil.
  Vector differential(Point q) const;
  /// Always the finite-difference path (used for cross-checks).
  Vector differential_fd(Point q) const;

  bool has_dual() const noexcept { return static_cast<bool>(dual_); }
  /// Throws InvalidArgument when no dual evaluator is attached.
  Dual evaluate_dual(std::span<const Dual> q) const;

  /// Compose with the projection onto the first `base_dim` coordinates of a
  /// `total_dim` chart (V = Vbar o pi).
  ScalarField pulled_back(std::size_t total_dim) const;

 private:
  std::size_t dim_ = 0;
  Evaluator f_;
  DualEvaluator dual_;
};

/// Point -> symmetric positive definite matrix, evaluated on demand.
class MetricField {
 public:
  using Evaluator = std::function<DenseMatrix(Point)>;
  using DualEvaluator = std::function<BasicMatrix<Dual>(std::span<const Dual>)>;

  MetricField() = default;
  MetricField(std::size_t dim, Evaluator f);
  MetricField(std::size_t dim, Evaluator f, DualEvaluator f_dual);

  std::size_t dim() const noexcept { return dim_; }
  DiffMode mode() const noexcept { return dual_ ? DiffMode::dual : DiffMode::finite_difference; }

  DenseMatrix operator()(Point q) const;

  /// d g / d q_axis, using the field's differentiation mode.
  DenseMatrix partial(Point q, std::size_t axis) const;
  DenseMatrix partial_fd(Point q, std::size_t axis) const;

  bool has_dual() const noexcept { return static_cast<bool>(dual_); }
  /// Throws InvalidArgument when no dual evaluator is attached.
  BasicMatrix<Dual> evaluate_dual(std::span<const Dual> q) const;

  /// Same evaluator, derivatives forced through finite differences.
  MetricField without_dual() const { return MetricField(dim_, f_); }

  /// Throws DomainError unless g(q) is symmetric within 1e-12 (relative)
  /// and Cholesky succeeds.
  void check_at(Point q) const;

 private:
  std::size_t dim_ = 0;
  Evaluator f_;
  DualEvaluator dual_;
};

/// Rank-k distribution on an n-dimensional chart, given either by k spanning
/// vector fields or as the common kernel of n-k one-forms.
class Distribution {
 public:
  using Generator = std::function<DenseMatrix(Point)>;
  using DualGenerator = std::function<BasicMatrix<Dual>(std::span<const Dual>)>;

  Distribution() = default;

  /// `columns(q)` returns an n x k matrix whose columns span D_q.
  static Distribution from_span(std::size_t n, std::size_t k, Generator columns);
  /// `forms(q)` returns an (n-k) x n matrix whose rows are the one-forms mu^a.
  static Distribution from_kernel(std::size_t n, std::size_t k, Generator forms);
  /// Kernel form with a dual-number evaluator of the same rows.
  static Distribution from_kernel(std::size_t n, std::size_t k, Generator forms,
                                  DualGenerator dual_forms);

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t rank() const noexcept { return k_; }
  bool kernel_form() const noexcept { return kernel_; }

  /// n x k spanning matrix (converted from kernel form if necessary).
  DenseMatrix span_basis(Point q) const;
  /// (n-k) x n constraint rows (converted from span form if necessary).
  DenseMatrix forms(Point q) const;

  bool has_dual_forms() const noexcept { return static_cast<bool>(dual_gen_); }
  BasicMatrix<Dual> forms_dual(std::span<const Dual> q) const;

  /// max_a |mu^a(v)|, measured with the constraint rows as given.
  double violation(Point q, std::span<const double> v) const;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  bool kernel_ = true;
  Generator gen_;
  DualGenerator dual_gen_;
};

/// Complement tolerance for the pivoted Gram-Schmidt conversions.
inline constexpr double kComplementTolerance = 1e-10;

/// Orthonormal basis (as columns) of the Euclidean orthogonal complement of
/// the column space of `vectors`, expected to have dimension `count`.
/// Throws RankDeficient when the inputs do not have full rank.
DenseMatrix orthogonal_complement(const DenseMatrix& vectors, std::size_t count);

/// Gamma^k_ij, stored k-major.
class Christoffel {
 public:
  explicit Christoffel(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}

  std::size_t dim() const noexcept { return n_; }
  double& operator()(std::size_t k, std::size_t i, std::size_t j) { return data_[(k * n_ + i) * n_ + j]; }
  double operator()(std::size_t k, std::size_t i, std::size_t j) const {
    return data_[(k * n_ + i) * n_ + j];
  }

  /// Gamma^k_ij u^i w^j
  Vector contract(std::span<const double> u, std::span<const double> w) const;
  /// max |Gamma^k_ij - Gamma^k_ji|
  double lower_asymmetry() const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
Christoffel christoffel(const MetricField& metric, Point q);

/// c_l = Gamma_{l,ij} v^i v^j (first-kind symbols contracted with v twice);
/// the geodesic acceleration is -g^{-1} c.
Vector first_kind_contraction(const MetricField& metric, Point q, std::span<const double> v);

/// State layout for all first-order fields: (q, qdot) stacked, length 2n.
Vector geodesic_rhs(const MetricField& metric, std::span<const double> state);

/// qddot = -Gamma(qdot, qdot) - g^{-1} dV. `potential` lives on the same chart.
Vector mechanical_rhs(const MetricField& metric, const ScalarField* potential,
                      std::span<const double> state);

/// g-orthogonal projection of v onto D_q. Throws RankDeficient when the Gram
/// matrix of the spanning vectors is singular.
Vector project_g(const MetricField& metric, const Distribution& dist, Point q,
                 std::span<const double> v);

/// g^{-1} df
Vector grad(const MetricField& metric, const ScalarField& f, Point q);

/// Integral of sqrt(g(cdot, cdot)) over the stored samples (Simpson).
double curve_length(const MetricField& metric, const Trajectory& traj);

/// 1/2 g(v, v) + V(q)
double energy(const MetricField& metric, const ScalarField* potential, Point q,
              std::span<const double> v);

}  // namespace nhgeo::geometry
