// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>

#include "nhgeo/geometry.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::geometry {

namespace {

void check_dim(Point q, std::size_t dim, const char* what) {
  if (q.size() != dim)
    fail(ErrorCode::invalid_argument, std::string(what) + ": expected a point of dimension " +
                                          std::to_string(dim) + ", got " +
                                          std::to_string(q.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField(std::size_t dim, Evaluator f) : dim_(dim), f_(std::move(f)) {}

ScalarField::ScalarField(std::size_t dim, Evaluator f, DualEvaluator f_dual)
    : dim_(dim), f_(std::move(f)), dual_(std::move(f_dual)) {}

double ScalarField::operator()(Point q) const {
  check_dim(q, dim_, "ScalarField");
  return f_(q);
}

Dual ScalarField::evaluate_dual(std::span<const Dual> q) const {
  if (!dual_) fail(ErrorCode::invalid_argument, "ScalarField: no dual evaluator");
  if (q.size() != dim_) fail(ErrorCode::invalid_argument, "ScalarField: point has wrong dimension");
  return dual_(q);
}

Vector ScalarField::differential(Point q) const {
  if (!dual_) return differential_fd(q);
  check_dim(q, dim_, "ScalarField");
  Vector d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = numeric::derivative_dual(dual_, q, i);
  return d;
}

Vector ScalarField::differential_fd(Point q) const {
  check_dim(q, dim_, "ScalarField");
  Vector d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = numeric::derivative_fd(f_, q, i);
  return d;
}

ScalarField ScalarField::pulled_back(std::size_t total_dim) const {
  if (total_dim < dim_) fail(ErrorCode::invalid_argument, "pulled_back: total dimension too small");
  const std::size_t m = dim_;
  Evaluator f = [inner = f_, m](Point q) { return inner(q.first(m)); };
  if (!dual_) return ScalarField(total_dim, std::move(f));
  DualEvaluator fd = [inner = dual_, m](std::span<const Dual> q) { return inner(q.first(m)); };
  return ScalarField(total_dim, std::move(f), std::move(fd));
}

// ---------------------------------------------------------------------------
// MetricField

MetricField::MetricField(std::size_t dim, Evaluator f) : dim_(dim), f_(std::move(f)) {}

MetricField::MetricField(std::size_t dim, Evaluator f, DualEvaluator f_dual)
    : dim_(dim), f_(std::move(f)), dual_(std::move(f_dual)) {}

BasicMatrix<Dual> MetricField::evaluate_dual(std::span<const Dual> q) const {
  if (!dual_) fail(ErrorCode::invalid_argument, "MetricField: no dual evaluator");
  if (q.size() != dim_) fail(ErrorCode::invalid_argument, "MetricField: point has wrong dimension");
  return dual_(q);
}

DenseMatrix MetricField::operator()(Point q) const {
  check_dim(q, dim_, "MetricField");
  return f_(q);
}

DenseMatrix MetricField::partial(Point q, std::size_t axis) const {
  if (!dual_) return partial_fd(q, axis);
  check_dim(q, dim_, "MetricField");
  if (axis >= dim_) fail(ErrorCode::invalid_argument, "MetricField::partial: axis out of range");
  std::vector<Dual> x(dim_);
  for (std::size_t i = 0; i < dim_; ++i) x[i] = Dual(q[i], i == axis ? 1.0 : 0.0);
  const BasicMatrix<Dual> g = dual_(x);
  DenseMatrix out(g.rows(), g.cols());
  for (std::size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] = g.entries()[i].deriv;
  if (!all_finite(out.entries()))
    fail(ErrorCode::evaluation_failure, "MetricField: dual derivative is not finite");
  return out;
}

DenseMatrix MetricField::partial_fd(Point q, std::size_t axis) const {
  check_dim(q, dim_, "MetricField");
  return numeric::derivative_fd(f_, q, axis);
}

void MetricField::check_at(Point q) const {
  const DenseMatrix g = (*this)(q);
  if (g.rows() != dim_ || g.cols() != dim_)
    fail(ErrorCode::domain_error, "metric evaluator returned a matrix of the wrong size");
  if (asymmetry(g) > 1e-12 * std::max(1.0, max_abs(g)))
    fail(ErrorCode::domain_error, "metric is not symmetric");
  if (!numeric::is_positive_definite(g))
    fail(ErrorCode::domain_error, "metric is not positive definite");
}

// ---------------------------------------------------------------------------
// Distribution

DenseMatrix orthogonal_complement(const DenseMatrix& vectors, std::size_t count) {
  const std::size_t n = vectors.rows();
  std::vector<Vector> basis;
  double scale = 0.0;
  for (double e : vectors.entries()) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) scale = 1.0;

  auto residual = [&](Vector v) {
    // Two passes of classical Gram-Schmidt for stability.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const double c = dot(v, b);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
      }
    return v;
  };

  // Pivoted orthonormalisation of the given vectors.
  std::vector<bool> used(vectors.cols(), false);
  for (std::size_t round = 0; round < vectors.cols(); ++round) {
    std::size_t best = 0;
    double best_norm = -1.0;
    Vector best_vec;
    for (std::size_t c = 0; c < vectors.cols(); ++c) {
      if (used[c]) continue;
      Vector r = residual(vectors.column(c));
      const double nr = norm2(r);
      if (nr > best_norm) {
        best_norm = nr;
        best = c;
        best_vec = std::move(r);
      }
    }
    if (best_norm < kComplementTolerance * scale)
      fail(ErrorCode::rank_deficient, "orthogonal_complement: input vectors are rank deficient");
    used[best] = true;
    for (double& e : best_vec) e /= best_norm;
    basis.push_back(std::move(best_vec));
  }
  if (basis.size() + count != n)
    fail(ErrorCode::invalid_argument, "orthogonal_complement: dimension count mismatch");

  // Pivoted selection among the coordinate vectors.
  DenseMatrix out(n, count);
  for (std::size_t c = 0; c < count; ++c) {
    double best_norm = -1.0;
    Vector best_vec;
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n, 0.0);
      e[i] = 1.0;
      Vector r = residual(std::move(e));
      const double nr = norm2(r);
      if (nr > best_norm) {
        best_norm = nr;
        best_vec = std::move(r);
      }
    }
    if (best_norm < kComplementTolerance)
      fail(ErrorCode::rank_deficient, "orthogonal_complement: complement collapsed");
    for (double& e : best_vec) e /= best_norm;
    for (std::size_t i = 0; i < n; ++i) out(i, c) = best_vec[i];
    basis.push_back(std::move(best_vec));
  }
  return out;
}

Distribution Distribution::from_span(std::size_t n, std::size_t k, Generator columns) {
  if (k > n) fail(ErrorCode::invalid_argument, "Distribution: rank exceeds dimension");
  Distribution d;
  d.n_ = n;
  d.k_ = k;
  d.kernel_ = false;
  d.gen_ = std::move(columns);
  return d;
}

Distribution Distribution::from_kernel(std::size_t n, std::size_t k, Generator forms,
                                       DualGenerator dual_forms) {
  Distribution d = from_kernel(n, k, std::move(forms));
  d.dual_gen_ = std::move(dual_forms);
  return d;
}

BasicMatrix<Dual> Distribution::forms_dual(std::span<const Dual> q) const {
  if (!dual_gen_) fail(ErrorCode::invalid_argument, "Distribution: no dual form evaluator");
  if (q.size() != n_) fail(ErrorCode::invalid_argument, "Distribution: point has wrong dimension");
  BasicMatrix<Dual> g = dual_gen_(q);
  if (g.rows() != n_ - k_ || g.cols() != n_)
    fail(ErrorCode::invalid_argument, "Distribution: form generator has the wrong shape");
  return g;
}

Distribution Distribution::from_kernel(std::size_t n, std::size_t k, Generator forms) {
  if (k > n) fail(ErrorCode::invalid_argument, "Distribution: rank exceeds dimension");
  Distribution d;
  d.n_ = n;
  d.k_ = k;
  d.kernel_ = true;
  d.gen_ = std::move(forms);
  return d;
}

DenseMatrix Distribution::span_basis(Point q) const {
  check_dim(q, n_, "Distribution");
  DenseMatrix g = gen_(q);
  if (!kernel_) {
    if (g.rows() != n_ || g.cols() != k_)
      fail(ErrorCode::invalid_argument, "Distribution: span generator has the wrong shape");
    return g;
  }
  if (g.rows() != n_ - k_ || g.cols() != n_)
    fail(ErrorCode::invalid_argument, "Distribution: form generator has the wrong shape");
  if (k_ == n_) return DenseMatrix::identity(n_);
  return orthogonal_complement(g.transposed(), k_);
}

DenseMatrix Distribution::forms(Point q) const {
  check_dim(q, n_, "Distribution");
  DenseMatrix g = gen_(q);
  if (kernel_) {
    if (g.rows() != n_ - k_ || g.cols() != n_)
      fail(ErrorCode::invalid_argument, "Distribution: form generator has the wrong shape");
    return g;
  }
  if (g.rows() != n_ || g.cols() != k_)
    fail(ErrorCode::invalid_argument, "Distribution: span generator has the wrong shape");
  if (k_ == n_) return DenseMatrix(0, n_);
  return orthogonal_complement(g, n_ - k_).transposed();
}

double Distribution::violation(Point q, std::span<const double> v) const {
  const DenseMatrix a = forms(q);
  if (a.rows() == 0) return 0.0;
  return max_abs(a * v);
}

// ---------------------------------------------------------------------------

double energy(const MetricField& metric, const ScalarField* potential, Point q,
              std::span<const double> v) {
  double e = 0.5 * bilinear(metric(q), v, v);
  if (potential != nullptr) e += (*potential)(q);
  return e;
}

}  // namespace nhgeo::geometry
