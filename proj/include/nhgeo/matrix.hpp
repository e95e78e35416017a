// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nhgeo/error.hpp"

namespace nhgeo {

using Vector = std::vector<double>;

/// Small dense row-major matrix. Sizes in this library stay below ~10x10.
template <class T>
class BasicMatrix {
 public:
  BasicMatrix() = default;

  BasicMatrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

  BasicMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      fail(ErrorCode::invalid_argument,
           "matrix entry count " + std::to_string(entries_.size()) + " does not match " +
               std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }

  BasicMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorCode::invalid_argument, "ragged matrix initializer");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  const std::vector<T>& entries() const noexcept { return entries_; }
  std::vector<T>& entries() noexcept { return entries_; }

  BasicMatrix transposed() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  BasicMatrix& operator*=(const T& s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

 private:
  void check_same_shape(const BasicMatrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      fail(ErrorCode::invalid_argument, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using DenseMatrix = BasicMatrix<double>;

template <class T>
BasicMatrix<T> operator+(BasicMatrix<T> a, const BasicMatrix<T>& b) {
  return a += b;
}
template <class T>
BasicMatrix<T> operator-(BasicMatrix<T> a, const BasicMatrix<T>& b) {
  return a -= b;
}
template <class T>
BasicMatrix<T> operator*(BasicMatrix<T> a, const T& s) {
  return a *= s;
}

template <class T>
BasicMatrix<T> operator*(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::invalid_argument, "matrix product shape mismatch");
  BasicMatrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline Vector operator*(const DenseMatrix& a, std::span<const double> v) {
  if (a.cols() != v.size()) fail(ErrorCode::invalid_argument, "matrix-vector shape mismatch");
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline Vector operator*(const DenseMatrix& a, const Vector& v) {
  return a * std::span<const double>(v);
}

/// u^T A w
inline double bilinear(const DenseMatrix& a, std::span<const double> u, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) * w[j];
    s += u[i] * row;
  }
  return s;
}

inline double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double e : a.entries()) m = std::max(m, std::abs(e));
  return m;
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

inline double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool all_finite(std::span<const double> v) {
  for (double e : v)
    if (!std::isfinite(e)) return false;
  return true;
}

/// Symmetric defect max |A - A^T|.
inline double asymmetry(const DenseMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

/// Extract rows/cols [r0, r0+nr) x [c0, c0+nc).
template <class T>
BasicMatrix<T> block(const BasicMatrix<T>& a, std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) {
  BasicMatrix<T> out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = a(r0 + i, c0 + j);
  return out;
}

}  // namespace nhgeo
