// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// Scalar-generic pieces of the lift / reduced-metric / h construction, shared
// by the double evaluators and the dual-number ones.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/numeric.hpp"

namespace nhgeo::chaplygin::detail {

/// n x m lift matrix from the (n-m) x n constraint rows.
template <class T>
BasicMatrix<T> lifts_from_forms(const BasicMatrix<T>& a, std::size_t n, std::size_t m) {
  const std::size_t k = n - m;
  BasicMatrix<T> lifts(n, m);
  for (std::size_t c = 0; c < m; ++c) lifts(c, c) = T(1.0);
  if (k == 0) return lifts;
  // mu(v) = A_base w + A_fiber u = 0  =>  u = -A_fiber^{-1} A_base w
  BasicMatrix<T> u;
  try {
    u = numeric::solve_linear_generic(block(a, 0, m, k, k), block(a, 0, 0, k, m));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_matrix) throw;
    fail(ErrorCode::rank_deficient, "horizontal_lift: fiber block of the constraint forms is singular");
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < m; ++c) lifts(m + i, c) = -u(i, c);
  return lifts;
}

template <class T>
BasicMatrix<T> congruence(const BasicMatrix<T>& l, const BasicMatrix<T>& g) {
  return l.transposed() * (g * l);
}

/// H = B^{-T} blockdiag(gcan, g_vv) B^{-1}, B = [lifts | fiber coordinate
/// fields]. Symmetrized against roundoff.
template <class T>
BasicMatrix<T> assemble_h(const BasicMatrix<T>& lifts, const BasicMatrix<T>& gcan,
                          const BasicMatrix<T>& g, std::size_t n, std::size_t m) {
  BasicMatrix<T> basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a) basis(i, a) = lifts(i, a);
  for (std::size_t j = m; j < n; ++j) basis(j, j) = T(1.0);

  BasicMatrix<T> d(n, n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) d(a, b) = gcan(a, b);
  for (std::size_t i = m; i < n; ++i)
    for (std::size_t j = m; j < n; ++j) d(i, j) = g(i, j);

  BasicMatrix<T> inv;
  try {
    inv = numeric::solve_linear_generic(basis, BasicMatrix<T>::identity(n));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_matrix) throw;
    fail(ErrorCode::rank_deficient, "principal_metric: adapted frame is singular");
  }
  BasicMatrix<T> h = congruence(inv, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const T s = 0.5 * (h(i, j) + h(j, i));
      h(i, j) = s;
      h(j, i) = s;
    }
  return h;
}

}  // namespace nhgeo::chaplygin::detail
