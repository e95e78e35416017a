// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "nhgeo/numeric.hpp"

namespace nhgeo::numeric {

namespace {

// Integral over [t0, t2] of the parabola through three samples.
double pair_integral(double h0, double h1, double f0, double f1, double f2) {
  const double hs = h0 + h1;
  return hs / 6.0 * ((2.0 - h1 / h0) * f0 + hs * hs / (h0 * h1) * f1 + (2.0 - h0 / h1) * f2);
}

// Integral over the last interval [t1, t2] of the parabola through (t0, t1, t2).
double last_interval(double h0, double h1, double f0, double f1, double f2) {
  const double alpha = (2.0 * h1 * h1 + 3.0 * h1 * h0) / (6.0 * (h0 + h1));
  const double beta = (h1 * h1 + 3.0 * h1 * h0) / (6.0 * h0);
  const double eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
  return alpha * f2 + beta * f1 - eta * f0;
}

// Integral over the first interval [t0, t1] of the parabola through (t0, t1, t2).
double first_interval(double h0, double h1, double f0, double f1, double f2) {
  return last_interval(h1, h0, f2, f1, f0);
}

void check_samples(std::span<const double> t, std::span<const double> f) {
  if (t.size() != f.size())
    fail(ErrorCode::invalid_argument, "simpson: sample and value counts differ");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      fail(ErrorCode::invalid_argument, "simpson: abscissae must be strictly increasing");
}

}  // namespace

double simpson_integral(const std::function<double(double)>& f, double a, double b,
                        int n_panels) {
  if (n_panels < 2 || n_panels % 2 != 0)
    fail(ErrorCode::invalid_argument, "simpson_integral: panel count must be even and >= 2");
  if (a == b) return 0.0;
  const double h = (b - a) / n_panels;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < n_panels; ++i) {
    const double v = f(a + i * h);
    (i % 2 == 1 ? odd : even) += v;
  }
  const double fa = f(a);
  const double fb = f(b);
  const double result = h / 3.0 * (fa + fb + 4.0 * odd + 2.0 * even);
  if (!std::isfinite(result))
    fail(ErrorCode::evaluation_failure, "simpson_integral: integrand is not finite");
  return result;
}

double simpson_samples(std::span<const double> t, std::span<const double> f) {
  check_samples(t, f);
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * (t[1] - t[0]) * (f[0] + f[1]);
  const std::size_t intervals = n - 1;
  double sum = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= intervals; i += 2)
    sum += pair_integral(t[i + 1] - t[i], t[i + 2] - t[i + 1], f[i], f[i + 1], f[i + 2]);
  if (intervals % 2 == 1) {
    const std::size_t e = n - 1;
    sum += last_interval(t[e - 1] - t[e - 2], t[e] - t[e - 1], f[e - 2], f[e - 1], f[e]);
  }
  return sum;
}

std::vector<double> cumulative_simpson(std::span<const double> t, std::span<const double> f) {
  check_samples(t, f);
  const std::size_t n = t.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n == 2) {
    out[1] = 0.5 * (t[1] - t[0]) * (f[0] + f[1]);
    return out;
  }
  // Even indices accumulate whole Simpson pairs; odd indices add one interval
  // of the local parabola to the preceding even value, so no error compounds
  // beyond the pair sums.
  for (std::size_t k = 2; k < n; k += 2)
    out[k] = out[k - 2] +
             pair_integral(t[k - 1] - t[k - 2], t[k] - t[k - 1], f[k - 2], f[k - 1], f[k]);
  for (std::size_t k = 1; k < n; k += 2) {
    if (k + 1 < n) {
      out[k] = out[k - 1] +
               first_interval(t[k] - t[k - 1], t[k + 1] - t[k], f[k - 1], f[k], f[k + 1]);
    } else {
      out[k] = out[k - 1] +
               last_interval(t[k - 1] - t[k - 2], t[k] - t[k - 1], f[k - 2], f[k - 1], f[k]);
    }
  }
  return out;
}

}  // namespace nhgeo::numeric
