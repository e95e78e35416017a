// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace nhgeo {

/// First-order forward-mode dual number: value plus one tangent component.
struct Dual {
  double value = 0.0;
  double deriv = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v) : value(v) {}  // NOLINT: implicit lift of constants
  constexpr Dual(double v, double d) : value(v), deriv(d) {}

  constexpr Dual& operator+=(const Dual& o) {
    value += o.value;
    deriv += o.deriv;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    value -= o.value;
    deriv -= o.deriv;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    deriv = deriv * o.value + value * o.deriv;
    value *= o.value;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    deriv = (deriv * o.value - value * o.deriv) / (o.value * o.value);
    value /= o.value;
    return *this;
  }
};

constexpr Dual operator-(const Dual& a) { return {-a.value, -a.deriv}; }
constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
constexpr Dual operator+(Dual a, double b) { return a += Dual(b); }
constexpr Dual operator+(double a, const Dual& b) { return Dual(a) + b; }
constexpr Dual operator-(Dual a, double b) { return a -= Dual(b); }
constexpr Dual operator-(double a, const Dual& b) { return Dual(a) - b; }
constexpr Dual operator*(const Dual& a, double b) { return {a.value * b, a.deriv * b}; }
constexpr Dual operator*(double a, const Dual& b) { return b * a; }
constexpr Dual operator/(const Dual& a, double b) { return {a.value / b, a.deriv / b}; }
constexpr Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

constexpr bool operator<(const Dual& a, const Dual& b) { return a.value < b.value; }
constexpr bool operator>(const Dual& a, const Dual& b) { return a.value > b.value; }

inline Dual sin(const Dual& a) { return {std::sin(a.value), std::cos(a.value) * a.deriv}; }
inline Dual cos(const Dual& a) { return {std::cos(a.value), -std::sin(a.value) * a.deriv}; }
inline Dual exp(const Dual& a) {
  const double e = std::exp(a.value);
  return {e, e * a.deriv};
}
inline Dual log(const Dual& a) { return {std::log(a.value), a.deriv / a.value}; }
inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.value);
  return {s, 0.5 * a.deriv / s};
}
inline Dual pow(const Dual& a, double p) {
  const double v = std::pow(a.value, p);
  return {v, p * std::pow(a.value, p - 1.0) * a.deriv};
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.value; }

}  // namespace nhgeo
