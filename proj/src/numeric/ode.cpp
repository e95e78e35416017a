// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "nhgeo/numeric.hpp"

namespace nhgeo::numeric {

namespace {

void check_finite(const State& s, const char* stage) {
  if (!all_finite(s))
    fail(ErrorCode::non_finite_state, std::string("rk4_step: non-finite value in stage ") + stage);
}

// y + c * k
State axpy(std::span<const double> y, double c, const State& k) {
  State out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * k[i];
  return out;
}

}  // namespace

void OdeStepper::validate() const {
  if (!(step > 0.0) || !std::isfinite(step))
    fail(ErrorCode::invalid_argument, "stepper: step must be positive");
  if (method == StepMethod::rk4_step_doubling && !(tolerance > 0.0))
    fail(ErrorCode::invalid_argument, "stepper: tolerance must be positive");
}

std::string to_string(StepMethod m) {
  return m == StepMethod::rk4_fixed ? "rk4-fixed" : "rk4-step-doubling";
}

State rk4_step(const OdeRhs& f, std::span<const double> y, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::invalid_argument, "rk4_step: dt must be positive");
  const State k1 = f(y);
  check_finite(k1, "k1");
  const State k2 = f(axpy(y, 0.5 * dt, k1));
  check_finite(k2, "k2");
  const State k3 = f(axpy(y, 0.5 * dt, k2));
  check_finite(k3, "k3");
  const State k4 = f(axpy(y, dt, k3));
  check_finite(k4, "k4");
  State out(y.begin(), y.end());
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  check_finite(out, "update");
  return out;
}

OdeSolution integrate_ode(const OdeRhs& f, State y0, double t_end, const OdeStepper& stepper) {
  stepper.validate();
  if (!(t_end >= 0.0)) fail(ErrorCode::invalid_argument, "integrate_ode: negative horizon");
  OdeSolution sol;
  sol.times.push_back(0.0);
  sol.states.push_back(y0);
  if (t_end == 0.0) return sol;

  if (stepper.method == StepMethod::rk4_fixed) {
    const double dt = stepper.step;
    const auto full = static_cast<std::size_t>(std::floor(t_end / dt * (1.0 + 1e-12)));
    sol.times.reserve(full + 2);
    sol.states.reserve(full + 2);
    State y = std::move(y0);
    for (std::size_t k = 1; k <= full; ++k) {
      y = rk4_step(f, y, dt);
      sol.times.push_back(static_cast<double>(k) * dt);
      sol.states.push_back(y);
    }
    const double t_last = static_cast<double>(full) * dt;
    const double rest = t_end - t_last;
    if (rest > 1e-12 * dt) {
      y = rk4_step(f, y, rest);
      sol.times.push_back(t_end);
      sol.states.push_back(y);
    } else {
      sol.times.back() = t_end;
    }
    return sol;
  }

  // Step doubling: compare one full step with two half steps; the difference
  // estimates the local error of the half-step pair (factor 1/15 for order 4).
  double t = 0.0;
  double h = stepper.step;
  State y = std::move(y0);
  while (t < t_end) {
    h = std::min(h, t_end - t);
    if (h < 1e-14 * std::max(1.0, t_end))
      fail(ErrorCode::non_finite_state, "integrate_ode: step size underflow in step doubling");
    const State full = rk4_step(f, y, h);
    const State half = rk4_step(f, rk4_step(f, y, 0.5 * h), 0.5 * h);
    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      err = std::max(err, std::abs(half[i] - full[i]) / (15.0 * (1.0 + std::abs(half[i]))));
    if (err <= stepper.tolerance) {
      t = (t_end - t <= h * (1.0 + 1e-12)) ? t_end : t + h;
      y = half;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += (half[i] - full[i]) / 15.0;
      sol.times.push_back(t);
      sol.states.push_back(y);
    } else {
      ++sol.rejected_steps;
    }
    const double factor = err == 0.0 ? 2.0 : 0.9 * std::pow(stepper.tolerance / err, 0.2);
    h *= std::clamp(factor, 0.2, 2.0);
  }
  return sol;
}

}  // namespace nhgeo::numeric
