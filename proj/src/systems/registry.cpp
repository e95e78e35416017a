// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <sstream>

#include "builtin.hpp"

namespace nhgeo::systems {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::invalid_parameters, msg); }

std::size_t base_dim_of(const std::string& name) {
  (void)default_parameters(name);
  return 2;
}

geometry::ScalarField quadratic_potential(std::size_t m, std::size_t axis, double k) {
  return geometry::ScalarField(
      m, [axis, k](geometry::Point q) { return 0.5 * k * q[axis] * q[axis]; },
      [axis, k](std::span<const Dual> q) { return 0.5 * k * q[axis] * q[axis]; });
}

}  // namespace

const std::vector<std::string>& system_names() {
  static const std::vector<std::string> names{kVerticalDisk, kParticle, kVeselova};
  return names;
}

std::map<std::string, double> default_parameters(const std::string& name) {
  if (name == kVerticalDisk) return {{"m", 1.0}, {"R", 1.0}, {"I", 1.0}, {"J", 1.0}};
  if (name == kParticle) return {{"exponent", 1.0}};
  if (name == kVeselova) return {{"I1", 1.0}, {"I2", 2.0}, {"I3", 3.0}};
  bad("unknown system '" + name + "' (expected vertical-disk, nonholonomic-particle or veselova)");
}

SystemDescriptor normalized(const SystemDescriptor& descriptor) {
  SystemDescriptor out = descriptor;
  out.parameters = default_parameters(descriptor.name);
  for (const auto& [key, value] : descriptor.parameters) {
    auto it = out.parameters.find(key);
    if (it == out.parameters.end())
      bad("system '" + descriptor.name + "' has no parameter '" + key + "'");
    it->second = value;
  }
  for (const auto& [key, value] : out.parameters) {
    if (!std::isfinite(value) || !(value > 0.0)) {
      std::ostringstream msg;
      msg << "parameter '" << key << "' must be a positive finite number, got " << value;
      bad(msg.str());
    }
  }
  if (out.name == kParticle) {
    const double e = out.parameters.at("exponent");
    if (e != std::floor(e) || e > 8.0) bad("parameter 'exponent' must be an integer in [1, 8]");
  }
  const std::size_t m = base_dim_of(out.name);
  if (out.potential.kind == PotentialKind::quadratic) {
    if (!out.potential.axis) out.potential.axis = m - 1;
    if (*out.potential.axis >= m) bad("potential axis must index a base coordinate");
    if (!std::isfinite(out.potential.k)) bad("potential stiffness must be finite");
  } else {
    out.potential = PotentialSpec{};
  }
  return out;
}

chaplygin::BundleSystem build(const SystemDescriptor& descriptor) {
  const SystemDescriptor d = normalized(descriptor);
  std::optional<geometry::ScalarField> potential;
  if (d.potential.kind == PotentialKind::quadratic)
    potential = quadratic_potential(base_dim_of(d.name), *d.potential.axis, d.potential.k);
  if (d.name == kVerticalDisk) return detail::build_disk(d.parameters, std::move(potential));
  if (d.name == kParticle) return detail::build_particle(d.parameters, std::move(potential));
  return detail::build_veselova(d.parameters, std::move(potential));
}

Vector veselova_a_matrix(double i1, double i2, double i3) {
  if (!(i1 > 0.0 && i2 > 0.0 && i3 > 0.0)) bad("veselova inertia must be positive");
  return {std::sqrt(i2 * i3 / i1), std::sqrt(i1 * i3 / i2), std::sqrt(i1 * i2 / i3)};
}

std::vector<CrossCheck> analytic_crosschecks(const SystemDescriptor& descriptor,
                                             std::uint64_t seed, std::size_t count) {
  const SystemDescriptor d = normalized(descriptor);
  const chaplygin::BundleSystem sys = build(d);
  std::mt19937_64 rng(seed);
  std::vector<Vector> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) points.push_back(sys.sample_box().sample(rng));
  if (d.name == kVerticalDisk) return detail::disk_crosschecks(d.parameters, points);
  if (d.name == kParticle) return detail::particle_crosschecks(d.parameters, points);
  return detail::veselova_crosschecks(d.parameters, points);
}

}  // namespace nhgeo::systems
