// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// Run configuration for the nhgeo command-line tool.
//
// JSON schema (every key optional unless noted, unknown keys rejected):
//
//   command        "simulate" | "build-metric" | "recover-phi" | "verify" | "distance"
//   system         system name (required)
//   parameters     object of name -> number
//   potential      "none" | "quadratic"                       default "none"
//   q0, v0         initial point and velocity, system dimension
//   T              horizon > 0                                 default 10
//   dt             step > 0                                    default 1e-3
//   seed           non-negative integer                        default 0
//   kind           "nonholonomic" | "principal"                default "nonholonomic"
//   step_method    "rk4-fixed" | "rk4-step-doubling"          default "rk4-fixed"
//   step_tolerance > 0                                         default 1e-10
//   points         array of points (chart points for build-metric, base
//                  points for recover-phi)
//   grid           {"lo": [...], "hi": [...], "counts": [...]}  base grid for recover-phi
//   t_small        > 0                                         default 0.3
//   tolerances     object of check name -> number >= 0
//   suite          {"sample_points", "trajectories", "psi_states",
//                   "conservation_horizon", "equivalence_horizon"}
//   output         output path ("" = standard output)

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhgeo::cli {

/// Malformed JSON or wrong value types; message carries line / key context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed document violating the schema; lists every violation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct Grid {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::uint64_t> counts;

  friend bool operator==(const Grid&, const Grid&) = default;
};

struct SuiteSizes {
  std::optional<std::uint64_t> sample_points;
  std::optional<std::uint64_t> trajectories;
  std::optional<std::uint64_t> psi_states;
  std::optional<double> conservation_horizon;
  std::optional<double> equivalence_horizon;

  friend bool operator==(const SuiteSizes&, const SuiteSizes&) = default;
};

struct RunConfig {
  std::string command;
  std::string system;
  std::map<std::string, double> parameters;
  std::string potential = "none";
  std::optional<std::vector<double>> q0;
  std::optional<std::vector<double>> v0;
  double T = 10.0;
  double dt = 1e-3;
  std::uint64_t seed = 0;
  std::string kind = "nonholonomic";
  std::string step_method = "rk4-fixed";
  double step_tolerance = 1e-10;
  std::vector<std::vector<double>> points;
  std::optional<Grid> grid;
  double t_small = 0.3;
  std::map<std::string, double> tolerances;
  SuiteSizes suite;
  std::string output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

const std::vector<std::string>& command_names();

/// Chart dimension and base dimension of a built-in system, or nullopt.
std::optional<std::pair<std::size_t, std::size_t>> system_dims(const std::string& name);

/// Parses and, unless `check` is false, validates. `source` names the
/// document in error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "config",
                       bool check = true);

/// Reads a file and parses it; unreadable files raise ParseError.
RunConfig load_config(const std::string& path, bool check = true);

/// Throws ValidationError listing every violation.
void validate(const RunConfig& config);

/// Canonical JSON with all defaults written out; parse_config(to_json(c)) == c.
std::string to_json(const RunConfig& config);

/// JSON object for the "config" argument of nhgeo_verify.
std::string suite_json(const RunConfig& config);

}  // namespace nhgeo::cli
