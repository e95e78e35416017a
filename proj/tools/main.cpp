// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

// nhgeo command-line tool. Talks to the library only through nhgeo.h.
//
// Exit status: 0 success / all checks pass, 1 check failure,
// 2 configuration error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nhgeo/nhgeo.h"
#include "run_config.hpp"

namespace {

using Json = nlohmann::ordered_json;
using nhgeo::cli::RunConfig;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct ExitError {
  int code;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail_status(nhgeo_status s) {
  const bool config = s == NHGEO_INVALID_ARGUMENT || s == NHGEO_INVALID_PARAMETERS ||
                      s == NHGEO_DOMAIN_ERROR;
  throw ExitError{config ? kExitConfig : kExitNumeric, nhgeo_status_name(s),
                  nhgeo_last_error_message()};
}

void check(nhgeo_status s) {
  if (s != NHGEO_OK) fail_status(s);
}

struct SystemDeleter {
  void operator()(nhgeo_system* s) const { nhgeo_system_destroy(s); }
};
struct TrajectoryDeleter {
  void operator()(nhgeo_trajectory* t) const { nhgeo_trajectory_destroy(t); }
};
struct StringDeleter {
  void operator()(char* s) const { nhgeo_string_free(s); }
};
using SystemPtr = std::unique_ptr<nhgeo_system, SystemDeleter>;
using TrajectoryPtr = std::unique_ptr<nhgeo_trajectory, TrajectoryDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

SystemPtr make_system(const RunConfig& c) {
  std::vector<std::string> keys;
  std::vector<const char*> key_ptrs;
  std::vector<double> values;
  for (const auto& [k, v] : c.parameters) {
    keys.push_back(k);
    values.push_back(v);
  }
  for (const auto& k : keys) key_ptrs.push_back(k.c_str());
  nhgeo_system* raw = nullptr;
  check(nhgeo_system_create(c.system.c_str(), key_ptrs.data(), values.data(), values.size(),
                            c.potential == "quadratic" ? NHGEO_POTENTIAL_QUADRATIC
                                                       : NHGEO_POTENTIAL_NONE,
                            &raw));
  return SystemPtr(raw);
}

// Admissible initial data used when the config gives none.
std::pair<std::vector<double>, std::vector<double>> initial_state(const RunConfig& c) {
  if (c.q0 && c.v0) return {*c.q0, *c.v0};
  if (c.system == "vertical-disk") {
    const auto r = c.parameters.find("R");
    return {{0, 0, 0, 0}, {1, 1, r != c.parameters.end() ? r->second : 1.0, 0}};
  }
  if (c.system == "veselova") return {{std::numbers::pi / 2, 0, 0}, {0.1, 0.1, 0}};
  return {{0, 0, 0}, {1, 1, 0}};
}

nhgeo::cli::Grid default_grid(const std::string& system) {
  const double pi = std::numbers::pi;
  if (system == "vertical-disk") return {{-pi, -pi}, {pi, pi}, {5, 5}};
  if (system == "veselova") return {{0.25, -pi}, {pi - 0.25, pi}, {5, 5}};
  return {{-2, -2}, {2, 2}, {5, 5}};
}

std::vector<std::vector<double>> grid_points(const nhgeo::cli::Grid& g) {
  std::vector<std::vector<double>> out{{}};
  for (std::size_t d = 0; d < g.lo.size(); ++d) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out) {
      for (std::uint64_t i = 0; i < g.counts[d]; ++i) {
        const double s = g.counts[d] == 1 ? 0.0 : double(i) / double(g.counts[d] - 1);
        auto p = prefix;
        p.push_back(g.lo[d] + s * (g.hi[d] - g.lo[d]));
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

void emit(const RunConfig& c, const std::string& body) {
  if (c.output.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw ExitError{kExitConfig, "IOError", "cannot write " + c.output};
  out << body;
}

int cmd_simulate(const RunConfig& c) {
  const auto sys = make_system(c);
  const auto [q0, v0] = initial_state(c);
  nhgeo_trajectory* raw = nullptr;
  check(nhgeo_simulate(sys.get(), c.kind == "principal" ? NHGEO_PRINCIPAL : NHGEO_NONHOLONOMIC,
                       q0.data(), v0.data(), q0.size(), c.T,
                       c.step_method == "rk4-step-doubling" ? NHGEO_RK4_STEP_DOUBLING
                                                            : NHGEO_RK4_FIXED,
                       c.dt, c.step_tolerance, &raw));
  const TrajectoryPtr traj(raw);
  char* warn_raw = nullptr;
  check(nhgeo_trajectory_warnings(traj.get(), &warn_raw));
  const StringPtr warnings(warn_raw);
  if (warnings && *warnings) std::cerr << warnings.get() << '\n';
  char* csv_raw = nullptr;
  check(nhgeo_trajectory_csv(traj.get(), &csv_raw));
  const StringPtr csv(csv_raw);
  emit(c, csv.get());
  return kExitPass;
}

int cmd_build_metric(const RunConfig& c) {
  if (c.points.empty())
    throw ExitError{kExitConfig, "ValidationError", "build-metric needs \"points\""};
  const auto sys = make_system(c);
  const std::size_t n = nhgeo_system_dim(sys.get());
  Json doc;
  doc["system"] = c.system;
  doc["points"] = Json::array();
  for (const auto& q : c.points) {
    std::vector<double> h(n * n);
    check(nhgeo_principal_metric(sys.get(), q.data(), q.size(), h.data()));
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i)
      rows.push_back(std::vector<double>(h.begin() + long(i * n), h.begin() + long((i + 1) * n)));
    doc["points"].push_back(Json{{"q", q}, {"h", rows}});
  }
  emit(c, doc.dump(2) + "\n");
  return kExitPass;
}

int cmd_recover_phi(const RunConfig& c) {
  const auto sys = make_system(c);
  const std::size_t m = nhgeo_system_base_dim(sys.get());
  const auto points = !c.points.empty() ? c.points : grid_points(c.grid ? *c.grid : default_grid(c.system));
  Json doc;
  doc["system"] = c.system;
  doc["points"] = Json::array();
  double worst = 0.0;
  for (const auto& qbar : points) {
    double phi = 0.0, residual = 0.0;
    std::vector<double> dphi(m);
    check(nhgeo_recover_phi(sys.get(), qbar.data(), qbar.size(), &phi, dphi.data(), &residual));
    worst = std::max(worst, residual);
    doc["points"].push_back(
        Json{{"qbar", qbar}, {"phi", phi}, {"dphi", dphi}, {"residual", residual}});
  }
  doc["max_residual"] = worst;
  emit(c, doc.dump(2) + "\n");
  return kExitPass;
}

int cmd_verify(const RunConfig& c) {
  const auto sys = make_system(c);
  const std::string cfg = nhgeo::cli::suite_json(c);
  char* raw = nullptr;
  int all_pass = 0;
  check(nhgeo_verify(sys.get(), c.seed, cfg.c_str(), &raw, &all_pass));
  const StringPtr report(raw);
  emit(c, report.get());
  return all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_distance(const RunConfig& c) {
  const auto sys = make_system(c);
  const auto [q0, v0] = initial_state(c);
  double length = 0.0, distance = 0.0, t_used = 0.0;
  check(nhgeo_distance(sys.get(), q0.data(), v0.data(), q0.size(), c.t_small, c.dt, &length,
                       &distance, &t_used));
  const double residual = std::abs(length - distance);
  const auto tol_it = c.tolerances.find("distance");
  const double tol = tol_it != c.tolerances.end() ? tol_it->second : 1e-4;
  Json doc;
  doc["system"] = c.system;
  doc["q0"] = q0;
  doc["v0"] = v0;
  doc["t_small"] = c.t_small;
  doc["t_used"] = t_used;
  doc["length"] = finite_or_null(length);
  doc["distance"] = finite_or_null(distance);
  doc["residual"] = finite_or_null(residual);
  doc["tolerance"] = tol;
  doc["pass"] = residual <= tol;
  emit(c, doc.dump(2) + "\n");
  return residual <= tol ? kExitPass : kExitCheckFailure;
}

void print_error(const std::string& kind, const std::string& message,
                 const std::vector<std::string>& violations = {}) {
  Json err{{"error", kind}, {"message", message}};
  if (!violations.empty()) err["violations"] = violations;
  std::cerr << err.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal Riemannian metrics of Chaplygin systems"};
  app.set_version_flag("--version", std::string(nhgeo_version()));
  app.require_subcommand(1, 1);

  std::string config_path, system, potential, out;
  std::uint64_t seed = 0;
  double t_end = 0.0, dt = 0.0;
  std::vector<std::string> params;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--system", system, "vertical-disk | nonholonomic-particle | veselova");
  app.add_option("--seed", seed, "Seed for randomized checks");
  app.add_option("--out", out, "Output path (default: standard output)");
  app.add_option("--param", params, "Parameter override key=value")->allow_extra_args(false);
  app.add_option("--potential", potential, "none | quadratic");
  app.add_option("--T", t_end, "Integration horizon");
  app.add_option("--dt", dt, "Integrator step");

  const std::map<std::string, std::string> blurbs{
      {"simulate", "Integrate a trajectory and print it as CSV"},
      {"build-metric", "Evaluate the principal metric h at the given points"},
      {"recover-phi", "Recover the conformal factor on a base grid"},
      {"verify", "Run the seeded check suite and print a JSON report"},
      {"distance", "Compare short-time arc length with the h-distance"}};
  for (const auto& name : nhgeo::cli::command_names())
    app.add_subcommand(name, blurbs.at(name))->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return kExitConfig;
  }

  try {
    RunConfig c;
    if (!config_path.empty()) {
      c = nhgeo::cli::load_config(config_path, false);
    }
    c.command = app.get_subcommands().front()->get_name();
    if (!system.empty()) c.system = system;
    if (app.count("--seed")) c.seed = seed;
    if (!out.empty()) c.output = out;
    if (!potential.empty()) c.potential = potential;
    if (app.count("--T")) c.T = t_end;
    if (app.count("--dt")) c.dt = dt;
    for (const auto& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0)
        throw nhgeo::cli::ParseError("--param expects key=value, got '" + p + "'");
      try {
        std::size_t used = 0;
        const double v = std::stod(p.substr(eq + 1), &used);
        if (used != p.size() - eq - 1) throw std::invalid_argument(p);
        c.parameters[p.substr(0, eq)] = v;
      } catch (const std::logic_error&) {
        throw nhgeo::cli::ParseError("--param " + p.substr(0, eq) + ": value is not a number");
      }
    }
    nhgeo::cli::validate(c);

    if (c.command == "simulate") return cmd_simulate(c);
    if (c.command == "build-metric") return cmd_build_metric(c);
    if (c.command == "recover-phi") return cmd_recover_phi(c);
    if (c.command == "verify") return cmd_verify(c);
    return cmd_distance(c);
  } catch (const nhgeo::cli::ValidationError& e) {
    print_error("ValidationError", e.what(), e.violations());
    return kExitConfig;
  } catch (const nhgeo::cli::ParseError& e) {
    print_error("ParseError", e.what());
    return kExitConfig;
  } catch (const ExitError& e) {
    print_error(e.kind, e.message);
    return e.code;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return kExitNumeric;
  }
}
