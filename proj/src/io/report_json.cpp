// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <json.hpp>

#include "nhgeo/io.hpp"

namespace nhgeo::io {

namespace {

using Json = nlohmann::ordered_json;

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string format_number(double x) { return Json(x).dump(); }

std::string report_json(const verify::VerificationReport& report) {
  Json doc;
  doc["system"] = report.system;
  doc["seed"] = report.seed;
  doc["all_pass"] = report.all_pass();
  Json stepper;
  stepper["method"] = numeric::to_string(report.stepper.method);
  stepper["step"] = report.stepper.step;
  if (report.stepper.method == numeric::StepMethod::rk4_step_doubling)
    stepper["tolerance"] = report.stepper.tolerance;
  doc["stepper"] = stepper;
  Json sampling;
  sampling["sample_points"] = report.config.sample_points;
  sampling["trajectories"] = report.config.trajectories;
  sampling["psi_states"] = report.config.psi_states;
  sampling["conservation_horizon"] = report.config.conservation_horizon;
  sampling["equivalence_horizon"] = report.config.equivalence_horizon;
  sampling["t_small"] = report.config.t_small;
  doc["sampling"] = sampling;

  Json checks = Json::array();
  for (const verify::CheckResult& c : report.checks) {
    Json entry;
    entry["name"] = c.name;
    entry["statement"] = c.statement;
    entry["residual"] = number(c.residual);
    entry["tolerance"] = c.tolerance;
    entry["pass"] = c.pass;
    Json details = Json::object();
    for (const auto& [key, value] : c.details) details[key] = number(value);
    entry["details"] = details;
    if (!c.note.empty()) entry["note"] = c.note;
    checks.push_back(entry);
  }
  doc["checks"] = checks;
  if (!report.diagnostics.empty()) {
    Json diag = Json::object();
    for (const auto& [key, value] : report.diagnostics) diag[key] = number(value);
    doc["diagnostics"] = diag;
  }
  return doc.dump(2) + "\n";
}

}  // namespace nhgeo::io
