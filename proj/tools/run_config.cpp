// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nhgeo::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void type_error(const std::string& source, const std::string& key, const char* want) {
  throw ParseError(source + ": key '" + key + "': expected " + want);
}

double number(const Json& j, const std::string& source, const std::string& key) {
  if (!j.is_number()) type_error(source, key, "a number");
  return j.get<double>();
}

std::uint64_t count(const Json& j, const std::string& source, const std::string& key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    type_error(source, key, "a non-negative integer");
  return j.get<std::uint64_t>();
}

std::string text(const Json& j, const std::string& source, const std::string& key) {
  if (!j.is_string()) type_error(source, key, "a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const Json& j, const std::string& source, const std::string& key) {
  if (!j.is_array()) type_error(source, key, "an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], source, key + "[" + std::to_string(i) + "]"));
  return out;
}

std::map<std::string, double> number_map(const Json& j, const std::string& source,
                                          const std::string& key) {
  if (!j.is_object()) type_error(source, key, "an object of numbers");
  std::map<std::string, double> out;
  for (const auto& [k, v] : j.items()) out[k] = number(v, source, key + "." + k);
  return out;
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& source,
                const std::string& where) {
  std::vector<std::string> unknown;
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) unknown.push_back("'" + k + "'");
  if (!unknown.empty())
    throw ParseError(source + ": unknown key" + (unknown.size() > 1 ? "s " : " ") + join(unknown, ", ") +
                     (where.empty() ? "" : " in '" + where + "'"));
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid configuration: " + join(violations, "; ")),
      violations_(std::move(violations)) {}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "build-metric", "recover-phi", "verify",
                                              "distance"};
  return names;
}

std::optional<std::pair<std::size_t, std::size_t>> system_dims(const std::string& name) {
  if (name == "vertical-disk") return std::pair<std::size_t, std::size_t>{4, 2};
  if (name == "nonholonomic-particle" || name == "veselova")
    return std::pair<std::size_t, std::size_t>{3, 2};
  return std::nullopt;
}

RunConfig parse_config(const std::string& body, const std::string& source, bool check) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": malformed JSON at " + line_context(body, e.byte));
  }
  if (!doc.is_object()) throw ParseError(source + ": top level must be a JSON object");
  check_keys(doc,
             {"command", "system", "parameters", "potential", "q0", "v0", "T", "dt", "seed", "kind",
              "step_method", "step_tolerance", "points", "grid", "t_small", "tolerances", "suite",
              "output"},
             source, "");

  RunConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "command") c.command = text(v, source, key);
    else if (key == "system") c.system = text(v, source, key);
    else if (key == "parameters") c.parameters = number_map(v, source, key);
    else if (key == "potential") c.potential = text(v, source, key);
    else if (key == "q0") c.q0 = numbers(v, source, key);
    else if (key == "v0") c.v0 = numbers(v, source, key);
    else if (key == "T") c.T = number(v, source, key);
    else if (key == "dt") c.dt = number(v, source, key);
    else if (key == "seed") c.seed = count(v, source, key);
    else if (key == "kind") c.kind = text(v, source, key);
    else if (key == "step_method") c.step_method = text(v, source, key);
    else if (key == "step_tolerance") c.step_tolerance = number(v, source, key);
    else if (key == "t_small") c.t_small = number(v, source, key);
    else if (key == "tolerances") c.tolerances = number_map(v, source, key);
    else if (key == "output") c.output = text(v, source, key);
    else if (key == "points") {
      if (!v.is_array()) type_error(source, key, "an array of points");
      for (std::size_t i = 0; i < v.size(); ++i)
        c.points.push_back(numbers(v[i], source, "points[" + std::to_string(i) + "]"));
    } else if (key == "grid") {
      if (!v.is_object()) type_error(source, key, "an object");
      check_keys(v, {"lo", "hi", "counts"}, source, "grid");
      Grid g;
      if (v.contains("lo")) g.lo = numbers(v["lo"], source, "grid.lo");
      if (v.contains("hi")) g.hi = numbers(v["hi"], source, "grid.hi");
      if (v.contains("counts")) {
        if (!v["counts"].is_array()) type_error(source, "grid.counts", "an array of integers");
        for (std::size_t i = 0; i < v["counts"].size(); ++i)
          g.counts.push_back(count(v["counts"][i], source, "grid.counts[" + std::to_string(i) + "]"));
      }
      c.grid = std::move(g);
    } else if (key == "suite") {
      if (!v.is_object()) type_error(source, key, "an object");
      check_keys(v,
                 {"sample_points", "trajectories", "psi_states", "conservation_horizon",
                  "equivalence_horizon"},
                 source, "suite");
      for (const auto& [k, x] : v.items()) {
        const std::string where = "suite." + k;
        if (k == "sample_points") c.suite.sample_points = count(x, source, where);
        else if (k == "trajectories") c.suite.trajectories = count(x, source, where);
        else if (k == "psi_states") c.suite.psi_states = count(x, source, where);
        else if (k == "conservation_horizon") c.suite.conservation_horizon = number(x, source, where);
        else c.suite.equivalence_horizon = number(x, source, where);
      }
    }
  }
  if (check) validate(c);
  return c;
}

RunConfig load_config(const std::string& path, bool check) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path, check);
}

void validate(const RunConfig& c) {
  std::vector<std::string> v;
  auto positive = [&](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) v.push_back(std::string(name) + " must be a positive number");
  };
  if (!c.command.empty() &&
      std::find(command_names().begin(), command_names().end(), c.command) == command_names().end())
    v.push_back("command must be one of " + join(command_names(), ", "));
  const auto dims = system_dims(c.system);
  if (c.system.empty()) v.push_back("system is required");
  else if (!dims) v.push_back("system must be vertical-disk, nonholonomic-particle or veselova");
  for (const auto& [k, x] : c.parameters)
    if (!std::isfinite(x)) v.push_back("parameters." + k + " must be finite");
  if (c.potential != "none" && c.potential != "quadratic")
    v.push_back("potential must be \"none\" or \"quadratic\"");
  positive(c.T, "T");
  positive(c.dt, "dt");
  positive(c.step_tolerance, "step_tolerance");
  positive(c.t_small, "t_small");
  if (c.kind != "nonholonomic" && c.kind != "principal")
    v.push_back("kind must be \"nonholonomic\" or \"principal\"");
  if (c.step_method != "rk4-fixed" && c.step_method != "rk4-step-doubling")
    v.push_back("step_method must be \"rk4-fixed\" or \"rk4-step-doubling\"");
  if (dims) {
    if (c.q0 && c.q0->size() != dims->first)
      v.push_back("q0 must have " + std::to_string(dims->first) + " entries");
    if (c.v0 && c.v0->size() != dims->first)
      v.push_back("v0 must have " + std::to_string(dims->first) + " entries");
  }
  if (c.q0.has_value() != c.v0.has_value()) v.push_back("q0 and v0 must be given together");
  for (const auto& [k, x] : c.tolerances)
    if (!(x >= 0.0) || !std::isfinite(x)) v.push_back("tolerances." + k + " must be >= 0");
  if (c.grid) {
    const Grid& g = *c.grid;
    const std::size_t m = dims ? dims->second : g.lo.size();
    if (g.lo.size() != m || g.hi.size() != m || g.counts.size() != m)
      v.push_back("grid.lo, grid.hi and grid.counts must have " + std::to_string(m) + " entries");
    for (std::uint64_t n : g.counts)
      if (n == 0) v.push_back("grid.counts entries must be positive");
  }
  const auto& s = c.suite;
  if ((s.sample_points && *s.sample_points == 0) || (s.trajectories && *s.trajectories == 0) ||
      (s.psi_states && *s.psi_states == 0))
    v.push_back("suite counts must be positive");
  if (s.conservation_horizon) positive(*s.conservation_horizon, "suite.conservation_horizon");
  if (s.equivalence_horizon) positive(*s.equivalence_horizon, "suite.equivalence_horizon");
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::string to_json(const RunConfig& c) {
  Json doc;
  if (!c.command.empty()) doc["command"] = c.command;
  doc["system"] = c.system;
  doc["parameters"] = Json::object();
  for (const auto& [k, x] : c.parameters) doc["parameters"][k] = x;
  doc["potential"] = c.potential;
  if (c.q0) doc["q0"] = *c.q0;
  if (c.v0) doc["v0"] = *c.v0;
  doc["T"] = c.T;
  doc["dt"] = c.dt;
  doc["seed"] = c.seed;
  doc["kind"] = c.kind;
  doc["step_method"] = c.step_method;
  doc["step_tolerance"] = c.step_tolerance;
  doc["points"] = Json::array();
  for (const auto& p : c.points) doc["points"].push_back(p);
  if (c.grid) doc["grid"] = Json{{"lo", c.grid->lo}, {"hi", c.grid->hi}, {"counts", c.grid->counts}};
  doc["t_small"] = c.t_small;
  doc["tolerances"] = Json::object();
  for (const auto& [k, x] : c.tolerances) doc["tolerances"][k] = x;
  Json suite = Json::object();
  if (c.suite.sample_points) suite["sample_points"] = *c.suite.sample_points;
  if (c.suite.trajectories) suite["trajectories"] = *c.suite.trajectories;
  if (c.suite.psi_states) suite["psi_states"] = *c.suite.psi_states;
  if (c.suite.conservation_horizon) suite["conservation_horizon"] = *c.suite.conservation_horizon;
  if (c.suite.equivalence_horizon) suite["equivalence_horizon"] = *c.suite.equivalence_horizon;
  doc["suite"] = suite;
  doc["output"] = c.output;
  return doc.dump(2) + "\n";
}

std::string suite_json(const RunConfig& c) {
  Json doc;
  doc["dt"] = c.dt;
  doc["step_method"] = c.step_method;
  doc["step_tolerance"] = c.step_tolerance;
  doc["t_small"] = c.t_small;
  if (c.suite.sample_points) doc["sample_points"] = *c.suite.sample_points;
  if (c.suite.trajectories) doc["trajectories"] = *c.suite.trajectories;
  if (c.suite.psi_states) doc["psi_states"] = *c.suite.psi_states;
  if (c.suite.conservation_horizon) doc["conservation_horizon"] = *c.suite.conservation_horizon;
  if (c.suite.equivalence_horizon) doc["equivalence_horizon"] = *c.suite.equivalence_horizon;
  if (!c.tolerances.empty()) {
    doc["tolerances"] = Json::object();
    for (const auto& [k, x] : c.tolerances) doc["tolerances"][k] = x;
  }
  return doc.dump();
}

}  // namespace nhgeo::cli
