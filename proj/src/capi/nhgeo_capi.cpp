// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nhgeo/nhgeo.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "nhgeo/chaplygin.hpp"
#include "nhgeo/dynamics.hpp"
#include "nhgeo/io.hpp"
#include "nhgeo/systems.hpp"
#include "nhgeo/verify.hpp"

struct nhgeo_system {
  nhgeo::chaplygin::BundleSystem sys;
};

struct nhgeo_trajectory {
  nhgeo::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

nhgeo_status status_of(nhgeo::ErrorCode code) {
  using nhgeo::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return NHGEO_INVALID_ARGUMENT;
    case ErrorCode::singular_matrix: return NHGEO_SINGULAR_MATRIX;
    case ErrorCode::evaluation_failure: return NHGEO_EVALUATION_FAILURE;
    case ErrorCode::non_finite_state: return NHGEO_NON_FINITE_STATE;
    case ErrorCode::rank_deficient: return NHGEO_RANK_DEFICIENT;
    case ErrorCode::not_phi_simple: return NHGEO_NOT_PHI_SIMPLE;
    case ErrorCode::non_closed_form: return NHGEO_NON_CLOSED_FORM;
    case ErrorCode::constraint_violated: return NHGEO_CONSTRAINT_VIOLATED;
    case ErrorCode::singular_saddle: return NHGEO_SINGULAR_SADDLE;
    case ErrorCode::shooting_diverged: return NHGEO_SHOOTING_DIVERGED;
    case ErrorCode::invalid_parameters: return NHGEO_INVALID_PARAMETERS;
    case ErrorCode::domain_error: return NHGEO_DOMAIN_ERROR;
  }
  return NHGEO_INTERNAL_ERROR;
}

template <class F>
nhgeo_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return NHGEO_OK;
  } catch (const nhgeo::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("config: ") + e.what();
    return NHGEO_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NHGEO_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NHGEO_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) nhgeo::fail(nhgeo::ErrorCode::invalid_argument, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nhgeo::verify::SuiteConfig parse_suite_config(const char* text, std::uint64_t seed) {
  nhgeo::verify::SuiteConfig cfg;
  cfg.seed = seed;
  if (text == nullptr || *text == '\0') return cfg;
  const nlohmann::json doc = nlohmann::json::parse(text);
  require(doc.is_object(), "verify config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "dt") {
      cfg.stepper.step = value.get<double>();
    } else if (key == "step_method") {
      const auto m = value.get<std::string>();
      if (m == "rk4-fixed") cfg.stepper.method = nhgeo::numeric::StepMethod::rk4_fixed;
      else if (m == "rk4-step-doubling") cfg.stepper.method = nhgeo::numeric::StepMethod::rk4_step_doubling;
      else nhgeo::fail(nhgeo::ErrorCode::invalid_argument, "unknown step_method '" + m + "'");
    } else if (key == "step_tolerance") {
      cfg.stepper.tolerance = value.get<double>();
    } else if (key == "sample_points") {
      cfg.sample_points = value.get<std::size_t>();
    } else if (key == "trajectories") {
      cfg.trajectories = value.get<std::size_t>();
    } else if (key == "psi_states") {
      cfg.psi_states = value.get<std::size_t>();
    } else if (key == "conservation_horizon") {
      cfg.conservation_horizon = value.get<double>();
    } else if (key == "equivalence_horizon") {
      cfg.equivalence_horizon = value.get<double>();
    } else if (key == "t_small") {
      cfg.t_small = value.get<double>();
    } else if (key == "tolerances") {
      require(value.is_object(), "tolerances must be an object");
      for (const auto& [name, tol] : value.items()) cfg.tolerances[name] = tol.get<double>();
    } else {
      nhgeo::fail(nhgeo::ErrorCode::invalid_argument, "unknown verify config key '" + key + "'");
    }
  }
  nhgeo::verify::validate(cfg);
  return cfg;
}

}  // namespace

extern "C" {

const char* nhgeo_version(void) { return "0.1.0"; }

const char* nhgeo_status_name(nhgeo_status status) {
  switch (status) {
    case NHGEO_OK: return "Ok";
    case NHGEO_INVALID_ARGUMENT: return "InvalidArgument";
    case NHGEO_INVALID_PARAMETERS: return "InvalidParameters";
    case NHGEO_SINGULAR_MATRIX: return "SingularMatrix";
    case NHGEO_EVALUATION_FAILURE: return "EvaluationFailure";
    case NHGEO_NON_FINITE_STATE: return "NonFiniteState";
    case NHGEO_RANK_DEFICIENT: return "RankDeficient";
    case NHGEO_NOT_PHI_SIMPLE: return "NotPhiSimple";
    case NHGEO_NON_CLOSED_FORM: return "NonClosedForm";
    case NHGEO_CONSTRAINT_VIOLATED: return "ConstraintViolated";
    case NHGEO_SINGULAR_SADDLE: return "SingularSaddle";
    case NHGEO_SHOOTING_DIVERGED: return "ShootingDiverged";
    case NHGEO_DOMAIN_ERROR: return "DomainError";
    case NHGEO_INTERNAL_ERROR: return "InternalError";
  }
  return "Unknown";
}

const char* nhgeo_last_error_message(void) { return g_last_error.c_str(); }

void nhgeo_string_free(char* s) { std::free(s); }

nhgeo_status nhgeo_system_create(const char* name, const char* const* keys, const double* values,
                                 size_t nparams, nhgeo_potential potential, nhgeo_system** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "system_create: null argument");
    require(nparams == 0 || (keys != nullptr && values != nullptr), "system_create: null parameters");
    *out = nullptr;
    nhgeo::systems::SystemDescriptor d;
    d.name = name;
    for (size_t i = 0; i < nparams; ++i) {
      require(keys[i] != nullptr, "system_create: null parameter key");
      d.parameters[keys[i]] = values[i];
    }
    switch (potential) {
      case NHGEO_POTENTIAL_NONE: break;
      case NHGEO_POTENTIAL_QUADRATIC: d.potential.kind = nhgeo::systems::PotentialKind::quadratic; break;
      default: require(false, "system_create: unknown potential selector");
    }
    *out = new nhgeo_system{nhgeo::systems::build(d)};
  });
}

void nhgeo_system_destroy(nhgeo_system* sys) { delete sys; }

size_t nhgeo_system_dim(const nhgeo_system* sys) { return sys ? sys->sys.dim() : 0; }

size_t nhgeo_system_base_dim(const nhgeo_system* sys) { return sys ? sys->sys.base_dim() : 0; }

nhgeo_status nhgeo_principal_metric(const nhgeo_system* sys, const double* q, size_t n,
                                    double* out_h) {
  return guarded([&] {
    require(sys != nullptr && q != nullptr && out_h != nullptr, "principal_metric: null argument");
    require(n == sys->sys.dim(), "principal_metric: point has wrong dimension");
    const auto h = nhgeo::chaplygin::principal_metric(sys->sys);
    const nhgeo::DenseMatrix hq = h(std::span<const double>(q, n));
    std::memcpy(out_h, hq.entries().data(), n * n * sizeof(double));
  });
}

nhgeo_status nhgeo_recover_phi(const nhgeo_system* sys, const double* qbar, size_t m,
                               double* out_phi, double* out_dphi, double* out_residual) {
  return guarded([&] {
    require(sys != nullptr && qbar != nullptr, "recover_phi: null argument");
    require(m == sys->sys.base_dim(), "recover_phi: base point has wrong dimension");
    const std::span<const double> x(qbar, m);
    const auto fit = nhgeo::chaplygin::dphi_fit(sys->sys, x);
    if (fit.residual > nhgeo::chaplygin::kPhiSimpleThreshold)
      nhgeo::fail(nhgeo::ErrorCode::not_phi_simple,
                  "gyroscopic tensor residual " + std::to_string(fit.residual) + " above threshold");
    nhgeo::chaplygin::PhiOptions opts;
    opts.source = nhgeo::chaplygin::PhiSource::recovered;
    const double phi = nhgeo::chaplygin::recover_phi(sys->sys, sys->sys.reference_base(), x, opts);
    if (out_phi) *out_phi = phi;
    if (out_dphi) std::memcpy(out_dphi, fit.dphi.data(), m * sizeof(double));
    if (out_residual) *out_residual = fit.residual;
  });
}

nhgeo_status nhgeo_simulate(const nhgeo_system* sys, nhgeo_trajectory_kind kind, const double* q0,
                            const double* v0, size_t n, double t_end, nhgeo_step_method method,
                            double dt, double tolerance, nhgeo_trajectory** out) {
  return guarded([&] {
    require(sys != nullptr && q0 != nullptr && v0 != nullptr && out != nullptr,
            "simulate: null argument");
    require(n == sys->sys.dim(), "simulate: state has wrong dimension");
    *out = nullptr;
    nhgeo::numeric::OdeStepper stepper;
    stepper.method = method == NHGEO_RK4_STEP_DOUBLING ? nhgeo::numeric::StepMethod::rk4_step_doubling
                                                       : nhgeo::numeric::StepMethod::rk4_fixed;
    stepper.step = dt;
    if (tolerance > 0.0) stepper.tolerance = tolerance;
    stepper.validate();
    const std::span<const double> q(q0, n), v(v0, n);
    nhgeo::Trajectory traj;
    if (kind == NHGEO_NONHOLONOMIC) {
      traj = nhgeo::dynamics::integrate_nonholonomic(sys->sys, q, v, t_end, stepper);
    } else if (kind == NHGEO_PRINCIPAL) {
      std::vector<std::string> warnings;
      const nhgeo::Vector v_adm = nhgeo::dynamics::admissible_velocity(sys->sys, q, v, &warnings);
      const auto h = nhgeo::chaplygin::principal_metric(sys->sys);
      const auto pot = sys->sys.potential_on_total();
      traj = nhgeo::dynamics::integrate_mechanical(h, pot ? &*pot : nullptr, q, v_adm, t_end, stepper);
      traj.meta.warnings = std::move(warnings);
    } else {
      require(false, "simulate: unknown trajectory kind");
    }
    traj.meta.system = sys->sys.name();
    *out = new nhgeo_trajectory{std::move(traj)};
  });
}

void nhgeo_trajectory_destroy(nhgeo_trajectory* traj) { delete traj; }

size_t nhgeo_trajectory_size(const nhgeo_trajectory* traj) { return traj ? traj->traj.size() : 0; }

size_t nhgeo_trajectory_dim(const nhgeo_trajectory* traj) { return traj ? traj->traj.dim() : 0; }

nhgeo_status nhgeo_trajectory_sample(const nhgeo_trajectory* traj, size_t k, double* out_t,
                                     double* out_q, double* out_v) {
  return guarded([&] {
    require(traj != nullptr, "trajectory_sample: null trajectory");
    require(k < traj->traj.size(), "trajectory_sample: index out of range");
    const std::size_t n = traj->traj.dim();
    if (out_t) *out_t = traj->traj.times[k];
    if (out_q) std::memcpy(out_q, traj->traj.points[k].data(), n * sizeof(double));
    if (out_v) std::memcpy(out_v, traj->traj.velocities[k].data(), n * sizeof(double));
  });
}

nhgeo_status nhgeo_trajectory_warnings(const nhgeo_trajectory* traj, char** out) {
  return guarded([&] {
    require(traj != nullptr && out != nullptr, "trajectory_warnings: null argument");
    std::string joined;
    for (const std::string& w : traj->traj.meta.warnings) joined += w + "\n";
    *out = duplicate(joined);
  });
}

nhgeo_status nhgeo_trajectory_csv(const nhgeo_trajectory* traj, char** out) {
  return guarded([&] {
    require(traj != nullptr && out != nullptr, "trajectory_csv: null argument");
    *out = duplicate(nhgeo::io::trajectory_csv(traj->traj));
  });
}

nhgeo_status nhgeo_verify(const nhgeo_system* sys, uint64_t seed, const char* config_json,
                          char** out_report, int* out_all_pass) {
  return guarded([&] {
    require(sys != nullptr && out_report != nullptr, "verify: null argument");
    *out_report = nullptr;
    const auto cfg = parse_suite_config(config_json, seed);
    const auto report = nhgeo::verify::run_suite(sys->sys, cfg);
    *out_report = duplicate(nhgeo::io::report_json(report));
    if (out_all_pass) *out_all_pass = report.all_pass() ? 1 : 0;
  });
}

nhgeo_status nhgeo_distance(const nhgeo_system* sys, const double* q0, const double* v0, size_t n,
                            double t_small, double dt, double* out_length, double* out_distance,
                            double* out_t_used) {
  return guarded([&] {
    require(sys != nullptr && q0 != nullptr && v0 != nullptr, "distance: null argument");
    require(n == sys->sys.dim(), "distance: state has wrong dimension");
    nhgeo::numeric::OdeStepper stepper;
    stepper.step = dt;
    stepper.validate();
    const auto r = nhgeo::verify::check_distance(sys->sys, std::span<const double>(q0, n),
                                                 std::span<const double>(v0, n), t_small, stepper);
    if (out_length) *out_length = r.length;
    if (out_distance) *out_distance = r.distance;
    if (out_t_used) *out_t_used = r.t_used;
  });
}

}  // extern "C"
