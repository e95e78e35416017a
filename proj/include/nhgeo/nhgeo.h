/* Copyright 2026 The nhgeo Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of libnhgeo. Handles are opaque; every call returns an
 * nhgeo_status and leaves a thread-local message behind on failure.
 * Strings returned through char** are owned by the caller and released
 * with nhgeo_string_free.
 */
#ifndef NHGEO_NHGEO_H
#define NHGEO_NHGEO_H

#include <stddef.h>
#include <stdint.h>

#if defined(NHGEO_BUILDING_LIBRARY)
#define NHGEO_API __attribute__((visibility("default")))
#else
#define NHGEO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nhgeo_status {
  NHGEO_OK = 0,
  NHGEO_INVALID_ARGUMENT = 1,
  NHGEO_INVALID_PARAMETERS = 2,
  NHGEO_SINGULAR_MATRIX = 3,
  NHGEO_EVALUATION_FAILURE = 4,
  NHGEO_NON_FINITE_STATE = 5,
  NHGEO_RANK_DEFICIENT = 6,
  NHGEO_NOT_PHI_SIMPLE = 7,
  NHGEO_NON_CLOSED_FORM = 8,
  NHGEO_CONSTRAINT_VIOLATED = 9,
  NHGEO_SINGULAR_SADDLE = 10,
  NHGEO_SHOOTING_DIVERGED = 11,
  NHGEO_DOMAIN_ERROR = 12,
  NHGEO_INTERNAL_ERROR = 13
} nhgeo_status;

typedef enum nhgeo_potential {
  NHGEO_POTENTIAL_NONE = 0,
  NHGEO_POTENTIAL_QUADRATIC = 1 /* Vbar = k/2 qbar[last]^2, k = 1 */
} nhgeo_potential;

typedef enum nhgeo_trajectory_kind {
  NHGEO_NONHOLONOMIC = 0, /* Lagrange-d'Alembert with the system metric */
  NHGEO_PRINCIPAL = 1     /* geodesic / mechanical trajectory of h */
} nhgeo_trajectory_kind;

typedef enum nhgeo_step_method { NHGEO_RK4_FIXED = 0, NHGEO_RK4_STEP_DOUBLING = 1 } nhgeo_step_method;

typedef struct nhgeo_system nhgeo_system;
typedef struct nhgeo_trajectory nhgeo_trajectory;

NHGEO_API const char* nhgeo_version(void);
NHGEO_API const char* nhgeo_status_name(nhgeo_status status);
/* Message of the last failing call on this thread ("" if none). */
NHGEO_API const char* nhgeo_last_error_message(void);
NHGEO_API void nhgeo_string_free(char* s);

/* Build a named system ("vertical-disk", "nonholonomic-particle",
 * "veselova"). keys/values may be NULL when nparams == 0. */
NHGEO_API nhgeo_status nhgeo_system_create(const char* name, const char* const* keys,
                                           const double* values, size_t nparams,
                                           nhgeo_potential potential, nhgeo_system** out);
NHGEO_API void nhgeo_system_destroy(nhgeo_system* sys);
NHGEO_API size_t nhgeo_system_dim(const nhgeo_system* sys);
NHGEO_API size_t nhgeo_system_base_dim(const nhgeo_system* sys);

/* Row-major n x n matrix H(q) of the principal metric. */
NHGEO_API nhgeo_status nhgeo_principal_metric(const nhgeo_system* sys, const double* q, size_t n,
                                              double* out_h);

/* Recovered phi at qbar (pinned at the system's reference base point),
 * recovered dphi (m values) and the phi-simplicity residual there. */
NHGEO_API nhgeo_status nhgeo_recover_phi(const nhgeo_system* sys, const double* qbar, size_t m,
                                         double* out_phi, double* out_dphi, double* out_residual);

NHGEO_API nhgeo_status nhgeo_simulate(const nhgeo_system* sys, nhgeo_trajectory_kind kind,
                                      const double* q0, const double* v0, size_t n, double t_end,
                                      nhgeo_step_method method, double dt, double tolerance,
                                      nhgeo_trajectory** out);
NHGEO_API void nhgeo_trajectory_destroy(nhgeo_trajectory* traj);
NHGEO_API size_t nhgeo_trajectory_size(const nhgeo_trajectory* traj);
NHGEO_API size_t nhgeo_trajectory_dim(const nhgeo_trajectory* traj);
/* Copies sample k: time, point (dim values) and velocity (dim values). */
NHGEO_API nhgeo_status nhgeo_trajectory_sample(const nhgeo_trajectory* traj, size_t k,
                                               double* out_t, double* out_q, double* out_v);
/* Warnings collected while admitting the initial data, newline separated. */
NHGEO_API nhgeo_status nhgeo_trajectory_warnings(const nhgeo_trajectory* traj, char** out);
NHGEO_API nhgeo_status nhgeo_trajectory_csv(const nhgeo_trajectory* traj, char** out);

/* Runs the verification suite. config_json may be NULL or an object with
 * optional keys: dt, step_method ("rk4-fixed"/"rk4-step-doubling"),
 * step_tolerance, sample_points, trajectories, psi_states,
 * conservation_horizon, equivalence_horizon, t_small, tolerances
 * (object of check name -> value). *out_all_pass is 1 iff every check
 * passed. */
NHGEO_API nhgeo_status nhgeo_verify(const nhgeo_system* sys, uint64_t seed, const char* config_json,
                                    char** out_report, int* out_all_pass);

/* Length of the nonholonomic arc from (q0, v0) over [0, t_small] and the
 * h-distance of its ends by geodesic shooting. */
NHGEO_API nhgeo_status nhgeo_distance(const nhgeo_system* sys, const double* q0, const double* v0,
                                      size_t n, double t_small, double dt, double* out_length,
                                      double* out_distance, double* out_t_used);

#ifdef __cplusplus
}
#endif

#endif /* NHGEO_NHGEO_H */
