/* Copyright 2026 The catsim Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CATSIM_CATSIM_H
#define CATSIM_CATSIM_H

/*
 * C interface to the catsim library.
 *
 * Objects are opaque handles created by *_create / *_build / catsim_state_*
 * functions and released with the matching *_destroy. Every fallible call
 * returns a catsim_status; on failure catsim_last_error() holds a message
 * for the calling thread. Complex arrays are interleaved (re, im) doubles;
 * matrices are row-major. Composite-space ordering is vibration, cavity,
 * qubit with qubit basis (e, g).
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CATSIM_BUILDING_DLL)
#    define CATSIM_API __declspec(dllexport)
#  else
#    define CATSIM_API __declspec(dllimport)
#  endif
#else
#  define CATSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum catsim_status {
  CATSIM_OK = 0,
  CATSIM_ERR_INVALID_ARGUMENT = 1,
  CATSIM_ERR_DIMENSION = 2,
  CATSIM_ERR_NOT_HERMITIAN = 3,
  CATSIM_ERR_NO_CONVERGENCE = 4,
  CATSIM_ERR_NOT_NORMALIZED = 5,
  CATSIM_ERR_TRUNCATION = 6,
  CATSIM_ERR_DEGENERATE = 7,
  CATSIM_ERR_CONFIG = 8,
  CATSIM_ERR_IO = 9,
  CATSIM_ERR_TOLERANCE = 10,
  CATSIM_ERR_BUFFER_TOO_SMALL = 11,
  CATSIM_ERR_INTERNAL = 12
} catsim_status;

typedef struct catsim_params {
  double nu;
  double omega;
  double omega0;
  double g;
  double eta;
} catsim_params;

typedef struct catsim_truncation {
  size_t n_vib;
  size_t n_cav;
  size_t guard;
} catsim_truncation;

typedef struct catsim_thresholds {
  double ratio_drive;
  double eta_ld;
} catsim_thresholds;

typedef struct catsim_regime_report {
  double ratio_drive; /* +inf when g = 0 */
  double ratio_ld;
  int regime_ok;
  int beyond_ld;
} catsim_regime_report;

typedef struct catsim_transform_check {
  double h_max;
  double residual;
  double relative;
  double conjugated_residual;
  double t_unitarity;
  double d_unitarity;
} catsim_transform_check;

typedef struct catsim_observables {
  double p_e;
  double p_g;
  double n_vib;
  double n_cav;
  double parity;
} catsim_observables;

typedef struct catsim_validation_sample {
  double time;
  double fidelity_regime;
  double fidelity_full;
  double propagator_deviation;
} catsim_validation_sample;

typedef enum catsim_operator_kind {
  CATSIM_OP_H_FULL = 0,
  CATSIM_OP_H_TRANSFORMED = 1,
  CATSIM_OP_H_REGIME = 2,
  CATSIM_OP_TRANSFORM = 3,
  CATSIM_OP_ANALYTIC_PROPAGATOR = 4 /* uses the time argument */
} catsim_operator_kind;

typedef enum catsim_evolution {
  CATSIM_EVOLVE_FULL = 0,        /* exp(-i H t) */
  CATSIM_EVOLVE_TRANSFORMED = 1, /* T^dag exp(-i H_T t) T */
  CATSIM_EVOLVE_REGIME = 2       /* T^dag exp(-i H_regime t) T */
} catsim_evolution;

typedef enum catsim_level { CATSIM_EXCITED = 0, CATSIM_GROUND = 1 } catsim_level;
typedef enum catsim_branch { CATSIM_BRANCH_PLUS = 0, CATSIM_BRANCH_MINUS = 1 } catsim_branch;
typedef enum catsim_norm_mode { CATSIM_NORM_BARE = 0, CATSIM_NORM_PROPER = 1 } catsim_norm_mode;

typedef struct catsim_system catsim_system;
typedef struct catsim_operator catsim_operator;
typedef struct catsim_state catsim_state;

CATSIM_API const char* catsim_version(void);
CATSIM_API const char* catsim_last_error(void);
CATSIM_API const char* catsim_status_string(catsim_status status);
/* 0 ok, 1 config/validation error, 2 numerical tolerance violation. */
CATSIM_API int catsim_exit_code(catsim_status status);

CATSIM_API void catsim_default_params(catsim_params* out);
CATSIM_API void catsim_default_truncation(catsim_truncation* out);
CATSIM_API void catsim_default_thresholds(catsim_thresholds* out);

/* Validates params and truncation. The handle caches spectral decompositions;
 * a handle must not be used from two threads at once. */
CATSIM_API catsim_status catsim_system_create(const catsim_params* params,
                                              const catsim_truncation* trunc,
                                              catsim_system** out);
CATSIM_API void catsim_system_destroy(catsim_system* sys);
CATSIM_API size_t catsim_system_dim(const catsim_system* sys);

/* thresholds may be NULL for the defaults. */
CATSIM_API catsim_status catsim_compute_regime_report(const catsim_params* params,
                                              const catsim_thresholds* thresholds,
                                              catsim_regime_report* out);
CATSIM_API catsim_status catsim_run_transform_check(const catsim_system* sys,
                                                catsim_transform_check* out);
/* out must hold n_times samples. */
CATSIM_API catsim_status catsim_validation_run(const catsim_system* sys, const double* times,
                                               size_t n_times, catsim_validation_sample* out);

CATSIM_API catsim_status catsim_operator_build(const catsim_system* sys,
                                               catsim_operator_kind kind, double t,
                                               catsim_operator** out);
CATSIM_API void catsim_operator_destroy(catsim_operator* op);
CATSIM_API size_t catsim_operator_dim(const catsim_operator* op);
/* capacity counts doubles; needs 2 * dim * dim. */
CATSIM_API catsim_status catsim_operator_entries(const catsim_operator* op, double* out,
                                                 size_t capacity);
/* max |a - b| over the interior block of sys's truncation. */
CATSIM_API catsim_status catsim_operator_interior_distance(const catsim_system* sys,
                                                           const catsim_operator* a,
                                                           const catsim_operator* b,
                                                           double* out);

CATSIM_API catsim_status catsim_state_initial(const catsim_system* sys, catsim_state** out);
CATSIM_API catsim_status catsim_state_analytic(const catsim_system* sys, double t,
                                               catsim_state** out);
CATSIM_API catsim_status catsim_state_evolve(catsim_system* sys, catsim_evolution how,
                                             const catsim_state* psi0, double t,
                                             catsim_state** out);
CATSIM_API catsim_status catsim_state_apply(const catsim_operator* op, const catsim_state* psi,
                                            catsim_state** out);
CATSIM_API catsim_status catsim_state_pulse_v(const catsim_state* psi, catsim_state** out);
CATSIM_API void catsim_state_destroy(catsim_state* psi);
CATSIM_API size_t catsim_state_dim(const catsim_state* psi);
CATSIM_API catsim_status catsim_state_amplitudes(const catsim_state* psi, double* out,
                                                 size_t capacity);
CATSIM_API catsim_status catsim_state_observables(const catsim_state* psi,
                                                  catsim_observables* out);
CATSIM_API catsim_status catsim_state_fidelity(const catsim_state* a, const catsim_state* b,
                                               double* out);

/* Projects onto `outcome` (and the cavity vacuum if requested) and writes the
 * renormalized conditional amplitudes. A zero-probability outcome returns
 * CATSIM_OK with *written = 0 and *probability = 0. */
CATSIM_API catsim_status catsim_state_collapse(const catsim_state* psi, catsim_level outcome,
                                               int require_cavity_vacuum, double* probability,
                                               double* amplitudes, size_t capacity,
                                               size_t* written);

/* Motional cat (|b> +/- |-b>); writes 2 * dim doubles. */
CATSIM_API catsim_status catsim_cat_state(double beta_re, double beta_im, catsim_branch branch,
                                          size_t dim, catsim_norm_mode mode, double* out,
                                          size_t capacity);
CATSIM_API catsim_status catsim_motional_parity(const double* amplitudes, size_t dim,
                                                double* out);
/* alphas: n_points interleaved complex points; w_out: n_points doubles. */
CATSIM_API catsim_status catsim_wigner(const double* amplitudes, size_t dim, size_t guard,
                                       const double* alphas, size_t n_points, double* w_out);

/* Runs a scenario config file. output_dir may be NULL to keep the config's.
 * Sweep parallelism is read from the CATSIM_THREADS environment variable. */
CATSIM_API catsim_status catsim_run_config(const char* config_path, const char* output_dir);

#ifdef __cplusplus
}
#endif

#endif /* CATSIM_CATSIM_H */
