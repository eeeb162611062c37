// Copyright 2026 The gkpforge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface of the gkpforge library. Every function reports failures
 * through gkp_status; gkp_last_error() returns the message of the most recent
 * failure on the calling thread. Strings returned through char** must be
 * released with gkp_string_free. */
#ifndef GKPFORGE_H
#define GKPFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(GKPFORGE_BUILDING_LIBRARY)
#define GKP_API __attribute__((visibility("default")))
#else
#define GKP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gkp_status {
    GKP_OK = 0,
    GKP_ERR_INVALID_ARGUMENT = 1,
    GKP_ERR_INVALID_DIMENSION = 2,
    GKP_ERR_UNSUPPORTED_GATE = 3,
    GKP_ERR_CUTOFF_TOO_SMALL = 4,
    GKP_ERR_NOT_CONVERGED = 5,
    GKP_ERR_CONFIGURATION = 6,
    GKP_ERR_RESOURCE_LIMIT = 7,
    GKP_ERR_GRID_RESOLUTION = 8,
    GKP_ERR_IO = 9,
    GKP_ERR_INTERNAL = 100
} gkp_status;

typedef enum gkp_label { GKP_LABEL_ZERO = 0, GKP_LABEL_ONE = 1, GKP_LABEL_H = 2 } gkp_label;

typedef enum gkp_basis { GKP_BASIS_POSITION = 0, GKP_BASIS_MOMENTUM = 1 } gkp_basis;

typedef enum gkp_logical_gate {
    GKP_LOGICAL_XBAR = 0,
    GKP_LOGICAL_ZBAR = 1,
    GKP_LOGICAL_FOURIER = 2, /* parameter: rotation angle, 0 selects pi/2 */
    GKP_LOGICAL_SBAR = 3     /* parameter: shear strength s */
} gkp_logical_gate;

typedef struct gkp_state gkp_state;
typedef struct gkp_params gkp_params;
typedef struct gkp_record gkp_record;

GKP_API const char *gkp_version(void);
GKP_API const char *gkp_last_error(void);
/* Cutoff estimate attached to the last GKP_ERR_CUTOFF_TOO_SMALL, else 0. */
GKP_API int gkp_last_required_cutoff(void);
GKP_API void gkp_string_free(char *text);

GKP_API gkp_status gkp_label_parse(const char *text, gkp_label *out);

/* ---- target states and models ---- */

GKP_API gkp_status gkp_state_target(double delta, gkp_label mu, int cutoff, double max_leakage, gkp_state **out);
GKP_API gkp_status gkp_target_leakage(double delta, gkp_label mu, int cutoff, double *out);
GKP_API gkp_status gkp_converged_cutoff(double delta, gkp_label mu, double tol, int *out);
GKP_API gkp_status gkp_select_cutoff(double delta, gkp_label mu, int *out);

GKP_API double gkp_squeezing_db(double delta);
GKP_API double gkp_delta_from_db(double s_db);
/* Closed form and one-cell quadrature; either output may be NULL. */
GKP_API gkp_status gkp_twirled_error_probability(double delta, double *closed_form, double *quadrature);
GKP_API double gkp_threshold_error_probability(void);

/* ---- state handles ---- */

GKP_API gkp_status gkp_state_from_json(const char *json, gkp_state **out);
GKP_API gkp_status gkp_state_to_json(const gkp_state *state, char **out);
GKP_API void gkp_state_free(gkp_state *state);
GKP_API int gkp_state_cutoff(const gkp_state *state);
GKP_API double gkp_state_delta(const gkp_state *state);
/* Interleaved (re, im) pairs; `capacity` counts doubles. */
GKP_API gkp_status gkp_state_amplitudes(const gkp_state *state, double *re_im, size_t capacity);
/* Density on the default grid of the state's cutoff. With x == NULL only the
 * point count is written to *count. */
GKP_API gkp_status gkp_state_density(const gkp_state *state, gkp_basis basis, double *x, double *rho, size_t capacity,
                                     size_t *count);
GKP_API gkp_status gkp_state_apply_logical(const gkp_state *state, gkp_logical_gate gate, double parameter,
                                           gkp_state **out);

typedef struct gkp_error_config {
    double bound;          /* correctable half-width, default sqrt(pi)/6 */
    int quad_nodes;        /* per axis, default 64 */
    double convergence_tol; /* doubling gate, default 1e-6 */
    gkp_label reference;    /* lattice the shifts are measured from, ZERO or ONE */
} gkp_error_config;

GKP_API void gkp_error_config_default(gkp_error_config *cfg);
GKP_API gkp_status gkp_fidelity(const gkp_state *a, const gkp_state *b, double *out);
/* cfg may be NULL for the defaults. */
GKP_API gkp_status gkp_error_probability(const gkp_state *state, const gkp_error_config *cfg, double *out);

/* ---- circuits and optimization ---- */

typedef struct gkp_optimizer_config {
    int trials;
    int max_iters;
    double step_size;
    double final_step_ratio; /* geometric decay of the step over max_iters */
    double kerr_step_scale;
    double beta1;
    double beta2;
    double init_c;
    double init_d;
    double init_k;
    double init_r;
    uint64_t seed;
    double early_stop_infidelity;
    int plateau_window;
    double plateau_tol;
    int working_margin; /* optimization window = cutoff + working_margin */
    int guard_band;     /* extra levels of the gates beyond the window */
    int threads;        /* 0: hardware concurrency */
} gkp_optimizer_config;

GKP_API void gkp_optimizer_config_default(gkp_optimizer_config *cfg);
GKP_API int gkp_default_blocks(double delta);
GKP_API int gkp_default_trials(double delta);

GKP_API gkp_status gkp_optimize(double delta, gkp_label mu, int cutoff, int blocks, double max_leakage,
                                const gkp_optimizer_config *cfg, gkp_record **out);
GKP_API void gkp_record_free(gkp_record *record);
GKP_API double gkp_record_best_fidelity(const gkp_record *record);
GKP_API int gkp_record_best_trial(const gkp_record *record);
/* Cutoff of the target; best params run at target cutoff + working margin. */
GKP_API int gkp_record_target_cutoff(const gkp_record *record);
GKP_API int gkp_record_trial_count(const gkp_record *record);
GKP_API double gkp_record_wallclock(const gkp_record *record);
GKP_API gkp_status gkp_record_best_params(const gkp_record *record, gkp_params **out);
GKP_API gkp_status gkp_record_to_json(const gkp_record *record, char **out);
/* Trace of one trial as CSV (iteration, infidelity, best_infidelity). */
GKP_API gkp_status gkp_record_trace_csv(const gkp_record *record, int trial, char **out);

GKP_API gkp_status gkp_params_from_json(const char *json, gkp_params **out);
GKP_API gkp_status gkp_params_to_json(const gkp_params *params, char **out);
GKP_API void gkp_params_free(gkp_params *params);
GKP_API int gkp_params_blocks(const gkp_params *params);
GKP_API int gkp_params_cutoff(const gkp_params *params);
GKP_API double gkp_params_delta(const gkp_params *params);
GKP_API gkp_label gkp_params_label(const gkp_params *params);
GKP_API gkp_status gkp_forward(const gkp_params *params, gkp_state **out);
/* Probability kept below the cutoff when re-run at cutoff + margin. */
GKP_API gkp_status gkp_validate_leakage(const gkp_params *params, int margin, double *retained);

/* ---- error correction ---- */

typedef struct gkp_ec_result {
    double p_sample;
    double correction;
    double p_error_before;
    double p_error_after;
    double marginal_norm;
} gkp_ec_result;

GKP_API double gkp_ec_correction(double p);
/* momentum_spacing <= 0 selects 0.01; post_state may be NULL. */
GKP_API gkp_status gkp_ec_round(const gkp_state *data, const gkp_state *ancilla, uint64_t seed, double momentum_spacing,
                                gkp_ec_result *out, gkp_state **post_state);

#ifdef __cplusplus
}
#endif

#endif
