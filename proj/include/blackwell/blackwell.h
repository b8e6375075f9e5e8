/* Copyright 2026 The Blackwell Solver Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the solver. Every call returns a bw_status; on failure
 * bw_last_error() describes the problem for the calling thread. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * bw_*_destroy function (passing NULL is allowed). */

#ifndef BLACKWELL_BLACKWELL_H_
#define BLACKWELL_BLACKWELL_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define BW_API __attribute__((visibility("default")))
#else
#define BW_API
#endif

typedef enum bw_status {
  BW_OK = 0,
  BW_INVALID_ARGUMENT = 1, /* null pointer, bad size or unknown name */
  BW_DOMAIN_ERROR = 2,     /* input outside the mathematical domain */
  BW_CONFIG_ERROR = 3,     /* experiment configuration rejected */
  BW_IO_ERROR = 4,
  BW_BUFFER_TOO_SMALL = 5,
  BW_INTERNAL_ERROR = 6
} bw_status;

typedef struct bw_domain bw_domain;
typedef struct bw_learner bw_learner;
typedef struct bw_problem bw_problem;
typedef struct bw_trace bw_trace;

BW_API const char* bw_version(void);
/* Message for the last failed call on this thread; "" after success. */
BW_API const char* bw_last_error(void);
/* Key named by the last BW_CONFIG_ERROR on this thread, or "". */
BW_API const char* bw_last_error_key(void);
BW_API const char* bw_status_name(bw_status status);

/* ---- Decision sets and cone projection ---- */

/* kind: "simplex", "l1_ball", "l2_ball" or "linf_ball". */
BW_API bw_status bw_domain_create(const char* kind, int n, bw_domain** out);
/* {x : |x - center|_2 <= radius}. */
BW_API bw_status bw_domain_create_ball(const double* center, int n,
                                       double radius, bw_domain** out);
/* Simplex slice {x in simplex : |x - center|_2 <= radius}. */
BW_API bw_status bw_domain_create_ellipsoid(const double* center, int n,
                                            double radius, bw_domain** out);
BW_API void bw_domain_destroy(bw_domain* domain);
BW_API int bw_domain_dim(const bw_domain* domain);
/* Dimension of the hat part of lifted vectors (n - 1 for the slice). */
BW_API int bw_domain_cone_dim(const bw_domain* domain);
BW_API double bw_domain_kappa(const bw_domain* domain);
/* Projects (tilde, hat[0..len)) onto the cone over the domain. */
BW_API bw_status bw_domain_project_cone(const bw_domain* domain, double tilde,
                                        const double* hat, int len,
                                        double* out_tilde, double* out_hat);

/* ---- Online learners ---- */

/* variant: "cba_plus" or "cba". */
BW_API bw_status bw_learner_create(const bw_domain* domain,
                                   const char* variant, bw_learner** out);
BW_API void bw_learner_destroy(bw_learner* learner);
BW_API bw_status bw_learner_choose(bw_learner* learner, double* x, int n);
BW_API bw_status bw_learner_observe(bw_learner* learner, const double* x,
                                    const double* loss, int n, double weight);

/* ---- Saddle-point problems ---- */

/* payoff is row-major with rows * cols entries; x indexes rows. */
BW_API bw_status bw_problem_matrix_game(const double* payoff, int rows,
                                        int cols, bw_problem** out);
/* distribution: "uniform" or "normal". */
BW_API bw_status bw_problem_random_matrix_game(int rows, int cols,
                                               const char* distribution,
                                               uint64_t seed,
                                               bw_problem** out);
BW_API bw_status bw_problem_synthetic_dro(int features, int points,
                                          const char* distribution,
                                          double flip_fraction, uint64_t seed,
                                          bw_problem** out);
BW_API bw_status bw_problem_garnet(int states, int actions, double branching,
                                   double reward_max, double discount,
                                   uint64_t seed, bw_problem** out);
BW_API void bw_problem_destroy(bw_problem* problem);
BW_API bw_status bw_problem_dims(const bw_problem* problem, int* dim_x,
                                 int* dim_y);
/* "duality_gap" or "worst_case_loss". */
BW_API const char* bw_problem_metric_name(const bw_problem* problem);
BW_API bw_status bw_problem_metric(const bw_problem* problem, const double* x,
                                   const double* y, double* out);

/* ---- Solving ---- */

/* algorithm: any name listed by bw_algorithm_name. cadence 0 picks the
 * default metric schedule; measure_time 0 reports zero elapsed times. */
BW_API bw_status bw_solve(const bw_problem* problem, const char* algorithm,
                          int iterations, int cadence, int measure_time,
                          bw_trace** out);
BW_API void bw_trace_destroy(bw_trace* trace);
BW_API int bw_trace_num_samples(const bw_trace* trace);
BW_API bw_status bw_trace_sample(const bw_trace* trace, int index,
                                 int* iteration, double* elapsed_seconds,
                                 double* value);

BW_API int bw_algorithm_count(void);
BW_API const char* bw_algorithm_name(int index);
BW_API int bw_problem_family_count(void);
BW_API const char* bw_problem_family_name(int index);

/* ---- Experiments ---- */

/* Runs the experiment described by the config file. Non-null overrides
 * replace output.dir, problem.seeds (a single seed) and run.threads
 * (threads <= 0 keeps the config value). */
BW_API bw_status bw_run_experiment(const char* config_path,
                                   const char* output_dir,
                                   const uint64_t* seed, int threads,
                                   int* num_files);
/* axis: "iterations" or "time". Writes an SVG plot of the CSV traces. */
BW_API bw_status bw_plot(const char* const* csv_paths, int count,
                         const char* axis, const char* svg_path);

/* ---- Acceptance checks ---- */

BW_API int bw_acceptance_count(void);
/* Runs criterion id (1-based) and writes its report line into line. */
BW_API bw_status bw_acceptance_run(int id, const char* scratch_dir,
                                   int inject_projection_bug, int* passed,
                                   char* line, size_t line_size);

#ifdef __cplusplus
}
#endif

#endif /* BLACKWELL_BLACKWELL_H_ */
