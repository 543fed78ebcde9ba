/*
 * bsubgrad C API.
 *
 * Lipschitz-free mirror descent for relatively strongly convex non-smooth
 * objectives, with exact and inexact subgradient oracles and runtime bound
 * certification.
 *
 * Objects are opaque handles created by bsg_*_new / bsg_problem_* and released
 * with the matching *_free. Every fallible call returns a bsg_status; on error
 * bsg_last_error() describes the failure (thread-local, valid until the next
 * call on the same thread). Vectors are passed as (pointer, length) pairs.
 */
#ifndef BSUBGRAD_H
#define BSUBGRAD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BSG_API __declspec(dllexport)
#else
#define BSG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsg_status {
  BSG_OK = 0,
  BSG_INVALID_ARGUMENT = 1, /* bad parameter, config field or dimension */
  BSG_DOMAIN_ERROR = 2,     /* point outside the domain of an operation */
  BSG_IO_ERROR = 3,         /* file missing, unreadable or malformed */
  BSG_INTERNAL_ERROR = 4
} bsg_status;

typedef enum bsg_step_rule {
  BSG_STEP_MATCHED = -1, /* the schedule matched to the oracle model */
  BSG_STEP_EXACT = 0,    /* 2 / (mu (k+1)) */
  BSG_STEP_INEXACT = 1   /* 4 / (mu (k+1)) */
} bsg_step_rule;

typedef enum bsg_lipschitz_mode { BSG_LIPSCHITZ_ANALYTIC = 0, BSG_LIPSCHITZ_PAPER = 1 } bsg_lipschitz_mode;

typedef struct bsg_problem bsg_problem;
typedef struct bsg_prox bsg_prox;
typedef struct bsg_record bsg_record;
typedef struct bsg_config bsg_config;

typedef void (*bsg_line_callback)(const char* line, void* user);

BSG_API const char* bsg_version(void);
BSG_API const char* bsg_last_error(void);
/* Config field named by the last BSG_INVALID_ARGUMENT from a config call, or "". */
BSG_API const char* bsg_last_error_field(void);

/* ---- problems ---------------------------------------------------------- */

typedef struct bsg_problem_info {
  size_t dim;
  double mu;
  double lipschitz_paper;    /* NaN when unknown */
  double lipschitz_analytic; /* NaN when unknown */
  int has_optimum;
  double f_star; /* NaN without optimum */
} bsg_problem_info;

BSG_API bsg_status bsg_problem_example1(size_t n, double radius, double gamma, bsg_problem** out);
/* anchors: m*n row-major coordinates, or NULL to sample m anchors in the ball
 * of radius R/2 from `seed`. */
BSG_API bsg_status bsg_problem_example2(size_t n, double radius, size_t m, const double* anchors,
                                        uint64_t seed, bsg_problem** out);
BSG_API bsg_status bsg_problem_example2_file(double radius, const char* anchor_path,
                                             bsg_problem** out);
BSG_API void bsg_problem_free(bsg_problem* pr);

BSG_API bsg_status bsg_problem_get_info(const bsg_problem* pr, bsg_problem_info* info);
BSG_API bsg_status bsg_problem_eval(const bsg_problem* pr, const double* x, size_t n, double* f);
BSG_API bsg_status bsg_problem_subgradient(const bsg_problem* pr, const double* x, size_t n,
                                           double* g);
BSG_API bsg_status bsg_problem_optimum(const bsg_problem* pr, double* x_star, size_t n);
BSG_API bsg_status bsg_problem_validate_rsc(const bsg_problem* pr, const bsg_prox* ps,
                                            size_t samples, uint64_t seed, double* max_violation);

/* ---- prox setups ------------------------------------------------------- */

BSG_API bsg_status bsg_prox_euclidean_ball(double radius, bsg_prox** out);
BSG_API bsg_status bsg_prox_entropy_simplex(size_t n, bsg_prox** out);
BSG_API void bsg_prox_free(bsg_prox* ps);

BSG_API bsg_status bsg_prox_bregman(const bsg_prox* ps, const double* x, const double* y, size_t n,
                                    double* out);
BSG_API bsg_status bsg_prox_mirror_step(const bsg_prox* ps, const double* x, const double* g,
                                        size_t n, double gamma, double* out);

/* ---- solver ------------------------------------------------------------ */

typedef struct bsg_run_options {
  const char* oracle;   /* "exact", "relative:<alpha>", "absolute:<delta>" */
  int step_rule;        /* bsg_step_rule */
  uint64_t iterations;  /* N >= 1 */
  uint64_t seed;
  uint64_t log_every;   /* >= 1 */
  int adversarial;      /* noise along x* - x instead of a random direction */
  int uniform_magnitude;
} bsg_run_options;

typedef struct bsg_checkpoint {
  uint64_t k;
  double f_x;
  double f_avg;
  double gap_avg;  /* NaN without optimum */
  double dist_avg; /* NaN without optimum */
  double grad_dual_norm;
  double noisy_grad_dual_norm; /* NaN for the exact oracle */
  double sums[5];              /* S1..S5 */
} bsg_checkpoint;

/* Bound values; NaN where the model/step-rule pair certifies nothing. */
typedef struct bsg_bounds {
  uint64_t n_iter;
  double func_new;
  double func_classical;
  double dist_new;
  double dist_classical;
  double func_relative;
  double func_absolute;
  double dist_relative;
  double dist_absolute;
} bsg_bounds;

BSG_API void bsg_run_options_init(bsg_run_options* opts);
BSG_API bsg_status bsg_solve(const bsg_problem* pr, const bsg_prox* ps, const bsg_run_options* opts,
                             bsg_record** out);
BSG_API void bsg_record_free(bsg_record* rec);
BSG_API uint64_t bsg_record_iterations(const bsg_record* rec);
BSG_API size_t bsg_record_checkpoint_count(const bsg_record* rec);
BSG_API bsg_status bsg_record_checkpoint(const bsg_record* rec, size_t index, bsg_checkpoint* out);
BSG_API bsg_status bsg_record_average(const bsg_record* rec, double* x_hat, size_t n);
BSG_API bsg_status bsg_record_bounds(const bsg_record* rec, const bsg_problem* pr, int lipschitz_mode,
                                     bsg_bounds* out);

BSG_API bsg_status bsg_iterations_for_epsilon(double mu, double lipschitz, double eps,
                                              uint64_t* out);

/* ---- experiments (CLI back end) ----------------------------------------- */

BSG_API bsg_status bsg_config_new(bsg_config** out);
BSG_API void bsg_config_free(bsg_config* cfg);
/* Keys are the CLI flag names without dashes prefix, e.g. "log-every". */
BSG_API bsg_status bsg_config_set(bsg_config* cfg, const char* key, const char* value);
BSG_API bsg_status bsg_config_load_file(bsg_config* cfg, const char* path);

/* bounds_ok receives 0 when a certified bound was violated. */
BSG_API bsg_status bsg_cmd_run(const bsg_config* cfg, int* bounds_ok);
BSG_API bsg_status bsg_cmd_sweep(const bsg_config* cfg, int* bounds_ok);
/* Emits one report line per check; all_passed receives 1 iff nothing failed. */
BSG_API bsg_status bsg_cmd_certify(const char* summary_path, bsg_line_callback cb, void* user,
                                   int* all_passed);
BSG_API bsg_status bsg_list_problems(bsg_line_callback cb, void* user);

#ifdef __cplusplus
}
#endif

#endif /* BSUBGRAD_H */
