/*
 * C interface to the arenstorf library: twin-prime sieving, the
 * log(p)log(p+2) mean with checkpoints at powers of two, the twin-prime and
 * Brun constants, and least-squares limit extrapolation.
 *
 * Every fallible call returns an arenstorf_status. On failure a message is
 * available from arenstorf_last_error() on the calling thread until the next
 * call into the library. Handles are opaque and owned by the caller.
 */
#ifndef ARENSTORF_H
#define ARENSTORF_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#define ARENSTORF_API __declspec(dllexport)
#else
#define ARENSTORF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arenstorf_status {
  ARENSTORF_OK = 0,
  ARENSTORF_E_DOMAIN = 1,
  ARENSTORF_E_INSUFFICIENT_BASE = 2,
  ARENSTORF_E_CONFIG = 3,
  ARENSTORF_E_IO = 4,
  ARENSTORF_E_CORRUPT_STATE = 5,
  ARENSTORF_E_VERSION_MISMATCH = 6,
  ARENSTORF_E_SEGMENT_MISMATCH = 7,
  ARENSTORF_E_FIT = 8,
  ARENSTORF_E_PARSE = 9,
  ARENSTORF_E_INTERRUPTED = 10,
  ARENSTORF_E_RESOURCE = 11,
  ARENSTORF_E_INVALID_ARGUMENT = 100,
  ARENSTORF_E_INTERNAL = 101
} arenstorf_status;

ARENSTORF_API const char* arenstorf_status_name(arenstorf_status status);
ARENSTORF_API const char* arenstorf_last_error(void);
ARENSTORF_API const char* arenstorf_version(void);

/* ---- checkpoints ------------------------------------------------------ */

typedef struct arenstorf_checkpoint {
  uint64_t n;
  double sum_value;        /* S(N) = sum_value + sum_compensation */
  double sum_compensation;
  double mean;             /* S(N) / N */
  double ratio;            /* mean / C2 */
} arenstorf_checkpoint;

typedef struct arenstorf_checkpoints arenstorf_checkpoints;

/* Reads a checkpoint CSV (N plus mean, or the exact sum_hex/comp_hex pair). */
ARENSTORF_API arenstorf_status arenstorf_checkpoints_read_csv(const char* path, arenstorf_checkpoints** out);
ARENSTORF_API size_t arenstorf_checkpoints_size(const arenstorf_checkpoints* list);
ARENSTORF_API arenstorf_status arenstorf_checkpoints_get(const arenstorf_checkpoints* list, size_t index,
                                                         arenstorf_checkpoint* out);
ARENSTORF_API void arenstorf_checkpoints_destroy(arenstorf_checkpoints* list);

/* ---- runs ------------------------------------------------------------- */

typedef struct arenstorf_run_config {
  int start_exponent;    /* first checkpoint 2^start, in [10, 63] */
  int end_exponent;      /* last checkpoint 2^end */
  uint64_t segment_size; /* odd entries per sieve segment */
  unsigned workers;
  const char* state_path;  /* NULL: default state location */
  const char* output_path; /* NULL: checkpoints.csv next to the state file */
} arenstorf_run_config;

/* Defaults: 2^22..2^22, 2^18 segment entries, one worker, default paths. */
ARENSTORF_API void arenstorf_run_config_init(arenstorf_run_config* config);

typedef struct arenstorf_resume_options {
  const char* state_path;  /* NULL: default state location */
  const char* output_path; /* NULL: checkpoints.csv next to the state file */
  int end_exponent;        /* 0 keeps the stored schedule; otherwise extends it */
  uint64_t segment_size;   /* 0 accepts the stored size; otherwise must match */
  unsigned workers;
} arenstorf_resume_options;

ARENSTORF_API void arenstorf_resume_options_init(arenstorf_resume_options* options);

typedef struct arenstorf_run arenstorf_run;

ARENSTORF_API arenstorf_status arenstorf_run_create(const arenstorf_run_config* config, arenstorf_run** out);
/* Loads the state file; nothing is written until arenstorf_run_execute. */
ARENSTORF_API arenstorf_status arenstorf_run_resume(const arenstorf_resume_options* options, arenstorf_run** out);
/* Runs to the end of the schedule. Returns ARENSTORF_E_INTERRUPTED when
 * arenstorf_request_stop() was called; the state file then resumes exactly. */
ARENSTORF_API arenstorf_status arenstorf_run_execute(arenstorf_run* run);
ARENSTORF_API size_t arenstorf_run_checkpoint_count(const arenstorf_run* run);
ARENSTORF_API arenstorf_status arenstorf_run_checkpoint(const arenstorf_run* run, size_t index,
                                                        arenstorf_checkpoint* out);
ARENSTORF_API uint64_t arenstorf_run_next_lo(const arenstorf_run* run);
ARENSTORF_API uint64_t arenstorf_run_pair_count(const arenstorf_run* run);
ARENSTORF_API const char* arenstorf_run_state_path(const arenstorf_run* run);
ARENSTORF_API const char* arenstorf_run_output_path(const arenstorf_run* run);
ARENSTORF_API void arenstorf_run_destroy(arenstorf_run* run);

/* Async-signal-safe. Running executions stop at the next segment boundary. */
ARENSTORF_API void arenstorf_request_stop(void);
ARENSTORF_API void arenstorf_clear_stop(void);

/* ---- constants -------------------------------------------------------- */

ARENSTORF_API double arenstorf_twin_constant_reference(void);

typedef struct arenstorf_c2_estimate {
  double value;
  double tail_bound;
  uint64_t prime_limit;
} arenstorf_c2_estimate;

ARENSTORF_API arenstorf_status arenstorf_twin_constant(uint64_t prime_limit, unsigned workers,
                                                       arenstorf_c2_estimate* out);

typedef struct arenstorf_brun_estimate {
  uint64_t x;
  double partial;      /* sum of 1/p + 1/(p+2) over twin pairs with p <= x */
  double extrapolated; /* partial + 4 c2 / ln x */
  double c2;           /* Hardy-Littlewood c2 = C2 / 2 */
} arenstorf_brun_estimate;

ARENSTORF_API arenstorf_status arenstorf_brun(uint64_t x, unsigned workers, arenstorf_brun_estimate* out);

ARENSTORF_API arenstorf_status arenstorf_count_twins(uint64_t n, unsigned workers, uint64_t* out);

/* ---- fitting ---------------------------------------------------------- */

typedef struct arenstorf_fit_result {
  double intercept;
  double slope;
  double residual_rms;
  size_t n_points;
} arenstorf_fit_result;

/* Least squares of mean against 1/N over checkpoints with
 * k_min <= log2 N <= k_max. */
ARENSTORF_API arenstorf_status arenstorf_fit(const arenstorf_checkpoints* list, int k_min, int k_max,
                                             arenstorf_fit_result* out);

/* Writes the tab-separated plot table into buffer (NUL-terminated when it
 * fits) and stores the full length, excluding the NUL, in *needed. `fit` may
 * be NULL to omit the fitted column. */
ARENSTORF_API arenstorf_status arenstorf_plot_format(const arenstorf_checkpoints* list,
                                                     const arenstorf_fit_result* fit, char* buffer,
                                                     size_t capacity, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* ARENSTORF_H */
