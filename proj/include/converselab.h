/* converselab — second-order converse bounds with exact desk-scale oracles.
 *
 * C API over the C++ core: opaque handles, integer status codes, caller-owned
 * output buffers. All information quantities are in nats.
 */
#ifndef CONVERSELAB_H
#define CONVERSELAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(converselab_EXPORTS)
#    define CLAB_API __declspec(dllexport)
#  else
#    define CLAB_API __declspec(dllimport)
#  endif
#else
#  define CLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int clab_status;

enum {
  CLAB_OK = 0,
  CLAB_ERR_NEGATIVE_MASS = 1,
  CLAB_ERR_NOT_NORMALIZABLE = 2,
  CLAB_ERR_SYMBOL_OUT_OF_RANGE = 3,
  CLAB_ERR_TOO_MANY_TYPES = 4,
  CLAB_ERR_OUT_OF_RANGE = 5,
  CLAB_ERR_SUPPORT_MISMATCH = 6,
  CLAB_ERR_DIMENSION_MISMATCH = 7,
  CLAB_ERR_TIME_TOO_SMALL = 8,
  CLAB_ERR_DEGENERATE = 9,
  CLAB_ERR_ALPHABET_TOO_LARGE = 10,
  CLAB_ERR_NO_CONVERGENCE = 11,
  CLAB_ERR_PRECONDITION_VIOLATED = 12,
  CLAB_ERR_ALPHA_INFINITE = 13,
  CLAB_ERR_GRID_TOO_COARSE = 14,
  CLAB_ERR_UNKNOWN_EXPERIMENT = 15,
  CLAB_ERR_SCHEMA_VIOLATION = 16,
  CLAB_ERR_IO_FAILURE = 17,
  CLAB_ERR_INTERNAL = 18,
  CLAB_ERR_BAD_ARGUMENT = 19
};

CLAB_API const char* clab_version(void);
CLAB_API const char* clab_status_name(clab_status status);

/* Explanation of the most recent failure on this thread. */
CLAB_API const char* clab_last_error_message(void);

/* ---- finite distributions and channels -------------------------------- */

typedef struct clab_dist clab_dist;
typedef struct clab_channel clab_channel;

CLAB_API clab_status clab_dist_create(const double* probs, size_t len, clab_dist** out);
CLAB_API void clab_dist_free(clab_dist* dist);
CLAB_API size_t clab_dist_size(const clab_dist* dist);
CLAB_API clab_status clab_dist_probs(const clab_dist* dist, double* out, size_t len);

/* Row-major entries, input_size rows of output_size. */
CLAB_API clab_status clab_channel_create(const double* entries, size_t input_size,
                                         size_t output_size, clab_channel** out);
CLAB_API void clab_channel_free(clab_channel* channel);

/* ---- scalar information functionals ------------------------------------ */

CLAB_API clab_status clab_divergence_stats(const clab_dist* p, const clab_dist* q, double* d,
                                           double* v, double* alpha);
CLAB_API clab_status clab_binary_entropy(double eps, double* out);
CLAB_API clab_status clab_gaussian_q_inverse(double p, double* out);

/* caod may be NULL; otherwise it receives the capacity-achieving output
 * distribution (length = channel output size). */
CLAB_API clab_status clab_capacity(const clab_channel* channel, double* capacity, double* caod,
                                   size_t caod_len);

/* ---- bounds and oracles ------------------------------------------------- */

typedef struct {
  double total;
  double first_order;
  double second_order;
  double constant;
  int preconditions_ok;
  int is_bound;
} clab_bound_summary;

/* Order: weak, blowup, smoothing, strassen_ref. */
CLAB_API clab_status clab_bht_converse_suite(const clab_dist* p, const clab_dist* q, long n,
                                             double eps, clab_bound_summary out[4]);

/* Exact Neyman-Pearson point: minimal ln Q-mass over randomized tests with
 * P-mass at least 1 - eps. */
CLAB_API clab_status clab_np_exact_log_q_mass(const clab_dist* p, const clab_dist* q, long n,
                                              double eps, double* log_q_mass);

CLAB_API clab_status clab_fano_bound(int kind /*0 weak, 1 discrete, 2 gaussian*/, double i_wy,
                                     long n, double eps, double alpha, clab_bound_summary* out);

/* d(mu, Q_{Y|X}, nu, c) by the dual fixed-point iteration; mu_mass scales the
 * normalized mu distribution. */
CLAB_API clab_status clab_bl_divergence_dual(const clab_dist* mu_shape, double mu_mass,
                                             const clab_channel* channel, const clab_dist* nu,
                                             double c, double* value);

/* ---- experiment front-end ----------------------------------------------- */

CLAB_API clab_status clab_run_experiment_file(const char* config_path);
CLAB_API clab_status clab_validate_config_file(const char* config_path);

/* Newline-separated experiment names. Writes up to len bytes including the
 * terminator; *needed receives the required buffer size. buf may be NULL. */
CLAB_API clab_status clab_list_experiments(char* buf, size_t len, size_t* needed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CONVERSELAB_H */
