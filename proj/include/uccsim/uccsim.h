#ifndef UCCSIM_H
#define UCCSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(UCCSIM_BUILDING_LIBRARY)
#define UCCSIM_API __attribute__((visibility("default")))
#else
#define UCCSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uccsim_status {
  UCCSIM_OK = 0,
  UCCSIM_ERR_INVALID_ARGUMENT = 1,
  UCCSIM_ERR_DOMAIN_MISMATCH = 2,
  UCCSIM_ERR_TOO_LARGE = 3,
  UCCSIM_ERR_UNDEFINED = 4,
  /* a checked guarantee did not hold */
  UCCSIM_ERR_VALIDATION = 5,
  UCCSIM_ERR_IO = 6,
  UCCSIM_ERR_INTERNAL = 7
} uccsim_status;

/* Message of the last failed call on this thread; "" after a success. */
UCCSIM_API const char* uccsim_last_error(void);
UCCSIM_API const char* uccsim_version(void);

/* ---- distributions ---------------------------------------------------- */

typedef struct uccsim_distribution uccsim_distribution;

/* spec: "product", "noisy:p" or "file:path.json" over {0,1}^n x {0,1}^n. */
UCCSIM_API uccsim_status uccsim_distribution_parse(const char* spec, int n,
                                                   uccsim_distribution** out);
/* Row-major masses over {0,1}^x_bits x {0,1}^y_bits. */
UCCSIM_API uccsim_status uccsim_distribution_dense(int x_bits, int y_bits,
                                                   const double* masses,
                                                   uccsim_distribution** out);
UCCSIM_API void uccsim_distribution_free(uccsim_distribution* mu);

UCCSIM_API uccsim_status uccsim_distribution_mass(const uccsim_distribution* mu,
                                                  uint64_t x, uint64_t y, double* out);
UCCSIM_API uccsim_status uccsim_mutual_information(const uccsim_distribution* mu,
                                                   double* bits);
UCCSIM_API uccsim_status uccsim_kl_divergence(const double* p, const double* q,
                                              size_t size, double* bits);

/* ---- functions and the exact oracle ------------------------------------ */

typedef struct uccsim_function uccsim_function;

/* spec: "parity:S=0b101", "constant:0|1", "equality" or "file:path.json";
   n < 0 infers n from the parity mask. */
UCCSIM_API uccsim_status uccsim_function_parse(const char* spec, int n,
                                               uccsim_function** out);
UCCSIM_API void uccsim_function_free(uccsim_function* f);
UCCSIM_API uccsim_status uccsim_function_eval(const uccsim_function* f, uint64_t x,
                                              uint64_t y, int* out);
UCCSIM_API uccsim_status uccsim_distance_mu(const uccsim_function* f,
                                            const uccsim_function* g,
                                            const uccsim_distribution* mu, double* out);
UCCSIM_API uccsim_status uccsim_oracle_cc(const uccsim_function* f,
                                          const uccsim_distribution* mu, double eps,
                                          int* bits);

/* ---- correlated sampling ----------------------------------------------- */

typedef struct uccsim_transcript {
  uint64_t bits_alice;
  uint64_t bits_bob;
  uint32_t rounds;
  int success;
} uccsim_transcript;

UCCSIM_API uccsim_status uccsim_correlated_sample(const double* p, const double* q,
                                                  size_t size, double eps, uint64_t seed,
                                                  uint64_t* alice, uint64_t* bob,
                                                  uccsim_transcript* stats);

/* alice and bob must hold m entries each. */
UCCSIM_API uccsim_status uccsim_one_way_sample(const uccsim_distribution* mu, uint64_t x,
                                               size_t m, double eps, uint64_t seed,
                                               uint64_t* alice, uint64_t* bob,
                                               uint64_t* budget_bits,
                                               uccsim_transcript* stats);

/* ---- uncertain instances and Algorithm 1 ------------------------------- */

typedef struct uccsim_instance uccsim_instance;

UCCSIM_API uccsim_status uccsim_instance_generate(const uccsim_distribution* mu, int n,
                                                  int k, double eps, double delta,
                                                  uint64_t seed, uccsim_instance** out);
UCCSIM_API void uccsim_instance_free(uccsim_instance* inst);
/* Exact distance_mu(f, g) and protocol error of g's protocol. */
UCCSIM_API uccsim_status uccsim_instance_audit(const uccsim_instance* inst,
                                               double* distance, double* protocol_error);
UCCSIM_API uccsim_status uccsim_instance_write_json(const uccsim_instance* inst,
                                                    const char* path);

UCCSIM_API uccsim_status uccsim_choose_m(int k, double theta, uint64_t* m);

typedef struct uccsim_error_estimate {
  uint64_t trials;
  uint64_t errors;
  double error_rate;
  double wilson_low;
  double wilson_high;
  double half_width;
  double mean_bits;
  double mean_payload_bits;
  uint64_t m;
  uint64_t sampling_failures;
} uccsim_error_estimate;

UCCSIM_API uccsim_status uccsim_estimate_error(const uccsim_instance* inst, double theta,
                                               uint64_t trials, uint64_t seed, int jobs,
                                               uccsim_error_estimate* out);

/* ---- lower-bound machinery --------------------------------------------- */

UCCSIM_API uccsim_status uccsim_spectral_norm_N(double a, double* out);
UCCSIM_API uccsim_status uccsim_lambda_closed_form(double a, double* lambda1,
                                                   double* lambda2);
UCCSIM_API uccsim_status uccsim_spectral_bound_rhs(double a, double* out);
UCCSIM_API uccsim_status uccsim_discrepancy_exact(int n, double p, double* out);
UCCSIM_API uccsim_status uccsim_disc_spectral_bound(int n, double p, double* out);
UCCSIM_API uccsim_status uccsim_cc_lower_bound(double disc, double eps, double* bits);

/* ---- agreement --------------------------------------------------------- */

UCCSIM_API uccsim_status uccsim_hamming_ball_size(int size_y, int radius, uint64_t* out);

typedef enum uccsim_chernoff_kind {
  UCCSIM_CHERNOFF_LOWER = 0,
  UCCSIM_CHERNOFF_UPPER = 1,
  UCCSIM_CHERNOFF_ADDITIVE = 2
} uccsim_chernoff_kind;

UCCSIM_API uccsim_status uccsim_chernoff_bound(int n, double mean,
                                               uccsim_chernoff_kind kind, double param,
                                               double* out);

/* ---- experiment drivers -------------------------------------------------
   Each driver writes its CSV to out_path (discarded when NULL) and a one-line
   summary into summary[0..capacity). A run whose checked guarantee fails
   still writes its output and returns UCCSIM_ERR_VALIDATION. */

typedef struct uccsim_uncertain_params {
  int n;
  int k;
  double eps;
  double delta;
  double theta;
  uint64_t trials;
  uint64_t seed;
  const char* mu;
  int jobs;
  double c1;
} uccsim_uncertain_params;

UCCSIM_API void uccsim_uncertain_params_default(uccsim_uncertain_params* params);
UCCSIM_API uccsim_status uccsim_run_uncertain(const uccsim_uncertain_params* params,
                                              const char* out_path, char* summary,
                                              size_t capacity);

typedef struct uccsim_csample_params {
  size_t universe;
  double eps;
  uint64_t trials;
  uint64_t seed;
  int jobs;
} uccsim_csample_params;

UCCSIM_API void uccsim_csample_params_default(uccsim_csample_params* params);
UCCSIM_API uccsim_status uccsim_run_csample_bench(const uccsim_csample_params* params,
                                                  const char* out_path, char* summary,
                                                  size_t capacity);

typedef struct uccsim_lowerbound_params {
  const double* p_grid;
  size_t p_count;
  const int* n_grid;
  size_t n_count;
  double eps;
  uint64_t seed;
  int restarts;
  int jobs;
} uccsim_lowerbound_params;

UCCSIM_API uccsim_status uccsim_run_lowerbound_sweep(const uccsim_lowerbound_params* params,
                                                     const char* out_path, char* summary,
                                                     size_t capacity);

/* strategy: "identity", "example" or a JSON file path. */
UCCSIM_API uccsim_status uccsim_run_agreement_audit(int size_y, double delta2,
                                                    const char* strategy,
                                                    const char* out_path, char* summary,
                                                    size_t capacity);

UCCSIM_API uccsim_status uccsim_run_oracle_cc(const char* function, const char* mu,
                                              double eps, int n, const char* out_path,
                                              char* summary, size_t capacity);

typedef struct uccsim_family_params {
  int n;
  double p;
  double q;
  uint64_t samples;
  uint64_t seed;
} uccsim_family_params;

UCCSIM_API void uccsim_family_params_default(uccsim_family_params* params);
UCCSIM_API uccsim_status uccsim_run_family_audit(const uccsim_family_params* params,
                                                 const char* out_path, char* summary,
                                                 size_t capacity);

#ifdef __cplusplus
}
#endif

#endif
