/*
 * hypalg: discrete commutative hypergroups on the nonnegative integers.
 *
 * All objects are opaque handles created by hypalg_*_create / hypalg_*_build
 * and released by the matching *_free. Every call that can fail returns a
 * hypalg_status; the message of the most recent failure on the calling thread
 * is available from hypalg_last_error(). Strings returned by accessors are
 * owned by the handle they come from and stay valid until it is freed.
 *
 * Numbers that must survive exactly (coefficients, parameters, evaluation
 * points under the rational backend) are passed as text: "3", "-0.25",
 * "1.5e-3" or "p/q".
 */
#ifndef HYPALG_H
#define HYPALG_H

#include <stddef.h>

#if defined(HYPALG_BUILDING_LIBRARY)
#define HYPALG_API __attribute__((visibility("default")))
#else
#define HYPALG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hypalg_status {
  HYPALG_OK = 0,
  HYPALG_ERR_CONFIG = 1,       /* invalid parameter, unknown preset, unsupported request */
  HYPALG_ERR_NUMERICAL = 3,    /* table exhausted, degenerate table, eigensolver failure */
  HYPALG_ERR_CONSTRUCTION = 4, /* no mean: character not square summable or not a character */
  HYPALG_ERR_INTERNAL = 5
} hypalg_status;

typedef enum hypalg_backend { HYPALG_BACKEND_FLOAT = 0, HYPALG_BACKEND_RATIONAL = 1 } hypalg_backend;

typedef struct hypalg_family hypalg_family;
typedef struct hypalg_table hypalg_table;
typedef struct hypalg_analysis hypalg_analysis;
typedef struct hypalg_reports hypalg_reports;
typedef struct hypalg_mean hypalg_mean;

HYPALG_API const char* hypalg_version(void);
HYPALG_API const char* hypalg_last_error(void);
/* Error kind of the last failure ("NotL2", "TableExhausted", ...), or "" */
HYPALG_API const char* hypalg_last_error_kind(void);

/* Parses "3", "-0.25", "1.5e-3" or "p/q" exactly and rounds to the nearest double. */
HYPALG_API hypalg_status hypalg_parse_number(const char* text, double* out);
/* lo, lo + step, ... while <= hi, generated in exact arithmetic and rounded.
 * Release the array with hypalg_free_array. */
HYPALG_API hypalg_status hypalg_grid(const char* lo, const char* hi, const char* step, double** values,
                                     size_t* count);
HYPALG_API void hypalg_free_array(double* values);

/* ---- families ---------------------------------------------------------- */

/* Presets: chebyshev-t, chebyshev-u, geometric-compact {q}, perturbed-chebyshev
 * {lambda1}, symmetric {b}. keys/values may be NULL when count is 0. */
HYPALG_API hypalg_status hypalg_family_preset(const char* name, const char* const* keys,
                                              const char* const* values, size_t count,
                                              hypalg_family** out);
/* a and b from n = 0, c from n = 1; tail_rule is "constant" or "geometric"
 * (tail_ratio in (0,1], ignored for constant tails). */
HYPALG_API hypalg_status hypalg_family_explicit(const char* const* a, size_t na, const char* const* b,
                                                size_t nb, const char* const* c, size_t nc,
                                                const char* tail_rule, const char* tail_ratio,
                                                hypalg_family** out);
/* Symmetric hypergroup parameters b_1, b_2, ... */
HYPALG_API hypalg_status hypalg_family_symmetric(const char* const* b, size_t nb,
                                                 const char* tail_rule, const char* tail_ratio,
                                                 hypalg_family** out);
HYPALG_API void hypalg_family_free(hypalg_family* family);
HYPALG_API const char* hypalg_family_name(const hypalg_family* family);
HYPALG_API int hypalg_family_is_symmetric(const hypalg_family* family);
/* Haar weights h(0..n_max) from the product formula (polynomial) or c_n
 * (symmetric), formatted per backend. */
HYPALG_API hypalg_status hypalg_family_haar(hypalg_family* family, size_t n_max,
                                            hypalg_backend backend, const char* const** values);

/* ---- linearization tables ---------------------------------------------- */

typedef struct hypalg_axiom_report {
  int passed;
  size_t level;
  size_t pairs_checked;
  size_t commutativity_elementwise_level;
  const char* failure; /* "none", "negative-coefficient", "total-mass", ... */
  size_t j, k, n;
  const char* value;
  const char* message;
} hypalg_axiom_report;

HYPALG_API hypalg_status hypalg_table_build(const hypalg_family* family, size_t max_level,
                                            hypalg_backend backend, hypalg_table** out);
HYPALG_API void hypalg_table_free(hypalg_table* table);
HYPALG_API size_t hypalg_table_max_level(const hypalg_table* table);
/* tol is ignored by the rational backend (exact comparison). */
HYPALG_API hypalg_status hypalg_table_verify(hypalg_table* table, double tol,
                                             size_t elementwise_level, hypalg_axiom_report* out);
/* g(j,k,lo .. lo+count-1) as text: "%.17g" for float, "p/q" for rational. */
HYPALG_API hypalg_status hypalg_table_row(hypalg_table* table, size_t j, size_t k, size_t* lo,
                                          size_t* count, const char* const** values);
/* h(n) = 1 / g(n,n,0) for n = 0..n_max, as text. */
HYPALG_API hypalg_status hypalg_table_haar(hypalg_table* table, size_t n_max,
                                           const char* const** values);

/* ---- analysis ---------------------------------------------------------- */

#define HYPALG_MAX_TRUNCATIONS 8

typedef struct hypalg_options {
  double tol;
  double ctol;
  double eps;
  double sep;
  double match_tol;
  double margin;
  double growth_bound;
  size_t window;
  size_t max_level;
  size_t truncations[HYPALG_MAX_TRUNCATIONS];
  size_t truncation_count;
  size_t threads; /* 0: hardware concurrency */
} hypalg_options;

/* Defaults: tol 1e-10, ctol 1e-6, eps 1e-3, sep 1e-5, match_tol 1e-6,
 * margin 0.05, growth_bound 1e3, window 512, max_level 512, truncations {200, 400}. */
HYPALG_API void hypalg_options_init(hypalg_options* options);

typedef struct hypalg_class_flags {
  int symmetric;
  int normalized;
  int compact_type;
  int nevai;
  int bounded_variation;
  int haar_bounded;
  const char* compact_source;
  size_t window;
  double lambda_limit;
  double beta_limit;
  size_t evidence_count;
} hypalg_class_flags;

typedef struct hypalg_support_info {
  double essential_lo;
  double essential_hi;
  const char* essential_source; /* "nevai", "compact", "hull", "symmetric" */
  size_t mass_point_count;
  size_t truncation_count;
} hypalg_support_info;

typedef struct hypalg_mass_point {
  double x;
  double weight;
  int stable;
  double drift;
} hypalg_mass_point;

HYPALG_API hypalg_status hypalg_analysis_create(const hypalg_family* family,
                                                const hypalg_options* options,
                                                hypalg_analysis** out);
HYPALG_API void hypalg_analysis_free(hypalg_analysis* analysis);
HYPALG_API void hypalg_analysis_flags(const hypalg_analysis* analysis, hypalg_class_flags* out);
HYPALG_API hypalg_status hypalg_analysis_flag_evidence(const hypalg_analysis* analysis, size_t i,
                                                       const char** key, const char** value);
HYPALG_API void hypalg_analysis_support(const hypalg_analysis* analysis, hypalg_support_info* out);
HYPALG_API hypalg_status hypalg_analysis_mass_point(const hypalg_analysis* analysis, size_t i,
                                                    hypalg_mass_point* out);
HYPALG_API hypalg_status hypalg_analysis_eigenvalues(const hypalg_analysis* analysis, size_t t,
                                                     size_t* truncation, const double** values,
                                                     size_t* count);
HYPALG_API double hypalg_analysis_to_tilde(const hypalg_analysis* analysis, double x);
HYPALG_API double hypalg_analysis_from_tilde(const hypalg_analysis* analysis, double x_tilde);
/* p_0(x) .. p_window(x); the array is owned by the analysis and replaced by the next call. */
HYPALG_API hypalg_status hypalg_analysis_character(hypalg_analysis* analysis, double x,
                                                   const double** values, size_t* count);

typedef struct hypalg_report {
  double x;
  double x_tilde;
  const char* verdict; /* IDENTITY_ALWAYS_AMENABLE, UNIQUE_MEAN, AMENABLE, NOT_AMENABLE,
                          OUTSIDE_DUAL, INCONCLUSIVE */
  const char* clause;
  int has_norms;
  double l1;
  double l2sq;
  const char* l1_status; /* "converged" or "divergent" */
  const char* l2sq_status;
  double ratio_estimate;
  double closed_form_ratio;
  double growth;
  int isolated;
  const char* method;
  int has_mean;
  size_t mean_truncation;
  double mean_normalization_residual;
  double mean_idempotency_residual;
  double mean_eigen_residual;
  size_t evidence_count;
} hypalg_report;

typedef struct hypalg_corollary {
  int antecedent;
  int conclusion;
  int holds;
  size_t sampled;
} hypalg_corollary;

/* Verdicts for xs[0..count), computed on a worker pool, returned in input order. */
HYPALG_API hypalg_status hypalg_analysis_run(const hypalg_analysis* analysis, const double* xs,
                                             size_t count, hypalg_reports** out);
HYPALG_API void hypalg_reports_free(hypalg_reports* reports);
HYPALG_API size_t hypalg_reports_count(const hypalg_reports* reports);
HYPALG_API hypalg_status hypalg_reports_get(const hypalg_reports* reports, size_t i,
                                            hypalg_report* out);
HYPALG_API hypalg_status hypalg_reports_evidence(const hypalg_reports* reports, size_t i, size_t e,
                                                 const char** key, const char** value);
HYPALG_API void hypalg_reports_corollary(const hypalg_reports* reports,
                                         const hypalg_analysis* analysis, hypalg_corollary* out);

/* ---- means ------------------------------------------------------------- */

typedef struct hypalg_mean_info {
  const char* x;
  size_t truncation; /* largest index of the density */
  const char* l1;
  const char* l2sq;
  double tail_bound;
  double normalization_residual;
  double idempotency_residual;
  double eigen_residual;
  const char* normalization_text;
  const char* idempotency_text;
  const char* eigen_text;
  size_t pairs_tested;
  int passed;
} hypalg_mean_info;

/* Float backend, any family. Fails with HYPALG_ERR_CONSTRUCTION when the
 * character is not square summable (e.g. x = 1) or x is outside the dual. */
HYPALG_API hypalg_status hypalg_mean_create(const hypalg_analysis* analysis, double x,
                                            hypalg_mean** out);
/* Rational backend, symmetric families: x must be exactly 1 - 1/k. */
HYPALG_API hypalg_status hypalg_mean_create_exact(const hypalg_family* family, const char* x,
                                                  hypalg_mean** out);
HYPALG_API void hypalg_mean_free(hypalg_mean* mean);
HYPALG_API void hypalg_mean_info_get(const hypalg_mean* mean, hypalg_mean_info* out);
/* m(n) and h(n) as text for n = 0..truncation. */
HYPALG_API hypalg_status hypalg_mean_entry(const hypalg_mean* mean, size_t n, const char** m,
                                           const char** h);

#ifdef __cplusplus
}
#endif

#endif
