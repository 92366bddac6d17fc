/*
 * momentkit C interface.
 *
 * Every object crosses the boundary as an opaque handle created by a
 * mk_*_from_* / mk_*_parse function and released with the matching
 * mk_*_free. Functions return an mk_status; on failure mk_last_error()
 * describes the problem (the message is thread-local and valid until the
 * next failing call on the same thread). Output parameters are written only
 * on success unless stated otherwise.
 *
 * Tolerance arguments accept a negative value to request the library
 * default.
 */
#ifndef MOMENTKIT_H
#define MOMENTKIT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MOMENTKIT_BUILDING)
#    define MK_API __declspec(dllexport)
#  else
#    define MK_API __declspec(dllimport)
#  endif
#else
#  define MK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mk_status {
  MK_OK = 0,
  MK_ERR_INVALID_ARGUMENT = 1,
  MK_ERR_DIMENSION_MISMATCH = 2,
  MK_ERR_DEGREE_OVERFLOW = 3,
  MK_ERR_NOT_NORMALIZED = 4,
  MK_ERR_NOT_PSD = 5,
  MK_ERR_RANK_DEFICIENT = 6,
  MK_ERR_PARSE = 7,
  MK_ERR_COVERAGE = 8,
  MK_ERR_NON_FINITE = 9,
  MK_ERR_NO_FINITE_BOUND = 10,
  MK_ERR_NULL_ARGUMENT = 20,
  MK_ERR_INTERNAL = 99
} mk_status;

typedef struct mk_poly mk_poly;
typedef struct mk_moments mk_moments;
typedef struct mk_report mk_report;
typedef struct mk_operator mk_operator;
typedef struct mk_cmoments mk_cmoments;

MK_API const char* mk_last_error(void);
MK_API const char* mk_status_name(mk_status status);
MK_API const char* mk_version(void);

/* Strings returned through char** are heap-allocated; release them here. */
MK_API void mk_string_free(char* s);

/* ---- polynomials ------------------------------------------------------- */

/* Parses "3*x^2*y - 0.5" style text over the given variable names. */
MK_API mk_status mk_poly_parse(const char* text, const char* const* vars,
                               size_t nvars, mk_poly** out);
/* Same, with the default names for `dim` (t; x,y; x,y,z; x1..xd). */
MK_API mk_status mk_poly_parse_default(const char* text, size_t dim,
                                       mk_poly** out);
MK_API mk_status mk_poly_variable(size_t dim, size_t var, mk_poly** out);
MK_API mk_status mk_poly_mul(const mk_poly* p, const mk_poly* q, mk_poly** out);
MK_API void mk_poly_free(mk_poly* p);
MK_API size_t mk_poly_dimension(const mk_poly* p);
/* -1 for the zero polynomial. */
MK_API int mk_poly_degree(const mk_poly* p);
MK_API mk_status mk_poly_eval(const mk_poly* p, const double* point,
                              size_t len, double* out);
MK_API mk_status mk_poly_to_string(const mk_poly* p, char** out);

/* ---- moment sequences -------------------------------------------------- */

typedef struct mk_psd_verdict {
  int is_psd;
  double min_eigenvalue;
  double tolerance_used;
} mk_psd_verdict;

MK_API mk_status mk_moments_from_json(const char* text, mk_moments** out);
/* Oracle direction: moments of the measure document through max_degree. */
MK_API mk_status mk_moments_from_measure_json(const char* text,
                                              unsigned max_degree,
                                              mk_moments** out);
/* values[i] = L(x^alpha_i) in graded-lex order over degree <= max_degree. */
MK_API mk_status mk_moments_from_values(size_t dim, unsigned max_degree,
                                        const double* values, size_t count,
                                        mk_moments** out);
MK_API mk_status mk_moments_to_json(const mk_moments* L, char** out);
MK_API void mk_moments_free(mk_moments* L);
MK_API size_t mk_moments_dimension(const mk_moments* L);
MK_API unsigned mk_moments_max_degree(const mk_moments* L);
MK_API int mk_moments_normalized(const mk_moments* L);
MK_API int mk_moments_rescaled(const mk_moments* L);

MK_API mk_status mk_moments_apply(const mk_moments* L, const mk_poly* p,
                                  double* out);
MK_API mk_status mk_psd_functional_check(const mk_moments* L, unsigned order,
                                         mk_psd_verdict* out);

/* ---- intrinsic bounds -------------------------------------------------- */

typedef struct mk_c_bound_result {
  double value;
  unsigned n_used;
  int clamped;
} mk_c_bound_result;

typedef struct mk_rayleigh_bounds {
  double d_lower;
  double D_upper;
  unsigned N_used;
  size_t effective_rank;
} mk_rayleigh_bounds;

typedef struct mk_ql_cbound {
  int holds;
  int holds_raw;
  double c_a;
  double c_shift;
  double slack;
  unsigned n_used;
} mk_ql_cbound;

typedef enum mk_archimedean_mode {
  MK_ARCHIMEDEAN_LINEAR = 0,
  MK_ARCHIMEDEAN_SQUARE = 1
} mk_archimedean_mode;

typedef struct mk_archimedean_result {
  double value;
  double bisection_value;
  unsigned N_used;
} mk_archimedean_result;

typedef struct mk_c_vs_dd_result {
  double c;
  double D;
  double d;
  double max_rule_gap;
  unsigned n_used;
  unsigned N_used;
} mk_c_vs_dd_result;

/* max_power = 0 uses the full truncation. per_n receives up to per_n_cap
 * values (may be NULL). */
MK_API mk_status mk_c_bound(const mk_moments* L, const mk_poly* a,
                            unsigned max_power, mk_c_bound_result* out,
                            double* per_n, size_t per_n_cap);
MK_API mk_status mk_dd_bounds(const mk_moments* L, const mk_poly* a,
                              unsigned order, mk_rayleigh_bounds* out);
MK_API mk_status mk_r_bound(const mk_moments* L, const mk_poly* a,
                            unsigned order, double* out);
MK_API mk_status mk_ql_membership_psd(const mk_moments* L, const mk_poly* a,
                                      unsigned order, mk_psd_verdict* out);
/* slack < 0 selects the default 0.05. */
MK_API mk_status mk_ql_membership_cbound(const mk_moments* L,
                                         const mk_poly* a, double slack,
                                         mk_ql_cbound* out);
MK_API mk_status mk_archimedean_bound(const mk_moments* L, const mk_poly* a,
                                      unsigned order, mk_archimedean_mode mode,
                                      mk_archimedean_result* out);
/* Per polynomial support interval; entry_status[i] records per-entry
 * failures while the call itself succeeds. */
MK_API mk_status mk_support_box(const mk_moments* L, const mk_poly* const* polys,
                                size_t count, unsigned order, double* lower,
                                double* upper, mk_status* entry_status);
MK_API mk_status mk_c_vs_dd(const mk_moments* L, const mk_poly* a,
                            unsigned order, mk_c_vs_dd_result* out);

/* ---- check reports ----------------------------------------------------- */

MK_API void mk_report_free(mk_report* r);
MK_API int mk_report_passed(const mk_report* r);
MK_API size_t mk_report_attempted(const mk_report* r);
MK_API size_t mk_report_skipped(const mk_report* r);
MK_API size_t mk_report_item_count(const mk_report* r);
/* Witness strings are owned by the report. */
MK_API mk_status mk_report_item(const mk_report* r, size_t i,
                                const char** witness, double* value,
                                double* bound, int* passed);
MK_API size_t mk_report_violation_count(const mk_report* r);
MK_API mk_status mk_report_violation(const mk_report* r, size_t i,
                                     const char** witness, double* value);
MK_API size_t mk_report_note_count(const mk_report* r);
MK_API const char* mk_report_note(const mk_report* r, size_t i);

/* ---- certification checks ---------------------------------------------- */

MK_API mk_status mk_check_products(const mk_moments* L,
                                   const mk_poly* const* uppers,
                                   const mk_poly* const* lowers, size_t pairs,
                                   unsigned max_factors, double tol,
                                   mk_report** out);
MK_API mk_status mk_check_cone(const mk_moments* L, const mk_poly* a,
                               const mk_poly* b, unsigned jk_max, double tol,
                               mk_report** out);
MK_API mk_status mk_check_ball(const mk_moments* L, const mk_poly* const* coords,
                               size_t count, double r, unsigned order,
                               double tol, mk_report** out);
MK_API mk_status mk_check_growth(const mk_moments* L,
                                 const mk_poly* const* generators,
                                 const double* d, const double* gamma,
                                 size_t count, double tol, mk_report** out);
MK_API mk_status mk_check_weak_absolute_value(const mk_moments* L,
                                              const mk_poly* const* polys,
                                              const double* v, size_t count,
                                              double c, double tol,
                                              mk_report** out);
MK_API mk_status mk_check_schmudgen(const mk_moments* L,
                                    const mk_poly* const* constraints,
                                    size_t count, unsigned order,
                                    mk_report** out);
MK_API mk_status mk_check_interval(const mk_moments* L,
                                   const mk_poly* const* polys,
                                   const double* lower, const double* upper,
                                   size_t count, unsigned order,
                                   mk_report** out);
MK_API mk_status mk_identity_suite(mk_report** out);

/* ---- operators and quadrature ------------------------------------------ */

MK_API mk_status mk_operator_from_json(const char* text, mk_operator** out);
/* matrix is row-major order x order; it is symmetrized. */
MK_API mk_status mk_operator_from_arrays(const double* matrix, size_t order,
                                         const double* h, mk_operator** out);
MK_API void mk_operator_free(mk_operator* op);
MK_API size_t mk_operator_order(const mk_operator* op);
/* moments receives m_0..m_max_degree (max_degree + 1 values). */
MK_API mk_status mk_operator_moments(const mk_operator* op, unsigned max_degree,
                                     double* moments);
MK_API mk_status mk_rayleigh_interval(const mk_operator* op, double* alpha,
                                      double* beta);
/* nodes and weights need room for k values; *out_count receives the number
 * kept after pruning. On MK_ERR_RANK_DEFICIENT, *achievable (if non-NULL)
 * receives the largest feasible k. */
MK_API mk_status mk_quadrature_from_moments(const double* moments, size_t count,
                                            unsigned k, double* nodes,
                                            double* weights, size_t* out_count,
                                            unsigned* achievable);

/* ---- complex moment functions on N^2 ----------------------------------- */

MK_API mk_status mk_cmoments_from_json(const char* text, mk_cmoments** out);
/* Atoms document; a max_level in the document overrides `max_level`. */
MK_API mk_status mk_cmoments_from_atoms_json(const char* text,
                                             unsigned max_level,
                                             mk_cmoments** out);
MK_API mk_status mk_cmoments_from_atoms(const double* re, const double* im,
                                        const double* weights, size_t count,
                                        unsigned max_level, mk_cmoments** out);
MK_API mk_status mk_cmoments_to_json(const mk_cmoments* f, char** out);
MK_API void mk_cmoments_free(mk_cmoments* f);
MK_API unsigned mk_cmoments_max_level(const mk_cmoments* f);
MK_API mk_status mk_cmoments_value(const mk_cmoments* f, unsigned m, unsigned n,
                                   double* re, double* im);
MK_API mk_status mk_psd_function_check(const mk_cmoments* f, unsigned level,
                                       double tol, mk_psd_verdict* out);
MK_API mk_status mk_r_s_bound(const mk_cmoments* f, unsigned m, unsigned n,
                              mk_c_bound_result* out, double* per_n,
                              size_t per_n_cap);
MK_API mk_status mk_disc_check(const mk_cmoments* f, double r, double c,
                               double tol, mk_report** out);

#ifdef __cplusplus
}
#endif

#endif /* MOMENTKIT_H */
