/* fpleig — fractional p-Laplacian eigensystem toolkit, C API.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Every fallible call returns fpl_status; on failure the thread-local
 * message from fpl_last_error() describes the offending input. Output
 * parameters are untouched on failure. Handles are not thread-safe;
 * distinct handles may be used from distinct threads.
 */
#ifndef FPLEIG_H
#define FPLEIG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined _WIN32
#define FPL_API __declspec(dllexport)
#else
#define FPL_API __attribute__((visibility("default")))
#endif

typedef enum fpl_status {
  FPL_OK = 0,
  FPL_ERR_INVALID_ARGUMENT = 1, /* bad parameter; see fpl_last_error() */
  FPL_ERR_NUMERIC = 2,          /* degenerate input (zero denominator, ...) */
  FPL_ERR_INTERNAL = 3
} fpl_status;

typedef struct fpl_grid fpl_grid;
typedef struct fpl_field fpl_field;
typedef struct fpl_problem fpl_problem;
typedef struct fpl_eigenpair fpl_eigenpair;
typedef struct fpl_sweep fpl_sweep;
typedef struct fpl_residual fpl_residual;

FPL_API const char* fpl_version(void);
/* Thread-local message for the most recent failure on this thread. */
FPL_API const char* fpl_last_error(void);

/* ------------------------------------------------------------------ grid */

/* 1D interval (a, b) with n cells; collar_width 0 selects the default 4h. */
FPL_API fpl_status fpl_grid_interval(double a, double b, int n,
                                     double collar_width, fpl_grid** out);
/* 2D square bounding box {x0, y0, x1, y1}; mask_rule "rectangle" | "disc". */
FPL_API fpl_status fpl_grid_box2d(const double bounds[4], int n_per_axis,
                                  const char* mask_rule, double collar_width,
                                  fpl_grid** out);
FPL_API void fpl_grid_free(fpl_grid* g);

FPL_API int fpl_grid_dim(const fpl_grid* g);
FPL_API double fpl_grid_spacing(const fpl_grid* g);
FPL_API double fpl_grid_inradius(const fpl_grid* g);
FPL_API int fpl_grid_interior_count(const fpl_grid* g);
/* Coordinates of interior node k; y is written only for 2D grids. */
FPL_API fpl_status fpl_grid_coord(const fpl_grid* g, int k, double* x,
                                  double* y);
FPL_API fpl_status fpl_grid_distance(const fpl_grid* g, int k, double* d);
/* Interior index nearest to (x, y) in Euclidean distance, ties lowest. */
FPL_API fpl_status fpl_grid_nearest_interior(const fpl_grid* g, double x,
                                             double y, int* k);
FPL_API int fpl_grid_deepest_interior(const fpl_grid* g);
/* Serialized description; free with fpl_string_free. */
FPL_API fpl_status fpl_grid_json(const fpl_grid* g, char** out);

/* ----------------------------------------------------------------- field */

FPL_API fpl_status fpl_field_create(const fpl_grid* g, fpl_field** out);
FPL_API fpl_status fpl_field_clone(const fpl_field* f, fpl_field** out);
FPL_API void fpl_field_free(fpl_field* f);

FPL_API int fpl_field_size(const fpl_field* f);
FPL_API fpl_status fpl_field_set(fpl_field* f, const double* values,
                                 int count);
FPL_API fpl_status fpl_field_get(const fpl_field* f, double* values,
                                 int count);
FPL_API double fpl_field_sup_norm(const fpl_field* f);
FPL_API int fpl_field_argmax(const fpl_field* f);
/* prefactor * (R - |x - apex|)_+^exponent, R = grid inradius. */
FPL_API fpl_status fpl_field_cone(const fpl_grid* g, int apex, double exponent,
                                  double prefactor, fpl_field** out);
FPL_API fpl_status fpl_field_csv(const fpl_field* f, char** out);

/* -------------------------------------------------------------- nonlocal */

/* Gagliardo p-energy of the zero extension, in log form, plus its p-th
 * root. is_zero is 1 for the zero field. */
FPL_API fpl_status fpl_gagliardo(const fpl_field* f, double sigma, double p,
                                 double* log_energy, int* is_zero,
                                 double* seminorm);
FPL_API fpl_status fpl_holder_seminorm(const fpl_field* f, double sigma,
                                       double* out);
/* Nodewise fractional p-Laplacian as sign[] and log|.|[]; arrays of length
 * fpl_field_size(f). */
FPL_API fpl_status fpl_frac_p_laplacian(const fpl_field* f, double sigma,
                                        double p, double* log_abs, int* sign);
/* One-sided Holder quotients and their sum at one interior node. */
FPL_API fpl_status fpl_infinity_laplacian(const fpl_field* f, double sigma,
                                          int node, double* plus,
                                          double* minus, double* sum);

/* --------------------------------------------------------------- problem */

/* variant: "P1" | "P1MAX" | "P2". anchor0 is x0 (P1) or x1 (P2); anchor1
 * is x2 (P2); pass -1 for anchors a variant ignores. The exponent split is
 * alpha(p) = theta p. */
FPL_API fpl_status fpl_problem_create(const fpl_grid* g, const char* variant,
                                      double s, double t, double theta,
                                      double p, int anchor0, int anchor1,
                                      fpl_problem** out);
FPL_API void fpl_problem_free(fpl_problem* spec);

typedef struct fpl_solve_opts {
  double step;      /* relative descent step, default 0.25 */
  int max_iter;     /* default 5000 */
  double tol;       /* default 1e-8 */
  int positivity;   /* clamp iterates at zero, default 1 */
  int init;         /* 0 cones, 1 random, default 0 */
  uint64_t seed;    /* random init seed */
} fpl_solve_opts;

FPL_API void fpl_solve_opts_default(fpl_solve_opts* opts);

/* Denominator of the Rayleigh quotient in log form. */
FPL_API fpl_status fpl_denominator(const fpl_problem* spec, const fpl_field* u,
                                   const fpl_field* v, double* log_value,
                                   int* is_zero);
/* Scale (u, v) in place onto the constraint manifold, then optimally split
 * the energies between the fields. */
FPL_API fpl_status fpl_normalize(const fpl_problem* spec, fpl_field* u,
                                 fpl_field* v);
FPL_API fpl_status fpl_rebalance(const fpl_problem* spec, fpl_field* u,
                                 fpl_field* v);
FPL_API fpl_status fpl_rayleigh(const fpl_problem* spec, const fpl_field* u,
                                const fpl_field* v, double* log_q,
                                double* q_root);

/* Minimize the Rayleigh quotient from the built-in initializer, or from
 * (u0, v0) when both are non-NULL. */
FPL_API fpl_status fpl_solve(const fpl_problem* spec,
                             const fpl_solve_opts* opts, const fpl_field* u0,
                             const fpl_field* v0, fpl_eigenpair** out);
FPL_API void fpl_eigenpair_free(fpl_eigenpair* pair);

FPL_API double fpl_eigenpair_lambda_root(const fpl_eigenpair* pair);
FPL_API double fpl_eigenpair_log_lambda(const fpl_eigenpair* pair);
FPL_API int fpl_eigenpair_iterations(const fpl_eigenpair* pair);
FPL_API int fpl_eigenpair_converged(const fpl_eigenpair* pair);
FPL_API double fpl_eigenpair_weak_residual(const fpl_eigenpair* pair);
/* which: 0 for u, 1 for v. */
FPL_API fpl_status fpl_eigenpair_field(const fpl_eigenpair* pair, int which,
                                       fpl_field** out);
FPL_API fpl_status fpl_eigenpair_json(const fpl_eigenpair* pair, char** out);

/* ----------------------------------------------------------- asymptotics */

/* Closed-form limit eigenvalue R^-(s theta + (1 - theta) t). */
FPL_API fpl_status fpl_lambda_infinity(double s, double t, double theta,
                                       double R, double* out);
/* Extremal cone pair on the problem's grid and anchors. */
FPL_API fpl_status fpl_cone_pair(const fpl_problem* spec, fpl_field** u,
                                 fpl_field** v);
/* Limit quotient max(|u|_s, |v|_t) / sup-norm coupling; +inf when the
 * coupling vanishes. */
FPL_API fpl_status fpl_holder_quotient(const fpl_problem* spec,
                                       const fpl_field* u, const fpl_field* v,
                                       double* out);
/* Q^(1/p) penalized by the constraint indicator (+inf off-manifold). */
FPL_API fpl_status fpl_constrained_root(const fpl_problem* spec,
                                        const fpl_field* u, const fpl_field* v,
                                        double* out);

typedef struct fpl_check_opts {
  double limit_tol;      /* default 0.15 */
  double constraint_tol; /* default 1e-9 */
  double bound_tol;      /* default 0.05 */
} fpl_check_opts;

FPL_API void fpl_check_opts_default(fpl_check_opts* opts);

/* Solve along an increasing p list (warm-started) and run the limit
 * checks. The problem's own p is ignored in favor of p_list. */
FPL_API fpl_status fpl_sweep_run(const fpl_problem* spec,
                                 const double* p_list, int p_count,
                                 const fpl_solve_opts* solve_opts,
                                 const fpl_check_opts* check_opts,
                                 fpl_sweep** out);
FPL_API void fpl_sweep_free(fpl_sweep* sweep);

typedef struct fpl_sweep_record {
  double p;
  double lambda_root;
  double log_lambda;
  double holder_u;
  double holder_v;
  double s_infty_norm;
  double constraint;
  double weak_residual;
  double cone_q_root;
  int argmax_u;
  int argmax_v;
  int iterations;
  int converged;
} fpl_sweep_record;

FPL_API int fpl_sweep_record_count(const fpl_sweep* sweep);
FPL_API fpl_status fpl_sweep_get_record(const fpl_sweep* sweep, int index,
                                        fpl_sweep_record* out);
/* which: 0 for u, 1 for v. */
FPL_API fpl_status fpl_sweep_field(const fpl_sweep* sweep, int index,
                                   int which, fpl_field** out);
FPL_API double fpl_sweep_limit(const fpl_sweep* sweep);
FPL_API int fpl_sweep_check_count(const fpl_sweep* sweep);
/* name points into the sweep handle and is valid until fpl_sweep_free. */
FPL_API fpl_status fpl_sweep_check(const fpl_sweep* sweep, int index,
                                   const char** name, int* pass, double* gap);
FPL_API int fpl_sweep_all_pass(const fpl_sweep* sweep);
FPL_API fpl_status fpl_sweep_csv(const fpl_sweep* sweep, char** out);
FPL_API fpl_status fpl_sweep_json(const fpl_sweep* sweep, char** out);
FPL_API fpl_status fpl_sweep_checks_json(const fpl_sweep* sweep, char** out);
FPL_API fpl_status fpl_sweep_gnuplot_lambda(const fpl_sweep* sweep,
                                            char** out);
FPL_API fpl_status fpl_sweep_gnuplot_holder(const fpl_sweep* sweep,
                                            char** out);

/* ------------------------------------------------------------- viscosity */

/* Pointwise Holder infinity-Laplacian residual of the v limit equation on
 * interior nodes deeper than layer_k cells, excluding source_node. */
FPL_API fpl_status fpl_residual_v(const fpl_field* v, int source_node,
                                  double t, int layer_k, fpl_residual** out);
/* Residual of the u limit equation; sign_convention "minus" | "plus";
 * anchor_node excluded from the evaluation set (-1 for none). */
FPL_API fpl_status fpl_residual_u(const fpl_field* u, double v_anchor_value,
                                  double s, double theta, double lambda_inf,
                                  int layer_k, const char* sign_convention,
                                  int anchor_node, fpl_residual** out);
FPL_API void fpl_residual_free(fpl_residual* rep);

FPL_API int fpl_residual_count(const fpl_residual* rep);
FPL_API double fpl_residual_sup_norm(const fpl_residual* rep);
FPL_API fpl_status fpl_residual_values(const fpl_residual* rep, int* nodes,
                                       double* values, int count);
FPL_API fpl_status fpl_residual_csv(const fpl_residual* rep, char** out);
FPL_API fpl_status fpl_residual_json(const fpl_residual* rep, char** out);

/* ----------------------------------------------------------------- misc */

/* Built-in cross-check battery; returns the number of failures and, when
 * verbose, writes a per-check report to *log (free with fpl_string_free). */
FPL_API fpl_status fpl_selftest(int verbose, char** log, int* failures);

FPL_API void fpl_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FPLEIG_H */
