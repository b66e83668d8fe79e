#include "fpleig.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

#include "core/asymptotics.hpp"
#include "core/reference.hpp"
#include "core/serialize.hpp"
#include "core/viscosity.hpp"

namespace {

thread_local std::string g_error;

void set_error(const char* msg) { g_error = msg ? msg : "unknown error"; }

// Exceptions carry the validation story: invalid_argument for bad inputs,
// domain_error for degenerate numerics, anything else is internal.
template <typename F>
fpl_status guarded(F&& fn) {
  try {
    fn();
    return FPL_OK;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return FPL_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return FPL_ERR_NUMERIC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return FPL_ERR_INTERNAL;
  } catch (...) {
    set_error(nullptr);
    return FPL_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + ": null handle");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct fpl_grid {
  std::shared_ptr<const fpl::DomainGrid> g;
};

struct fpl_field {
  fpl::ScalarField f;
};

struct fpl_problem {
  fpl::ProblemSpec spec;
};

struct fpl_eigenpair {
  fpl::ProblemSpec spec;
  fpl::EigenPair pair;
};

struct fpl_sweep {
  fpl::SweepReport report;
  fpl::CheckOptions opts;
};

struct fpl_residual {
  std::shared_ptr<const fpl::DomainGrid> g;
  fpl::ResidualReport rep;
};

extern "C" {

const char* fpl_version(void) { return "0.1.0"; }

const char* fpl_last_error(void) { return g_error.c_str(); }

/* ------------------------------------------------------------------ grid */

fpl_status fpl_grid_interval(double a, double b, int n, double collar_width,
                             fpl_grid** out) {
  return guarded([&] {
    require(out, "fpl_grid_interval: out");
    auto g = fpl::DomainGrid::interval(a, b, n, collar_width);
    *out = new fpl_grid{std::move(g)};
  });
}

fpl_status fpl_grid_box2d(const double bounds[4], int n_per_axis,
                          const char* mask_rule, double collar_width,
                          fpl_grid** out) {
  return guarded([&] {
    require(out, "fpl_grid_box2d: out");
    require(bounds, "fpl_grid_box2d: bounds");
    require(mask_rule, "fpl_grid_box2d: mask_rule");
    auto g = fpl::DomainGrid::box2d({bounds[0], bounds[1], bounds[2], bounds[3]},
                                    n_per_axis,
                                    fpl::mask_rule_from_name(mask_rule),
                                    collar_width);
    *out = new fpl_grid{std::move(g)};
  });
}

void fpl_grid_free(fpl_grid* g) { delete g; }

int fpl_grid_dim(const fpl_grid* g) { return g ? g->g->dim() : 0; }

double fpl_grid_spacing(const fpl_grid* g) { return g ? g->g->spacing() : 0.0; }

double fpl_grid_inradius(const fpl_grid* g) {
  return g ? g->g->inradius() : 0.0;
}

int fpl_grid_interior_count(const fpl_grid* g) {
  return g ? g->g->interior_count() : 0;
}

fpl_status fpl_grid_coord(const fpl_grid* g, int k, double* x, double* y) {
  return guarded([&] {
    require(g, "fpl_grid_coord: grid");
    require(x, "fpl_grid_coord: x");
    if (k < 0 || k >= g->g->interior_count())
      throw std::invalid_argument("fpl_grid_coord: index out of range");
    const auto& c = g->g->interior_coord(k);
    *x = c[0];
    if (g->g->dim() == 2) {
      require(y, "fpl_grid_coord: y");
      *y = c[1];
    }
  });
}

fpl_status fpl_grid_distance(const fpl_grid* g, int k, double* d) {
  return guarded([&] {
    require(g, "fpl_grid_distance: grid");
    require(d, "fpl_grid_distance: d");
    if (k < 0 || k >= g->g->interior_count())
      throw std::invalid_argument("fpl_grid_distance: index out of range");
    *d = g->g->interior_distance(k);
  });
}

fpl_status fpl_grid_nearest_interior(const fpl_grid* g, double x, double y,
                                     int* k) {
  return guarded([&] {
    require(g, "fpl_grid_nearest_interior: grid");
    require(k, "fpl_grid_nearest_interior: k");
    *k = g->g->nearest_interior({x, y});
  });
}

int fpl_grid_deepest_interior(const fpl_grid* g) {
  return g ? g->g->deepest_interior() : -1;
}

fpl_status fpl_grid_json(const fpl_grid* g, char** out) {
  return guarded([&] {
    require(g, "fpl_grid_json: grid");
    require(out, "fpl_grid_json: out");
    *out = copy_string(fpl::grid_json(*g->g));
  });
}

/* ----------------------------------------------------------------- field */

fpl_status fpl_field_create(const fpl_grid* g, fpl_field** out) {
  return guarded([&] {
    require(g, "fpl_field_create: grid");
    require(out, "fpl_field_create: out");
    *out = new fpl_field{fpl::ScalarField(g->g)};
  });
}

fpl_status fpl_field_clone(const fpl_field* f, fpl_field** out) {
  return guarded([&] {
    require(f, "fpl_field_clone: field");
    require(out, "fpl_field_clone: out");
    *out = new fpl_field{f->f};
  });
}

void fpl_field_free(fpl_field* f) { delete f; }

int fpl_field_size(const fpl_field* f) { return f ? f->f.size() : 0; }

fpl_status fpl_field_set(fpl_field* f, const double* values, int count) {
  return guarded([&] {
    require(f, "fpl_field_set: field");
    require(values, "fpl_field_set: values");
    if (count != f->f.size())
      throw std::invalid_argument("fpl_field_set: count mismatch");
    for (int k = 0; k < count; ++k) f->f.set(k, values[k]);
  });
}

fpl_status fpl_field_get(const fpl_field* f, double* values, int count) {
  return guarded([&] {
    require(f, "fpl_field_get: field");
    require(values, "fpl_field_get: values");
    if (count != f->f.size())
      throw std::invalid_argument("fpl_field_get: count mismatch");
    for (int k = 0; k < count; ++k) values[k] = f->f[k];
  });
}

double fpl_field_sup_norm(const fpl_field* f) {
  return f ? f->f.sup_norm() : 0.0;
}

int fpl_field_argmax(const fpl_field* f) { return f ? f->f.argmax() : -1; }

fpl_status fpl_field_cone(const fpl_grid* g, int apex, double exponent,
                          double prefactor, fpl_field** out) {
  return guarded([&] {
    require(g, "fpl_field_cone: grid");
    require(out, "fpl_field_cone: out");
    *out = new fpl_field{fpl::cone_field(g->g, apex, exponent, prefactor)};
  });
}

fpl_status fpl_field_csv(const fpl_field* f, char** out) {
  return guarded([&] {
    require(f, "fpl_field_csv: field");
    require(out, "fpl_field_csv: out");
    *out = copy_string(fpl::field_csv(f->f));
  });
}

/* -------------------------------------------------------------- nonlocal */

fpl_status fpl_gagliardo(const fpl_field* f, double sigma, double p,
                         double* log_energy, int* is_zero, double* seminorm) {
  return guarded([&] {
    require(f, "fpl_gagliardo: field");
    auto r = fpl::gagliardo(f->f, sigma, p);
    if (log_energy) *log_energy = r.energy.log_value;
    if (is_zero) *is_zero = r.energy.is_zero ? 1 : 0;
    if (seminorm) *seminorm = r.seminorm;
  });
}

fpl_status fpl_holder_seminorm(const fpl_field* f, double sigma, double* out) {
  return guarded([&] {
    require(f, "fpl_holder_seminorm: field");
    require(out, "fpl_holder_seminorm: out");
    *out = fpl::holder_seminorm(f->f, sigma);
  });
}

fpl_status fpl_frac_p_laplacian(const fpl_field* f, double sigma, double p,
                                double* log_abs, int* sign) {
  return guarded([&] {
    require(f, "fpl_frac_p_laplacian: field");
    require(log_abs, "fpl_frac_p_laplacian: log_abs");
    require(sign, "fpl_frac_p_laplacian: sign");
    auto L = fpl::frac_p_laplacian(f->f, sigma, p);
    for (int k = 0; k < L.size(); ++k) {
      log_abs[k] = L.log_abs[k];
      sign[k] = L.sign[k];
    }
  });
}

fpl_status fpl_infinity_laplacian(const fpl_field* f, double sigma, int node,
                                  double* plus, double* minus, double* sum) {
  return guarded([&] {
    require(f, "fpl_infinity_laplacian: field");
    double lp = fpl::infinity_laplacian_plus(f->f, sigma, node);
    double lm = fpl::infinity_laplacian_minus(f->f, sigma, node);
    if (plus) *plus = lp;
    if (minus) *minus = lm;
    if (sum) *sum = lp + lm;
  });
}

/* --------------------------------------------------------------- problem */

fpl_status fpl_problem_create(const fpl_grid* g, const char* variant, double s,
                              double t, double theta, double p, int anchor0,
                              int anchor1, fpl_problem** out) {
  return guarded([&] {
    require(g, "fpl_problem_create: grid");
    require(variant, "fpl_problem_create: variant");
    require(out, "fpl_problem_create: out");
    fpl::ProblemSpec spec;
    spec.grid = g->g;
    spec.variant = fpl::variant_from_name(variant);
    spec.s = s;
    spec.t = t;
    spec.theta = theta;
    spec.p = p;
    spec.anchor0 = anchor0;
    spec.anchor1 = anchor1;
    spec.validate();
    *out = new fpl_problem{std::move(spec)};
  });
}

void fpl_problem_free(fpl_problem* spec) { delete spec; }

void fpl_solve_opts_default(fpl_solve_opts* opts) {
  if (!opts) return;
  fpl::SolveOptions d;
  opts->step = d.step;
  opts->max_iter = d.max_iter;
  opts->tol = d.tol;
  opts->positivity = d.positivity ? 1 : 0;
  opts->init = 0;
  opts->seed = d.seed;
}

namespace {

fpl::SolveOptions to_solve_options(const fpl_solve_opts* opts, bool given) {
  fpl::SolveOptions o;
  if (opts) {
    o.step = opts->step;
    o.max_iter = opts->max_iter;
    o.tol = opts->tol;
    o.positivity = opts->positivity != 0;
    o.init = opts->init == 1 ? fpl::InitKind::Random : fpl::InitKind::Cones;
    o.seed = opts->seed;
  }
  if (given) o.init = fpl::InitKind::Given;
  return o;
}

}  // namespace

fpl_status fpl_denominator(const fpl_problem* spec, const fpl_field* u,
                           const fpl_field* v, double* log_value,
                           int* is_zero) {
  return guarded([&] {
    require(spec, "fpl_denominator: problem");
    require(u, "fpl_denominator: u");
    require(v, "fpl_denominator: v");
    auto d = fpl::denominator(spec->spec, u->f, v->f);
    if (log_value) *log_value = d.log_value;
    if (is_zero) *is_zero = d.is_zero ? 1 : 0;
  });
}

fpl_status fpl_normalize(const fpl_problem* spec, fpl_field* u, fpl_field* v) {
  return guarded([&] {
    require(spec, "fpl_normalize: problem");
    require(u, "fpl_normalize: u");
    require(v, "fpl_normalize: v");
    fpl::normalize(spec->spec, u->f, v->f);
  });
}

fpl_status fpl_rebalance(const fpl_problem* spec, fpl_field* u, fpl_field* v) {
  return guarded([&] {
    require(spec, "fpl_rebalance: problem");
    require(u, "fpl_rebalance: u");
    require(v, "fpl_rebalance: v");
    fpl::rebalance(spec->spec, u->f, v->f);
  });
}

fpl_status fpl_rayleigh(const fpl_problem* spec, const fpl_field* u,
                        const fpl_field* v, double* log_q, double* q_root) {
  return guarded([&] {
    require(spec, "fpl_rayleigh: problem");
    require(u, "fpl_rayleigh: u");
    require(v, "fpl_rayleigh: v");
    auto r = fpl::rayleigh(spec->spec, u->f, v->f);
    if (log_q) *log_q = r.log_q;
    if (q_root) *q_root = r.q_root;
  });
}

fpl_status fpl_solve(const fpl_problem* spec, const fpl_solve_opts* opts,
                     const fpl_field* u0, const fpl_field* v0,
                     fpl_eigenpair** out) {
  return guarded([&] {
    require(spec, "fpl_solve: problem");
    require(out, "fpl_solve: out");
    if ((u0 == nullptr) != (v0 == nullptr))
      throw std::invalid_argument("fpl_solve: give both of u0, v0 or neither");
    bool given = u0 && v0;
    auto o = to_solve_options(opts, given);
    auto pair = fpl::solve(spec->spec, o, given ? &u0->f : nullptr,
                           given ? &v0->f : nullptr);
    *out = new fpl_eigenpair{spec->spec, std::move(pair)};
  });
}

void fpl_eigenpair_free(fpl_eigenpair* pair) { delete pair; }

double fpl_eigenpair_lambda_root(const fpl_eigenpair* pair) {
  return pair ? pair->pair.lambda_root
              : std::numeric_limits<double>::quiet_NaN();
}

double fpl_eigenpair_log_lambda(const fpl_eigenpair* pair) {
  return pair ? pair->pair.lambda.log_value
              : std::numeric_limits<double>::quiet_NaN();
}

int fpl_eigenpair_iterations(const fpl_eigenpair* pair) {
  return pair ? pair->pair.iterations : 0;
}

int fpl_eigenpair_converged(const fpl_eigenpair* pair) {
  return pair && pair->pair.converged ? 1 : 0;
}

double fpl_eigenpair_weak_residual(const fpl_eigenpair* pair) {
  return pair ? pair->pair.weak_residual
              : std::numeric_limits<double>::quiet_NaN();
}

fpl_status fpl_eigenpair_field(const fpl_eigenpair* pair, int which,
                               fpl_field** out) {
  return guarded([&] {
    require(pair, "fpl_eigenpair_field: pair");
    require(out, "fpl_eigenpair_field: out");
    if (which != 0 && which != 1)
      throw std::invalid_argument("fpl_eigenpair_field: which must be 0 or 1");
    *out = new fpl_field{which == 0 ? pair->pair.u : pair->pair.v};
  });
}

fpl_status fpl_eigenpair_json(const fpl_eigenpair* pair, char** out) {
  return guarded([&] {
    require(pair, "fpl_eigenpair_json: pair");
    require(out, "fpl_eigenpair_json: out");
    *out = copy_string(fpl::eigenpair_json(pair->spec, pair->pair));
  });
}

/* ----------------------------------------------------------- asymptotics */

fpl_status fpl_lambda_infinity(double s, double t, double theta, double R,
                               double* out) {
  return guarded([&] {
    require(out, "fpl_lambda_infinity: out");
    *out = fpl::lambda_infinity(s, t, theta, R);
  });
}

fpl_status fpl_cone_pair(const fpl_problem* spec, fpl_field** u,
                         fpl_field** v) {
  return guarded([&] {
    require(spec, "fpl_cone_pair: problem");
    require(u, "fpl_cone_pair: u");
    require(v, "fpl_cone_pair: v");
    const auto& s = spec->spec;
    auto pair = fpl::cone_pair(s.grid, s.cone_apex_u(), s.cone_apex_v(), s.s,
                               s.t, s.theta);
    *u = new fpl_field{std::move(pair.first)};
    *v = new fpl_field{std::move(pair.second)};
  });
}

fpl_status fpl_holder_quotient(const fpl_problem* spec, const fpl_field* u,
                               const fpl_field* v, double* out) {
  return guarded([&] {
    require(spec, "fpl_holder_quotient: problem");
    require(u, "fpl_holder_quotient: u");
    require(v, "fpl_holder_quotient: v");
    require(out, "fpl_holder_quotient: out");
    *out = fpl::holder_quotient(spec->spec, u->f, v->f);
  });
}

fpl_status fpl_constrained_root(const fpl_problem* spec, const fpl_field* u,
                                const fpl_field* v, double* out) {
  return guarded([&] {
    require(spec, "fpl_constrained_root: problem");
    require(u, "fpl_constrained_root: u");
    require(v, "fpl_constrained_root: v");
    require(out, "fpl_constrained_root: out");
    *out = fpl::constrained_root(spec->spec, u->f, v->f);
  });
}

void fpl_check_opts_default(fpl_check_opts* opts) {
  if (!opts) return;
  fpl::CheckOptions d;
  opts->limit_tol = d.limit_tol;
  opts->constraint_tol = d.constraint_tol;
  opts->bound_tol = d.bound_tol;
}

fpl_status fpl_sweep_run(const fpl_problem* spec, const double* p_list,
                         int p_count, const fpl_solve_opts* solve_opts,
                         const fpl_check_opts* check_opts, fpl_sweep** out) {
  return guarded([&] {
    require(spec, "fpl_sweep_run: problem");
    require(p_list, "fpl_sweep_run: p_list");
    require(out, "fpl_sweep_run: out");
    if (p_count <= 0)
      throw std::invalid_argument("fpl_sweep_run: empty p list");
    std::vector<double> ps(p_list, p_list + p_count);
    auto o = to_solve_options(solve_opts, false);
    fpl::CheckOptions co;
    if (check_opts) {
      co.limit_tol = check_opts->limit_tol;
      co.constraint_tol = check_opts->constraint_tol;
      co.bound_tol = check_opts->bound_tol;
    }
    auto report = fpl::sweep(spec->spec, ps, o);
    report.checks = fpl::limit_checks(report, co);
    *out = new fpl_sweep{std::move(report), co};
  });
}

void fpl_sweep_free(fpl_sweep* sweep) { delete sweep; }

int fpl_sweep_record_count(const fpl_sweep* sweep) {
  return sweep ? static_cast<int>(sweep->report.records.size()) : 0;
}

fpl_status fpl_sweep_get_record(const fpl_sweep* sweep, int index,
                                fpl_sweep_record* out) {
  return guarded([&] {
    require(sweep, "fpl_sweep_get_record: sweep");
    require(out, "fpl_sweep_get_record: out");
    if (index < 0 || index >= fpl_sweep_record_count(sweep))
      throw std::invalid_argument("fpl_sweep_get_record: index out of range");
    const auto& r = sweep->report.records[index];
    out->p = r.p;
    out->lambda_root = r.lambda_root;
    out->log_lambda = r.log_lambda;
    out->holder_u = r.holder_u;
    out->holder_v = r.holder_v;
    out->s_infty_norm = r.s_infty_norm;
    out->constraint = r.constraint;
    out->weak_residual = r.weak_residual;
    out->cone_q_root = r.cone_q_root;
    out->argmax_u = r.argmax_u;
    out->argmax_v = r.argmax_v;
    out->iterations = r.iterations;
    out->converged = r.converged ? 1 : 0;
  });
}

fpl_status fpl_sweep_field(const fpl_sweep* sweep, int index, int which,
                           fpl_field** out) {
  return guarded([&] {
    require(sweep, "fpl_sweep_field: sweep");
    require(out, "fpl_sweep_field: out");
    if (index < 0 || index >= fpl_sweep_record_count(sweep))
      throw std::invalid_argument("fpl_sweep_field: index out of range");
    if (which != 0 && which != 1)
      throw std::invalid_argument("fpl_sweep_field: which must be 0 or 1");
    const auto& pair = sweep->report.pairs[index];
    *out = new fpl_field{which == 0 ? pair.u : pair.v};
  });
}

double fpl_sweep_limit(const fpl_sweep* sweep) {
  return sweep ? sweep->report.limit
               : std::numeric_limits<double>::quiet_NaN();
}

int fpl_sweep_check_count(const fpl_sweep* sweep) {
  return sweep ? static_cast<int>(sweep->report.checks.size()) : 0;
}

fpl_status fpl_sweep_check(const fpl_sweep* sweep, int index,
                           const char** name, int* pass, double* gap) {
  return guarded([&] {
    require(sweep, "fpl_sweep_check: sweep");
    if (index < 0 || index >= fpl_sweep_check_count(sweep))
      throw std::invalid_argument("fpl_sweep_check: index out of range");
    const auto& c = sweep->report.checks[index];
    if (name) *name = c.name.c_str();
    if (pass) *pass = c.pass ? 1 : 0;
    if (gap) *gap = c.gap;
  });
}

int fpl_sweep_all_pass(const fpl_sweep* sweep) {
  if (!sweep) return 0;
  for (const auto& c : sweep->report.checks)
    if (!c.pass) return 0;
  return sweep->report.checks.empty() ? 0 : 1;
}

fpl_status fpl_sweep_csv(const fpl_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep, "fpl_sweep_csv: sweep");
    require(out, "fpl_sweep_csv: out");
    *out = copy_string(fpl::sweep_csv(sweep->report));
  });
}

fpl_status fpl_sweep_json(const fpl_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep, "fpl_sweep_json: sweep");
    require(out, "fpl_sweep_json: out");
    *out = copy_string(fpl::sweep_json(sweep->report));
  });
}

fpl_status fpl_sweep_checks_json(const fpl_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep, "fpl_sweep_checks_json: sweep");
    require(out, "fpl_sweep_checks_json: out");
    *out = copy_string(fpl::checks_json(sweep->report, sweep->opts));
  });
}

fpl_status fpl_sweep_gnuplot_lambda(const fpl_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep, "fpl_sweep_gnuplot_lambda: sweep");
    require(out, "fpl_sweep_gnuplot_lambda: out");
    *out = copy_string(fpl::gnuplot_lambda(sweep->report));
  });
}

fpl_status fpl_sweep_gnuplot_holder(const fpl_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep, "fpl_sweep_gnuplot_holder: sweep");
    require(out, "fpl_sweep_gnuplot_holder: out");
    *out = copy_string(fpl::gnuplot_holder(sweep->report));
  });
}

/* ------------------------------------------------------------- viscosity */

fpl_status fpl_residual_v(const fpl_field* v, int source_node, double t,
                          int layer_k, fpl_residual** out) {
  return guarded([&] {
    require(v, "fpl_residual_v: field");
    require(out, "fpl_residual_v: out");
    auto rep = fpl::residual_v(v->f, source_node, t, layer_k);
    *out = new fpl_residual{v->f.grid_ptr(), std::move(rep)};
  });
}

fpl_status fpl_residual_u(const fpl_field* u, double v_anchor_value, double s,
                          double theta, double lambda_inf, int layer_k,
                          const char* sign_convention, int anchor_node,
                          fpl_residual** out) {
  return guarded([&] {
    require(u, "fpl_residual_u: field");
    require(sign_convention, "fpl_residual_u: sign_convention");
    require(out, "fpl_residual_u: out");
    std::string name(sign_convention);
    fpl::SignConvention sign;
    if (name == "minus") {
      sign = fpl::SignConvention::Minus;
    } else if (name == "plus") {
      sign = fpl::SignConvention::Plus;
    } else {
      throw std::invalid_argument(
          "fpl_residual_u: sign_convention must be \"minus\" or \"plus\"");
    }
    auto rep = fpl::residual_u(u->f, v_anchor_value, s, theta, lambda_inf,
                               layer_k, sign, anchor_node);
    *out = new fpl_residual{u->f.grid_ptr(), std::move(rep)};
  });
}

void fpl_residual_free(fpl_residual* rep) { delete rep; }

int fpl_residual_count(const fpl_residual* rep) {
  return rep ? static_cast<int>(rep->rep.nodes.size()) : 0;
}

double fpl_residual_sup_norm(const fpl_residual* rep) {
  return rep ? rep->rep.sup_norm : std::numeric_limits<double>::quiet_NaN();
}

fpl_status fpl_residual_values(const fpl_residual* rep, int* nodes,
                               double* values, int count) {
  return guarded([&] {
    require(rep, "fpl_residual_values: residual");
    if (count != fpl_residual_count(rep))
      throw std::invalid_argument("fpl_residual_values: count mismatch");
    for (int i = 0; i < count; ++i) {
      if (nodes) nodes[i] = rep->rep.nodes[i];
      if (values) values[i] = rep->rep.residual[i];
    }
  });
}

fpl_status fpl_residual_csv(const fpl_residual* rep, char** out) {
  return guarded([&] {
    require(rep, "fpl_residual_csv: residual");
    require(out, "fpl_residual_csv: out");
    *out = copy_string(fpl::residual_csv(*rep->g, rep->rep));
  });
}

fpl_status fpl_residual_json(const fpl_residual* rep, char** out) {
  return guarded([&] {
    require(rep, "fpl_residual_json: residual");
    require(out, "fpl_residual_json: out");
    *out = copy_string(fpl::residual_json(rep->rep));
  });
}

/* ----------------------------------------------------------------- misc */

fpl_status fpl_selftest(int verbose, char** log, int* failures) {
  return guarded([&] {
    require(failures, "fpl_selftest: failures");
    std::string text;
    int fails = fpl::reference::selftest(verbose != 0, log ? &text : nullptr);
    if (log) *log = copy_string(text);
    *failures = fails;
  });
}

void fpl_string_free(char* s) { std::free(s); }

}  /* extern "C" */
