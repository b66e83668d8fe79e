#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "core/asymptotics.hpp"
#include "core/eigensolver.hpp"
#include "core/nonlocal.hpp"
#include "core/viscosity.hpp"
#include "doctest.h"
#include "fpleig.h"
#include "support/oracles.hpp"

namespace {

// Unique-ptr deleters so failed CHECKs cannot leak handles.
struct GridDel {
  void operator()(fpl_grid* g) const { fpl_grid_free(g); }
};
struct FieldDel {
  void operator()(fpl_field* f) const { fpl_field_free(f); }
};
struct ProblemDel {
  void operator()(fpl_problem* s) const { fpl_problem_free(s); }
};
struct PairDel {
  void operator()(fpl_eigenpair* p) const { fpl_eigenpair_free(p); }
};
struct SweepDel {
  void operator()(fpl_sweep* s) const { fpl_sweep_free(s); }
};
struct ResidualDel {
  void operator()(fpl_residual* r) const { fpl_residual_free(r); }
};

using GridPtr = std::unique_ptr<fpl_grid, GridDel>;
using FieldPtr = std::unique_ptr<fpl_field, FieldDel>;
using ProblemPtr = std::unique_ptr<fpl_problem, ProblemDel>;
using PairPtr = std::unique_ptr<fpl_eigenpair, PairDel>;
using SweepPtr = std::unique_ptr<fpl_sweep, SweepDel>;
using ResidualPtr = std::unique_ptr<fpl_residual, ResidualDel>;

GridPtr make_interval(double a, double b, int n) {
  fpl_grid* g = nullptr;
  REQUIRE(fpl_grid_interval(a, b, n, 0.0, &g) == FPL_OK);
  return GridPtr(g);
}

FieldPtr make_field(const fpl_grid* g, const std::vector<double>& values) {
  fpl_field* f = nullptr;
  REQUIRE(fpl_field_create(g, &f) == FPL_OK);
  FieldPtr out(f);
  REQUIRE(fpl_field_set(f, values.data(), (int)values.size()) == FPL_OK);
  return out;
}

std::vector<double> field_values(const fpl_field* f) {
  std::vector<double> out(fpl_field_size(f));
  REQUIRE(fpl_field_get(f, out.data(), (int)out.size()) == FPL_OK);
  return out;
}

// The out-pointer must be filled inside the helper: passing a status and the
// pointer as two arguments would read the pointer in unspecified order.
template <typename F>
std::string take_string(F&& fill) {
  char* s = nullptr;
  REQUIRE(fill(&s) == FPL_OK);
  REQUIRE(s != nullptr);
  std::string out(s);
  fpl_string_free(s);
  return out;
}

ProblemPtr make_p1(const fpl_grid* g, double p) {
  int x0 = -1;
  REQUIRE(fpl_grid_nearest_interior(g, 0.5, 0.0, &x0) == FPL_OK);
  fpl_problem* spec = nullptr;
  REQUIRE(fpl_problem_create(g, "P1", 0.5, 0.5, 0.5, p, x0, -1, &spec) ==
          FPL_OK);
  return ProblemPtr(spec);
}

// Core-side twin of make_p1 for cross-checking wrapper outputs.
fpl::ProblemSpec core_p1(std::shared_ptr<const fpl::DomainGrid> g, double p) {
  fpl::ProblemSpec spec;
  spec.grid = g;
  spec.variant = fpl::Variant::P1;
  spec.p = p;
  spec.anchor0 = g->nearest_interior({0.5});
  return spec;
}

}  // namespace

TEST_CASE("version string is set") {
  const char* v = fpl_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
  CHECK(std::strchr(v, '.') != nullptr);
}

TEST_CASE("grid accessors agree with the core") {
  auto g = make_interval(0.0, 1.0, 64);
  auto cg = fpl::DomainGrid::interval(0.0, 1.0, 64);

  CHECK(fpl_grid_dim(g.get()) == 1);
  CHECK(fpl_grid_spacing(g.get()) == cg->spacing());
  CHECK(fpl_grid_inradius(g.get()) == cg->inradius());
  CHECK(fpl_grid_interior_count(g.get()) == cg->interior_count());
  CHECK(fpl_grid_deepest_interior(g.get()) == cg->deepest_interior());

  double x = -1.0, y = -1.0, d = -1.0;
  REQUIRE(fpl_grid_coord(g.get(), 5, &x, &y) == FPL_OK);
  CHECK(x == cg->interior_coord(5)[0]);
  CHECK(y == -1.0);  // untouched for 1D grids
  REQUIRE(fpl_grid_distance(g.get(), 5, &d) == FPL_OK);
  CHECK(d == cg->interior_distance(5));

  int k = -1;
  REQUIRE(fpl_grid_nearest_interior(g.get(), 0.49, 0.0, &k) == FPL_OK);
  CHECK(k == cg->nearest_interior({0.49}));

  CHECK(fpl_grid_json(g.get(), nullptr) == FPL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("grid json names the shape") {
  auto g = make_interval(0.0, 1.0, 64);
  auto json =
      take_string([&](char** s) { return fpl_grid_json(g.get(), s); });
  CHECK(json.find("\"dim\":1") != std::string::npos);
  CHECK(json.find("\"n\":64") != std::string::npos);
  CHECK(json.find("\"interior_count\":64") != std::string::npos);
  CHECK(json.back() == '\n');
}

TEST_CASE("grid errors report codes and leave outputs untouched") {
  int dummy = 0;
  fpl_grid* g = reinterpret_cast<fpl_grid*>(&dummy);  // sentinel, never used
  fpl_grid* const sentinel = g;

  CHECK(fpl_grid_interval(0.0, 1.0, 4, 0.0, &g) == FPL_ERR_INVALID_ARGUMENT);
  CHECK(g == sentinel);
  CHECK(std::string(fpl_last_error()).find("n") != std::string::npos);

  CHECK(fpl_grid_interval(1.0, 0.0, 16, 0.0, &g) == FPL_ERR_INVALID_ARGUMENT);
  CHECK(g == sentinel);

  const double bounds[4] = {-1.0, -1.0, 1.0, 1.0};
  CHECK(fpl_grid_box2d(bounds, 16, "hexagon", 0.0, &g) ==
        FPL_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fpl_last_error()).find("mask_rule") != std::string::npos);

  CHECK(fpl_grid_interval(0.0, 1.0, 16, 0.0, nullptr) ==
        FPL_ERR_INVALID_ARGUMENT);

  auto ok = make_interval(0.0, 1.0, 16);
  double x = 123.25, y = 456.5;
  CHECK(fpl_grid_coord(ok.get(), 99, &x, &y) == FPL_ERR_INVALID_ARGUMENT);
  CHECK(x == 123.25);
  CHECK(y == 456.5);

  CHECK(fpl_grid_dim(nullptr) == 0);
}

TEST_CASE("field set get roundtrip and accessors") {
  auto g = make_interval(0.0, 1.0, 16);
  std::vector<double> vals(16);
  for (int k = 0; k < 16; ++k) vals[k] = std::sin(0.7 * k) - 0.2;
  vals[3] = -3.0;  // sup norm sees magnitude, argmax sees value
  auto f = make_field(g.get(), vals);

  CHECK(fpl_field_size(f.get()) == 16);
  CHECK(field_values(f.get()) == vals);

  auto cg = fpl::DomainGrid::interval(0.0, 1.0, 16);
  fpl::ScalarField cf(cg);
  for (int k = 0; k < 16; ++k) cf[k] = vals[k];
  CHECK(fpl_field_sup_norm(f.get()) == cf.sup_norm());
  CHECK(fpl_field_argmax(f.get()) == cf.argmax());

  fpl_field* c = nullptr;
  REQUIRE(fpl_field_clone(f.get(), &c) == FPL_OK);
  FieldPtr clone(c);
  double zero = 0.0;
  REQUIRE(fpl_field_set(f.get(), &zero, 1) == FPL_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fpl_last_error()).find("count") != std::string::npos);
  CHECK(field_values(clone.get()) == vals);

  auto csv = take_string([&](char** s) { return fpl_field_csv(f.get(), s); });
  CHECK(csv.rfind("x,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}

TEST_CASE("cone field matches the core constructor") {
  auto g = make_interval(0.0, 1.0, 64);
  const int apex = fpl_grid_deepest_interior(g.get());
  fpl_field* f = nullptr;
  REQUIRE(fpl_field_cone(g.get(), apex, 0.5, 2.0, &f) == FPL_OK);
  FieldPtr cone(f);

  auto cg = fpl::DomainGrid::interval(0.0, 1.0, 64);
  const auto core = fpl::cone_field(cg, apex, 0.5, 2.0);
  const auto vals = field_values(cone.get());
  for (int k = 0; k < (int)vals.size(); ++k) CHECK(vals[k] == core[k]);
  CHECK(vals[apex] == 2.0 * std::pow(cg->inradius(), 0.5));
}

TEST_CASE("nonlocal wrappers agree with the core") {
  auto g = make_interval(0.0, 1.0, 16);
  auto cg = fpl::DomainGrid::interval(0.0, 1.0, 16);
  std::mt19937_64 rng(11);
  fpl::ScalarField cf = testsupport::random_field(cg, rng, -1.0, 2.0);
  std::vector<double> vals(cf.size());
  for (int k = 0; k < cf.size(); ++k) vals[k] = cf[k];
  auto f = make_field(g.get(), vals);
  const double sigma = 0.5, p = 3.0;

  double log_energy = 0.0, seminorm = 0.0;
  int is_zero = -1;
  REQUIRE(fpl_gagliardo(f.get(), sigma, p, &log_energy, &is_zero, &seminorm) ==
          FPL_OK);
  const auto core_e = fpl::gagliardo(cf, sigma, p);
  CHECK(is_zero == 0);
  CHECK(log_energy == doctest::Approx(core_e.energy.log_value).epsilon(1e-14));
  CHECK(seminorm == doctest::Approx(core_e.seminorm).epsilon(1e-14));

  double hol = 0.0;
  REQUIRE(fpl_holder_seminorm(f.get(), sigma, &hol) == FPL_OK);
  CHECK(hol == doctest::Approx(fpl::holder_seminorm(cf, sigma)).epsilon(1e-14));

  std::vector<double> log_abs(16);
  std::vector<int> sign(16);
  REQUIRE(fpl_frac_p_laplacian(f.get(), sigma, p, log_abs.data(),
                               sign.data()) == FPL_OK);
  const auto core_l = fpl::frac_p_laplacian(cf, sigma, p);
  for (int k = 0; k < 16; ++k) {
    CHECK(sign[k] == core_l.sign[k]);
    CHECK(log_abs[k] ==
          doctest::Approx(core_l.log_abs[k]).epsilon(1e-13));
  }

  for (int node : {0, 7, 15}) {
    double plus = 0.0, minus = 0.0, sum = 0.0;
    REQUIRE(fpl_infinity_laplacian(f.get(), sigma, node, &plus, &minus,
                                   &sum) == FPL_OK);
    CHECK(plus == fpl::infinity_laplacian_plus(cf, sigma, node));
    CHECK(minus == fpl::infinity_laplacian_minus(cf, sigma, node));
    CHECK(sum == fpl::infinity_laplacian(cf, sigma, node));
  }

  std::vector<double> zeros(16, 0.0);
  auto zf = make_field(g.get(), zeros);
  REQUIRE(fpl_gagliardo(zf.get(), sigma, p, &log_energy, &is_zero,
                        &seminorm) == FPL_OK);
  CHECK(is_zero == 1);
  CHECK(seminorm == 0.0);

  CHECK(fpl_gagliardo(f.get(), 1.5, p, &log_energy, &is_zero, &seminorm) ==
        FPL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("problem creation validates inputs") {
  auto g = make_interval(0.0, 1.0, 32);
  fpl_problem* spec = nullptr;

  CHECK(fpl_problem_create(g.get(), "P3", 0.5, 0.5, 0.5, 4.0, 15, -1, &spec) ==
        FPL_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fpl_last_error()).find("variant") != std::string::npos);

  CHECK(fpl_problem_create(g.get(), "P2", 0.5, 0.5, 0.5, 4.0, 10, 10, &spec) ==
        FPL_ERR_INVALID_ARGUMENT);

  CHECK(fpl_problem_create(g.get(), "P1", 0.5, 0.5, 1.5, 4.0, 15, -1, &spec) ==
        FPL_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fpl_last_error()).find("theta") != std::string::npos);

  CHECK(fpl_problem_create(g.get(), "P1", 0.5, 0.5, 0.5, 1.0, 15, -1, &spec) ==
        FPL_ERR_INVALID_ARGUMENT);

  REQUIRE(fpl_problem_create(g.get(), "P1MAX", 0.5, 0.5, 0.5, 4.0, -1, -1,
                             &spec) == FPL_OK);
  ProblemPtr ok(spec);
}

TEST_CASE("denominator normalize and rayleigh") {
  auto g = make_interval(0.0, 1.0, 32);
  auto spec = make_p1(g.get(), 4.0);
  int x0 = -1;
  REQUIRE(fpl_grid_nearest_interior(g.get(), 0.5, 0.0, &x0) == FPL_OK);

  // u identically 1 has unit alpha-mass on (0,1); v(x0) = 2 with beta = 2
  // makes the denominator exactly 4.
  std::vector<double> uv(32, 1.0), vv(32, 1.0);
  vv[x0] = 2.0;
  auto u = make_field(g.get(), uv);
  auto v = make_field(g.get(), vv);

  double log_d = 0.0;
  int is_zero = -1;
  REQUIRE(fpl_denominator(spec.get(), u.get(), v.get(), &log_d, &is_zero) ==
          FPL_OK);
  CHECK(is_zero == 0);
  CHECK(log_d == doctest::Approx(std::log(4.0)).epsilon(1e-12));

  std::vector<double> zv(32, 0.0);
  auto z = make_field(g.get(), zv);
  REQUIRE(fpl_denominator(spec.get(), u.get(), z.get(), &log_d, &is_zero) ==
          FPL_OK);
  CHECK(is_zero == 1);

  REQUIRE(fpl_normalize(spec.get(), u.get(), v.get()) == FPL_OK);
  REQUIRE(fpl_denominator(spec.get(), u.get(), v.get(), &log_d, &is_zero) ==
          FPL_OK);
  CHECK(std::fabs(log_d) <= 1e-12);

  double log_q = 0.0, q_root = 0.0;
  REQUIRE(fpl_rayleigh(spec.get(), u.get(), v.get(), &log_q, &q_root) ==
          FPL_OK);
  auto cg = fpl::DomainGrid::interval(0.0, 1.0, 32);
  auto cspec = core_p1(cg, 4.0);
  fpl::ScalarField cu(cg), cv(cg);
  const auto uu = field_values(u.get());
  const auto vv2 = field_values(v.get());
  for (int k = 0; k < 32; ++k) {
    cu[k] = uu[k];
    cv[k] = vv2[k];
  }
  const auto r = fpl::rayleigh(cspec, cu, cv);
  CHECK(log_q == doctest::Approx(r.log_q).epsilon(1e-13));
  CHECK(q_root == doctest::Approx(r.q_root).epsilon(1e-13));

  REQUIRE(fpl_rayleigh(spec.get(), u.get(), z.get(), &log_q, &q_root) ==
          FPL_ERR_NUMERIC);
}

TEST_CASE("solve returns a converged eigenpair") {
  auto g = make_interval(0.0, 1.0, 32);
  auto spec = make_p1(g.get(), 4.0);
  fpl_solve_opts opts;
  fpl_solve_opts_default(&opts);
  CHECK(opts.max_iter == 5000);
  CHECK(opts.tol == 1e-8);

  fpl_eigenpair* pair = nullptr;
  REQUIRE(fpl_solve(spec.get(), &opts, nullptr, nullptr, &pair) == FPL_OK);
  PairPtr p(pair);

  CHECK(fpl_eigenpair_converged(pair) == 1);
  CHECK(fpl_eigenpair_iterations(pair) > 0);
  const double root = fpl_eigenpair_lambda_root(pair);
  CHECK(root > 0.0);
  CHECK(fpl_eigenpair_log_lambda(pair) ==
        doctest::Approx(4.0 * std::log(root)).epsilon(1e-12));
  CHECK(fpl_eigenpair_weak_residual(pair) <= 1e-4);

  fpl_field* uf = nullptr;
  REQUIRE(fpl_eigenpair_field(pair, 0, &uf) == FPL_OK);
  FieldPtr u(uf);
  CHECK(fpl_field_size(uf) == 32);
  for (double x : field_values(uf)) CHECK(x >= 0.0);

  auto json =
      take_string([&](char** s) { return fpl_eigenpair_json(pair, s); });
  CHECK(json.find("\"lambda_root\":") != std::string::npos);
  CHECK(json.find("\"converged\":true") != std::string::npos);

  // The default pipeline is deterministic: a second solve is identical.
  fpl_eigenpair* again = nullptr;
  REQUIRE(fpl_solve(spec.get(), &opts, nullptr, nullptr, &again) == FPL_OK);
  PairPtr p2(again);
  CHECK(fpl_eigenpair_lambda_root(again) == root);

  fpl_field* only_u = nullptr;
  REQUIRE(fpl_field_create(g.get(), &only_u) == FPL_OK);
  FieldPtr hold(only_u);
  CHECK(fpl_solve(spec.get(), &opts, only_u, nullptr, &pair) ==
        FPL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("asymptotics wrappers agree with the core") {
  double lim = 0.0;
  REQUIRE(fpl_lambda_infinity(0.5, 0.5, 0.5, 0.5, &lim) == FPL_OK);
  CHECK(lim == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(fpl_lambda_infinity(0.5, 0.5, 0.5, 0.0, &lim) ==
        FPL_ERR_INVALID_ARGUMENT);

  auto g = make_interval(0.0, 1.0, 32);
  auto spec = make_p1(g.get(), 8.0);
  fpl_field *uf = nullptr, *vf = nullptr;
  REQUIRE(fpl_cone_pair(spec.get(), &uf, &vf) == FPL_OK);
  FieldPtr u(uf), v(vf);

  auto cg = fpl::DomainGrid::interval(0.0, 1.0, 32);
  auto cspec = core_p1(cg, 8.0);
  const auto [cu, cv] = fpl::cone_pair(cg, cspec.cone_apex_u(),
                                       cspec.cone_apex_v(), 0.5, 0.5, 0.5);
  const auto uu = field_values(uf);
  const auto vv = field_values(vf);
  for (int k = 0; k < 32; ++k) {
    CHECK(uu[k] == cu[k]);
    CHECK(vv[k] == cv[k]);
  }

  double hq = 0.0;
  REQUIRE(fpl_holder_quotient(spec.get(), uf, vf, &hq) == FPL_OK);
  CHECK(hq == doctest::Approx(fpl::holder_quotient(cspec, cu, cv))
                  .epsilon(1e-14));

  // The raw cone pair sits off the finite-p manifold; normalization puts it
  // on, where the constrained root reduces to the Rayleigh root.
  double cr = 0.0;
  REQUIRE(fpl_constrained_root(spec.get(), uf, vf, &cr) == FPL_OK);
  CHECK(std::isinf(cr));
  REQUIRE(fpl_normalize(spec.get(), uf, vf) == FPL_OK);
  REQUIRE(fpl_constrained_root(spec.get(), uf, vf, &cr) == FPL_OK);
  double log_q = 0.0, q_root = 0.0;
  REQUIRE(fpl_rayleigh(spec.get(), uf, vf, &log_q, &q_root) == FPL_OK);
  CHECK(cr == doctest::Approx(q_root).epsilon(1e-14));
}

TEST_CASE("sweep runs the p list and exposes checks") {
  auto g = make_interval(0.0, 1.0, 32);
  auto spec = make_p1(g.get(), 4.0);
  const double p_list[3] = {8.0, 16.0, 32.0};
  fpl_sweep* sw = nullptr;
  REQUIRE(fpl_sweep_run(spec.get(), p_list, 3, nullptr, nullptr, &sw) ==
          FPL_OK);
  SweepPtr sweep(sw);

  REQUIRE(fpl_sweep_record_count(sw) == 3);
  for (int i = 0; i < 3; ++i) {
    fpl_sweep_record rec;
    REQUIRE(fpl_sweep_get_record(sw, i, &rec) == FPL_OK);
    CHECK(rec.p == p_list[i]);
    CHECK(rec.converged == 1);
    CHECK(rec.lambda_root > 0.0);
    CHECK(std::fabs(rec.constraint - 1.0) <= 1e-9);
  }

  double lim = 0.0;
  REQUIRE(fpl_lambda_infinity(0.5, 0.5, 0.5, fpl_grid_inradius(g.get()),
                              &lim) == FPL_OK);
  CHECK(fpl_sweep_limit(sw) == doctest::Approx(lim).epsilon(1e-15));

  const int nchecks = fpl_sweep_check_count(sw);
  REQUIRE(nchecks >= 4);
  int all = 1;
  for (int i = 0; i < nchecks; ++i) {
    const char* name = nullptr;
    int pass = -1;
    double gap = std::numeric_limits<double>::quiet_NaN();
    REQUIRE(fpl_sweep_check(sw, i, &name, &pass, &gap) == FPL_OK);
    REQUIRE(name != nullptr);
    CHECK(std::strlen(name) > 0);
    CHECK((pass == 0 || pass == 1));
    CHECK(std::isfinite(gap));
    all &= pass;
  }
  CHECK(fpl_sweep_all_pass(sw) == all);

  fpl_field* vf = nullptr;
  REQUIRE(fpl_sweep_field(sw, 2, 1, &vf) == FPL_OK);
  FieldPtr v(vf);
  CHECK(fpl_field_size(vf) == 32);

  auto csv = take_string([&](char** s) { return fpl_sweep_csv(sw, s); });
  CHECK(csv.rfind("p,lambda_root,holder_u,holder_v,constraint\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  auto json = take_string([&](char** s) { return fpl_sweep_json(sw, s); });
  CHECK(json.find("\"records\":[") != std::string::npos);
  auto checks =
      take_string([&](char** s) { return fpl_sweep_checks_json(sw, s); });
  CHECK(checks.find("\"all_pass\":") != std::string::npos);
  auto plot =
      take_string([&](char** s) { return fpl_sweep_gnuplot_lambda(sw, s); });
  CHECK(plot.rfind("# p lambda_root\n", 0) == 0);

  fpl_sweep* bad = nullptr;
  CHECK(fpl_sweep_run(spec.get(), nullptr, 0, nullptr, nullptr, &bad) ==
        FPL_ERR_INVALID_ARGUMENT);
  const double decreasing[2] = {16.0, 8.0};
  CHECK(fpl_sweep_run(spec.get(), decreasing, 2, nullptr, nullptr, &bad) ==
        FPL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("residual wrappers agree with the core") {
  auto g = make_interval(0.0, 1.0, 64);
  auto cg = fpl::DomainGrid::interval(0.0, 1.0, 64);
  const int apex = fpl_grid_deepest_interior(g.get());
  fpl_field* vf = nullptr;
  REQUIRE(fpl_field_cone(g.get(), apex, 0.5, 1.0, &vf) == FPL_OK);
  FieldPtr v(vf);
  fpl::ScalarField cv = fpl::cone_field(cg, apex, 0.5, 1.0);

  fpl_residual* rep = nullptr;
  REQUIRE(fpl_residual_v(vf, apex, 0.5, 3, &rep) == FPL_OK);
  ResidualPtr r(rep);
  const auto core = fpl::residual_v(cv, apex, 0.5, 3);

  REQUIRE(fpl_residual_count(rep) == (int)core.nodes.size());
  CHECK(fpl_residual_sup_norm(rep) == core.sup_norm);
  std::vector<int> nodes(core.nodes.size());
  std::vector<double> values(core.nodes.size());
  REQUIRE(fpl_residual_values(rep, nodes.data(), values.data(),
                              (int)nodes.size()) == FPL_OK);
  for (size_t i = 0; i < core.nodes.size(); ++i) {
    CHECK(nodes[i] == core.nodes[i]);
    CHECK(values[i] == core.residual[i]);
  }
  CHECK(fpl_residual_values(rep, nodes.data(), values.data(), 2) ==
        FPL_ERR_INVALID_ARGUMENT);

  auto csv = take_string([&](char** s) { return fpl_residual_csv(rep, s); });
  CHECK(csv.rfind("x,residual\n", 0) == 0);
  auto json = take_string([&](char** s) { return fpl_residual_json(rep, s); });
  CHECK(json.find("\"field\":\"v\"") != std::string::npos);
  CHECK(json.find("\"sup_norm\":") != std::string::npos);

  fpl_residual* ru = nullptr;
  REQUIRE(fpl_residual_u(vf, 1.0, 0.5, 0.5, 1.0, 3, "plus", -1, &ru) ==
          FPL_OK);
  fpl_residual_free(ru);
  CHECK(fpl_residual_u(vf, 1.0, 0.5, 0.5, 1.0, 3, "sideways", -1, &ru) ==
        FPL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("selftest battery reports no failures") {
  int failures = -1;
  REQUIRE(fpl_selftest(0, nullptr, &failures) == FPL_OK);
  CHECK(failures == 0);

  char* log = nullptr;
  REQUIRE(fpl_selftest(1, &log, &failures) == FPL_OK);
  REQUIRE(log != nullptr);
  CHECK(std::strlen(log) > 0);
  fpl_string_free(log);
}
