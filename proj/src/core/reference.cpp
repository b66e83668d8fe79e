#include "core/reference.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/asymptotics.hpp"

namespace fpl::reference {

namespace {

double tail_integral(const DomainGrid& g, int k, double sigma, double p) {
  const double sp = sigma * p;
  const auto& q = g.interior_coord(k);
  if (g.dim() == 1) {
    const double a = g.bounds()[0];
    const double b = g.bounds()[2];
    return (std::pow(q[0] - a, -sp) + std::pow(b - q[0], -sp)) / sp;
  }
  const double h2 = g.spacing() * g.spacing();
  double acc = 0.0;
  for (const auto& e : g.exterior_coords()) {
    acc += std::pow(std::hypot(q[0] - e[0], q[1] - e[1]), -(2.0 + sp)) * h2;
  }
  acc += 2.0 * std::numbers::pi * std::pow(g.farfield_radius(k), -sp) / sp;
  return acc;
}

}  // namespace

double gagliardo_energy(const ScalarField& u, double sigma, double p) {
  const DomainGrid& g = u.grid();
  const int m = g.interior_count();
  const double np = g.dim() + sigma * p;
  const double hn = std::pow(g.spacing(), g.dim());
  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto& xk = g.interior_coord(k);
    for (int l = 0; l < m; ++l) {
      if (l == k) continue;
      const auto& xl = g.interior_coord(l);
      const double diff = std::fabs(u[k] - u[l]);
      if (diff == 0.0) continue;
      const double dist = std::hypot(xk[0] - xl[0], xk[1] - xl[1]);
      acc += std::pow(diff, p) * std::pow(dist, -np) * hn * hn;
    }
    if (u[k] != 0.0) {
      acc += 2.0 * std::pow(std::fabs(u[k]), p) * tail_integral(g, k, sigma, p) * hn;
    }
  }
  return acc;
}

double denominator_value(const ProblemSpec& spec, const ScalarField& u,
                         const ScalarField& v) {
  const double a = spec.alpha();
  const double b = spec.beta();
  if (spec.variant == Variant::P2) {
    return std::pow(std::fabs(u[spec.anchor0]), a) *
           std::pow(std::fabs(v[spec.anchor1]), b);
  }
  const double hn = std::pow(spec.grid->spacing(), spec.grid->dim());
  double mass = 0.0;
  for (int k = 0; k < u.size(); ++k) {
    mass += std::pow(std::fabs(u[k]), a) * hn;
  }
  const double vc = spec.variant == Variant::P1Max ? v.sup_norm()
                                                   : std::fabs(v[spec.anchor0]);
  return mass * std::pow(vc, b);
}

double rayleigh_quotient(const ProblemSpec& spec, const ScalarField& u,
                         const ScalarField& v) {
  const double num = (gagliardo_energy(u, spec.s, spec.p) +
                      gagliardo_energy(v, spec.t, spec.p)) /
                     spec.p;
  return num / denominator_value(spec, u, v);
}

double uniform(std::uint64_t& state, double lo, double hi) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return lo + (hi - lo) * (static_cast<double>(z >> 11) * 0x1.0p-53);
}

namespace {

ScalarField random_field(std::shared_ptr<const DomainGrid> grid,
                         std::uint64_t& state, double lo, double hi) {
  ScalarField f(grid);
  for (int k = 0; k < f.size(); ++k) f[k] = uniform(state, lo, hi);
  return f;
}

struct Suite {
  bool verbose;
  std::string* log;
  int failures = 0;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) ++failures;
    if (log && (verbose || !ok)) {
      *log += (ok ? "[pass] " : "[FAIL] ") + what + "\n";
    }
  }
};

void oracle_equivalence(Suite& s) {
  std::uint64_t state = 11;
  for (int n : {8, 16}) {
    const auto grid = DomainGrid::interval(0.0, 1.0, n);
    for (double sigma : {0.3, 0.7}) {
      for (double p : {3.0, 5.0}) {
        for (int rep = 0; rep < 2; ++rep) {
          const ScalarField f = random_field(grid, state, -1.0, 1.0);
          const double naive = gagliardo_energy(f, sigma, p);
          const double logd = gagliardo(f, sigma, p).energy.value();
          const double rel = std::fabs(naive - logd) / naive;
          std::ostringstream what;
          what << "oracle 1d n=" << n << " sigma=" << sigma << " p=" << p
               << " rel=" << rel;
          s.expect(rel <= 1e-10, what.str());
        }
      }
    }
  }
  const auto grid2 =
      DomainGrid::box2d({0.0, 0.0, 1.0, 1.0}, 8, MaskRule::Disc);
  for (int rep = 0; rep < 2; ++rep) {
    const ScalarField f = random_field(grid2, state, -1.0, 1.0);
    const double naive = gagliardo_energy(f, 0.5, 3.0);
    const double logd = gagliardo(f, 0.5, 3.0).energy.value();
    const double rel = std::fabs(naive - logd) / naive;
    std::ostringstream what;
    what << "oracle 2d disc rel=" << rel;
    s.expect(rel <= 1e-10, what.str());
  }
}

void gradient_identity(Suite& s) {
  std::uint64_t state = 23;
  const auto grid = DomainGrid::interval(0.0, 1.0, 12);
  const double hn = grid->spacing();
  for (double p : {3.0, 6.0}) {
    for (int rep = 0; rep < 2; ++rep) {
      ScalarField f = random_field(grid, state, 0.1, 1.0);
      const SignedLogField op = frac_p_laplacian(f, 0.5, p);
      double worst = 0.0;
      for (int k = 0; k < f.size(); ++k) {
        const double eps = 1e-6 * std::max(1.0, std::fabs(f[k]));
        ScalarField hi = f, lo = f;
        hi[k] += eps;
        lo[k] -= eps;
        const double fd = (gagliardo(hi, 0.5, p).energy.value() -
                           gagliardo(lo, 0.5, p).energy.value()) /
                          (2.0 * eps);
        const double an = p * hn * op.value(k);
        const double scale = std::max({std::fabs(fd), std::fabs(an), 1e-12});
        worst = std::max(worst, std::fabs(fd - an) / scale);
      }
      std::ostringstream what;
      what << "gradient p=" << p << " rel=" << worst;
      s.expect(worst <= 1e-5, what.str());
    }
  }
}

void cone_identities(Suite& s) {
  const auto grid = DomainGrid::interval(0.0, 1.0, 64);
  const double R = grid->inradius();
  const double sdm = 0.4, tdm = 0.7, theta = 0.35;
  const int apex = grid->deepest_interior();
  const auto [phi, psi] = cone_pair(grid, apex, apex, sdm, tdm, theta);
  const double sup_expected = std::pow(R, (theta - 1.0) * (tdm - sdm));
  s.expect(std::fabs(phi.sup_norm() - sup_expected) <= 1e-12 * sup_expected,
           "cone sup norm identity");
  const double product = std::pow(phi.sup_norm(), theta) *
                         std::pow(psi[apex], 1.0 - theta);
  s.expect(std::fabs(product - 1.0) <= 1e-12, "cone coupling identity");
  const double lam = lambda_infinity(sdm, tdm, theta, R);
  const double lam_ld = static_cast<double>(
      std::exp(-(static_cast<long double>(sdm) * theta +
                 (1.0L - theta) * tdm) *
               std::log(static_cast<long double>(R))));
  s.expect(std::fabs(lam - lam_ld) <= 1e-14 * lam_ld, "limit eigenvalue value");
}

void rebalance_invariants(Suite& s) {
  std::uint64_t state = 37;
  const auto grid = DomainGrid::interval(0.0, 1.0, 16);
  ProblemSpec spec;
  spec.grid = grid;
  spec.variant = Variant::P1;
  spec.p = 4.0;
  spec.anchor0 = grid->nearest_interior({0.5, 0.0});
  ScalarField u = random_field(grid, state, 0.1, 1.0);
  ScalarField v = random_field(grid, state, 0.1, 1.0);
  normalize(spec, u, v);
  const double before = rayleigh(spec, u, v).log_q;
  rebalance(spec, u, v);
  const LogValue d = denominator(spec, u, v);
  s.expect(std::fabs(d.log_value) <= 1e-10, "rebalance preserves constraint");
  const double after = rayleigh(spec, u, v).log_q;
  s.expect(after <= before + 1e-12, "rebalance does not increase Q");
}

void small_solve(Suite& s) {
  const auto grid = DomainGrid::interval(0.0, 1.0, 16);
  ProblemSpec spec;
  spec.grid = grid;
  spec.variant = Variant::P1;
  spec.p = 4.0;
  spec.anchor0 = grid->nearest_interior({0.5, 0.0});
  SolveOptions opts;
  opts.tol = 1e-8;
  opts.max_iter = 20000;
  const EigenPair pair = solve(spec, opts);
  std::ostringstream what;
  what << "small solve converged=" << pair.converged
       << " residual=" << pair.weak_residual;
  s.expect(pair.converged && pair.weak_residual <= 1e-4 && pair.lambda_root > 0,
           what.str());
}

}  // namespace

int selftest(bool verbose, std::string* log) {
  Suite s{verbose, log};
  oracle_equivalence(s);
  gradient_identity(s);
  cone_identities(s);
  rebalance_invariants(s);
  small_solve(s);
  if (log) {
    std::ostringstream out;
    out << s.checks << " checks, " << s.failures << " failures\n";
    *log += out.str();
  }
  return s.failures;
}

}  // namespace fpl::reference
