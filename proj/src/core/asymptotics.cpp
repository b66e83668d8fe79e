#include "core/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fpl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_limit_params(double s, double t, double theta, double R) {
  if (!(s > 0.0) || !(s < 1.0) || !(t > 0.0) || !(t < 1.0) || s > t) {
    throw std::invalid_argument("s,t: need 0 < s <= t < 1");
  }
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw std::invalid_argument("theta: must lie in (0,1)");
  }
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("R: must be positive and finite");
  }
}

}  // namespace

double lambda_infinity(double s, double t, double theta, double R) {
  check_limit_params(s, t, theta, R);
  return std::pow(R, -(s * theta + (1.0 - theta) * t));
}

std::pair<ScalarField, ScalarField> cone_pair(
    std::shared_ptr<const DomainGrid> grid, int apex_u, int apex_v, double s,
    double t, double theta) {
  check_limit_params(s, t, theta, 1.0);
  const double R = grid->inradius();
  const double prefactor = std::pow(R, (theta - 1.0) * t - s * theta);
  return {cone_field(grid, apex_u, s, prefactor),
          cone_field(grid, apex_v, t, prefactor)};
}

double holder_quotient(const ProblemSpec& spec, const ScalarField& u,
                       const ScalarField& v) {
  const double hu = holder_seminorm(u, spec.s);
  const double hv = holder_seminorm(v, spec.t);
  double coupling = 0.0;
  switch (spec.variant) {
    case Variant::P1:
      coupling = std::pow(u.sup_norm(), spec.theta) *
                 std::pow(std::fabs(v[spec.anchor0]), 1.0 - spec.theta);
      break;
    case Variant::P1Max:
      coupling = std::pow(u.sup_norm(), spec.theta) *
                 std::pow(v.sup_norm(), 1.0 - spec.theta);
      break;
    case Variant::P2:
      coupling = std::pow(std::fabs(u[spec.anchor0]), spec.theta) *
                 std::pow(std::fabs(v[spec.anchor1]), 1.0 - spec.theta);
      break;
  }
  if (coupling == 0.0) return kInf;
  return std::max(hu, hv) / coupling;
}

double constrained_root(const ProblemSpec& spec, const ScalarField& u,
                        const ScalarField& v) {
  const LogValue d = denominator(spec, u, v);
  if (d.is_zero || std::fabs(d.log_value) > 1e-9) return kInf;
  return rayleigh(spec, u, v).q_root;
}

SweepReport sweep(const ProblemSpec& spec_template,
                  const std::vector<double>& p_list, const SolveOptions& opts) {
  if (p_list.empty()) throw std::invalid_argument("p_list: must be nonempty");
  for (size_t i = 1; i < p_list.size(); ++i) {
    if (!(p_list[i] > p_list[i - 1])) {
      throw std::invalid_argument("p_list: must be strictly increasing");
    }
  }

  SweepReport report;
  report.spec = spec_template.with_p(p_list.front());
  report.spec.validate();
  report.limit = lambda_infinity(spec_template.s, spec_template.t,
                                 spec_template.theta,
                                 spec_template.grid->inradius());

  const auto cones =
      cone_pair(spec_template.grid, report.spec.cone_apex_u(),
                report.spec.cone_apex_v(), spec_template.s, spec_template.t,
                spec_template.theta);

  const EigenPair* prev = nullptr;
  for (double p : p_list) {
    const ProblemSpec spec_p = spec_template.with_p(p);
    spec_p.validate();
    SolveOptions run_opts = opts;
    EigenPair pair;
    if (prev) {
      run_opts.init = InitKind::Given;
      pair = solve(spec_p, run_opts, &prev->u, &prev->v);
    } else {
      pair = solve(spec_p, run_opts);
    }

    SweepRecord rec;
    rec.p = p;
    rec.lambda_root = pair.lambda_root;
    rec.log_lambda = pair.lambda.log_value;
    rec.holder_u = holder_seminorm(pair.u, spec_p.s);
    rec.holder_v = holder_seminorm(pair.v, spec_p.t);
    switch (spec_p.variant) {
      case Variant::P1:
        rec.s_infty_norm = std::pow(pair.u.sup_norm(), spec_p.theta) *
                           std::pow(std::fabs(pair.v[spec_p.anchor0]),
                                    1.0 - spec_p.theta);
        break;
      case Variant::P1Max:
        rec.s_infty_norm = std::pow(pair.u.sup_norm(), spec_p.theta) *
                           std::pow(pair.v.sup_norm(), 1.0 - spec_p.theta);
        break;
      case Variant::P2:
        rec.s_infty_norm =
            std::pow(std::fabs(pair.u[spec_p.anchor0]), spec_p.theta) *
            std::pow(std::fabs(pair.v[spec_p.anchor1]), 1.0 - spec_p.theta);
        break;
    }
    rec.constraint = pair.denom.value();
    rec.argmax_u = pair.u.argmax();
    rec.argmax_v = pair.v.argmax();
    rec.iterations = pair.iterations;
    rec.converged = pair.converged;
    rec.weak_residual = pair.weak_residual;
    const RayleighValue cone_q = rayleigh(spec_p, cones.first, cones.second);
    rec.cone_log_q = cone_q.log_q;
    rec.cone_q_root = cone_q.q_root;

    report.records.push_back(rec);
    report.pairs.push_back(std::move(pair));
    prev = &report.pairs.back();
  }
  return report;
}

std::vector<CheckResult> limit_checks(const SweepReport& report,
                                      const CheckOptions& opts) {
  std::vector<int> conv;
  for (size_t i = 0; i < report.records.size(); ++i) {
    if (report.records[i].converged) conv.push_back(static_cast<int>(i));
  }
  if (conv.size() < 3) {
    throw std::invalid_argument("limit_checks: need at least 3 converged records");
  }
  const double limit = report.limit;
  std::vector<CheckResult> checks;
  auto fmt = [](double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
  };

  {
    const int last = conv.back();
    const EigenPair& pair = report.pairs[last];
    const double neg =
        std::max(0.0, -std::min(pair.u.min_value(), pair.v.min_value()));
    const double cgap = std::fabs(report.records[last].constraint - 1.0);
    CheckResult c;
    c.name = "final_pair_constraint";
    c.gap = std::max(neg, cgap);
    c.pass = neg <= 1e-12 && cgap <= opts.constraint_tol;
    c.detail = "|constraint-1| = " + fmt(cgap) + ", worst negativity = " + fmt(neg);
    checks.push_back(c);
  }

  {
    CheckResult c;
    c.name = "lambda_root_limit";
    const double err_last =
        std::fabs(report.records[conv.back()].lambda_root - limit);
    bool monotone = true;
    const size_t tail = std::min<size_t>(3, conv.size());
    for (size_t i = conv.size() - tail + 1; i < conv.size(); ++i) {
      const double e0 = std::fabs(report.records[conv[i - 1]].lambda_root - limit);
      const double e1 = std::fabs(report.records[conv[i]].lambda_root - limit);
      if (e1 > e0 + 1e-12) monotone = false;
    }
    c.gap = err_last;
    c.pass = err_last <= opts.limit_tol && monotone;
    c.detail = "|lambda_root - limit| = " + fmt(err_last) +
               (monotone ? ", error non-increasing" : ", error not monotone");
    checks.push_back(c);
  }

  {
    const SweepRecord& rec = report.records[conv.back()];
    CheckResult c;
    c.name = "holder_limit";
    c.gap = std::fabs(std::max(rec.holder_u, rec.holder_v) - limit);
    c.pass = c.gap <= opts.limit_tol;
    c.detail = "max holder seminorm = " + fmt(std::max(rec.holder_u, rec.holder_v));
    checks.push_back(c);
  }

  {
    CheckResult c;
    c.name = "cone_upper_bound";
    double worst = -kInf;
    for (int i : conv) {
      worst = std::max(worst,
                       report.records[i].log_lambda - report.records[i].cone_log_q);
    }
    c.gap = worst;
    c.pass = worst <= 1e-9;
    c.detail = "max log(Lambda_1 / cone Rayleigh) = " + fmt(worst);
    checks.push_back(c);
  }

  if (report.spec.variant == Variant::P2) {
    const DomainGrid& g = *report.spec.grid;
    {
      CheckResult c;
      c.name = "maxima_movement";
      const SweepRecord& a = report.records[conv[conv.size() - 2]];
      const SweepRecord& b = report.records[conv.back()];
      const double du = g.pair_distance(a.argmax_u, b.argmax_u);
      const double dv = g.pair_distance(a.argmax_v, b.argmax_v);
      c.gap = std::max(du, dv);
      c.pass = c.gap <= 2.0 * g.spacing() + 1e-12;
      c.detail = "argmax moved by " + fmt(c.gap) + " (2h = " + fmt(2.0 * g.spacing()) + ")";
      checks.push_back(c);
    }
    if (report.spec.s == report.spec.t) {
      CheckResult c;
      c.name = "distance_cone_bound";
      const EigenPair& pair = report.pairs[conv.back()];
      const double R = g.inradius();
      double worst = -kInf;
      for (int k = 0; k < pair.u.size(); ++k) {
        const double bound = std::pow(g.interior_distance(k) / R, report.spec.s);
        worst = std::max(worst, std::max(pair.u[k], pair.v[k]) - bound);
      }
      c.gap = worst;
      c.pass = worst <= opts.bound_tol;
      c.detail = "max (value - (d/R)^s) = " + fmt(worst) + ", tol " + fmt(opts.bound_tol);
      checks.push_back(c);
    }
  }
  return checks;
}

}  // namespace fpl
