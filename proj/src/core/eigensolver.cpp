#include "core/eigensolver.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace fpl {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::P1: return "P1";
    case Variant::P1Max: return "P1MAX";
    case Variant::P2: return "P2";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "P1") return Variant::P1;
  if (name == "P1MAX") return Variant::P1Max;
  if (name == "P2") return Variant::P2;
  throw std::invalid_argument("variant: unknown name '" + name + "'");
}

double ProblemSpec::alpha() const {
  return alpha_rule ? alpha_rule(p) : theta * p;
}

double ProblemSpec::beta() const { return p - alpha(); }

ProblemSpec ProblemSpec::with_p(double new_p) const {
  ProblemSpec out = *this;
  out.p = new_p;
  return out;
}

void ProblemSpec::validate() const {
  if (!grid) throw std::invalid_argument("problem.grid: missing");
  if (!(s > 0.0) || !(s < 1.0)) {
    throw std::invalid_argument("problem.s: must lie in (0,1)");
  }
  if (!(t > 0.0) || !(t < 1.0)) {
    throw std::invalid_argument("problem.t: must lie in (0,1)");
  }
  if (s > t) throw std::invalid_argument("problem.s: need s <= t");
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw std::invalid_argument("problem.theta: must lie in (0,1)");
  }
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw std::invalid_argument("problem.p: must be finite and > 1");
  }
  if (!(p > grid->dim() / s)) {
    throw std::invalid_argument("problem.p: need p > N/s");
  }
  const double a = alpha();
  if (!std::isfinite(a) || !(a > 1.0) || !(p - a > 1.0)) {
    throw std::invalid_argument(
        "problem.alpha_rule: need alpha(p) in (1, p-1)");
  }
  const int m = grid->interior_count();
  auto check_anchor = [&](int anchor, const char* what) {
    if (anchor < 0 || anchor >= m) {
      throw std::invalid_argument(std::string(what) +
                                  ": not an interior node index");
    }
  };
  if (variant == Variant::P1) check_anchor(anchor0, "problem.x0");
  if (variant == Variant::P2) {
    check_anchor(anchor0, "problem.x1");
    check_anchor(anchor1, "problem.x2");
    if (anchor0 == anchor1) {
      throw std::invalid_argument("problem.x2: must differ from x1");
    }
  }
}

int ProblemSpec::coupling_node(const ScalarField& v) const {
  switch (variant) {
    case Variant::P1: return anchor0;
    case Variant::P1Max: return v.argmax();
    case Variant::P2: return anchor1;
  }
  return -1;
}

int ProblemSpec::cone_apex_u() const {
  if (variant == Variant::P2) return anchor0;
  if (variant == Variant::P1Max) return grid->deepest_interior();
  return anchor0;
}

int ProblemSpec::cone_apex_v() const {
  if (variant == Variant::P2) return anchor1;
  if (variant == Variant::P1Max) return grid->deepest_interior();
  return anchor0;
}

LogValue denominator(const ProblemSpec& spec, const ScalarField& u,
                     const ScalarField& v) {
  const double a = spec.alpha();
  const double b = spec.beta();
  const DomainGrid& g = *spec.grid;
  const double log_hn = g.dim() * std::log(g.spacing());

  if (spec.variant == Variant::P2) {
    const double ux = u[spec.anchor0];
    const double vx = v[spec.anchor1];
    if (ux == 0.0 || vx == 0.0) return LogValue::zero();
    return LogValue::from_log(a * std::log(std::fabs(ux)) +
                              b * std::log(std::fabs(vx)));
  }

  LogSum mass;
  for (int k = 0; k < u.size(); ++k) {
    if (u[k] != 0.0) mass.add(a * std::log(std::fabs(u[k])) + log_hn);
  }
  if (mass.empty()) return LogValue::zero();
  const double vc = v[spec.coupling_node(v)];
  if (vc == 0.0) return LogValue::zero();
  return LogValue::from_log(mass.log_total() + b * std::log(std::fabs(vc)));
}

void normalize(const ProblemSpec& spec, ScalarField& u, ScalarField& v) {
  const LogValue d = denominator(spec, u, v);
  if (d.is_zero) throw std::domain_error("normalize: zero denominator");
  const double log_c = -d.log_value / spec.p;
  u.scale_log(log_c);
  v.scale_log(log_c);
}

std::pair<double, double> rebalance_factors(double log_energy_u,
                                            double log_energy_v, double alpha,
                                            double beta, double p) {
  const double log_mu = (alpha * (log_energy_u - std::log(alpha)) +
                         beta * (log_energy_v - std::log(beta))) /
                        p;
  const double log_a = (log_mu + std::log(alpha) - log_energy_u) / p;
  const double log_b = (log_mu + std::log(beta) - log_energy_v) / p;
  return {log_a, log_b};
}

void rebalance(const ProblemSpec& spec, ScalarField& u, ScalarField& v) {
  const GagliardoResult eu = gagliardo(u, spec.s, spec.p);
  const GagliardoResult ev = gagliardo(v, spec.t, spec.p);
  if (eu.energy.is_zero || ev.energy.is_zero) {
    throw std::domain_error("rebalance: zero energy");
  }
  const auto [log_a, log_b] =
      rebalance_factors(eu.energy.log_value, ev.energy.log_value, spec.alpha(),
                        spec.beta(), spec.p);
  u.scale_log(log_a);
  v.scale_log(log_b);
}

RayleighValue rayleigh(const ProblemSpec& spec, const ScalarField& u,
                       const ScalarField& v) {
  spec.validate();
  const LogValue d = denominator(spec, u, v);
  if (d.is_zero) throw std::domain_error("rayleigh: zero denominator");
  const GagliardoResult eu = gagliardo(u, spec.s, spec.p);
  const GagliardoResult ev = gagliardo(v, spec.t, spec.p);
  const double log_num =
      log_add(eu.energy.log_value, ev.energy.log_value) - std::log(spec.p);
  RayleighValue r;
  r.log_q = log_num - d.log_value;
  r.q_root = std::exp(r.log_q / spec.p);
  return r;
}

namespace {

// Operator values and constraint weights entering the stationarity identity
// L u = lambda * W_u, L v = lambda * W_v (Dirac rows carry h^-N).
struct GradParts {
  SignedLogField lu, lv;
  std::vector<SignedLog> wu, wv;
};

GradParts grad_parts(const ProblemSpec& spec, const NonlocalContext& ctx_u,
                     const NonlocalContext& ctx_v, const ScalarField& u,
                     const ScalarField& v) {
  GradParts parts;
  parts.lu = frac_p_laplacian(ctx_u, u);
  parts.lv = frac_p_laplacian(ctx_v, v);
  const int m = u.size();
  parts.wu.assign(m, SignedLog::zero());
  parts.wv.assign(m, SignedLog::zero());

  const double a = spec.alpha();
  const double b = spec.beta();
  const double log_a = std::log(a);
  const double log_b = std::log(b);
  const DomainGrid& g = *spec.grid;
  const double log_hn = g.dim() * std::log(g.spacing());

  if (spec.variant == Variant::P2) {
    const double ux = u[spec.anchor0];
    const double vx = v[spec.anchor1];
    if (ux != 0.0 && vx != 0.0) {
      const double lu_abs = std::log(std::fabs(ux));
      const double lv_abs = std::log(std::fabs(vx));
      parts.wu[spec.anchor0] = {log_a + (a - 1.0) * lu_abs + b * lv_abs - log_hn,
                                ux > 0.0 ? 1 : -1};
      parts.wv[spec.anchor1] = {log_b + a * lu_abs + (b - 1.0) * lv_abs - log_hn,
                                vx > 0.0 ? 1 : -1};
    }
    return parts;
  }

  const int c = spec.coupling_node(v);
  const double vc = v[c];
  if (vc == 0.0) return parts;  // degenerate pair: no constraint weights
  const double log_vc = std::log(std::fabs(vc));
  LogSum mass;
  for (int k = 0; k < m; ++k) {
    if (u[k] == 0.0) continue;
    const double lu_abs = std::log(std::fabs(u[k]));
    mass.add(a * lu_abs + log_hn);
    parts.wu[k] = {log_a + (a - 1.0) * lu_abs + b * log_vc,
                   u[k] > 0.0 ? 1 : -1};
  }
  if (!mass.empty()) {
    parts.wv[c] = {log_b + (b - 1.0) * log_vc + mass.log_total() - log_hn,
                   vc > 0.0 ? 1 : -1};
  }
  return parts;
}

struct Gradient {
  std::vector<SignedLog> gu, gv;
  double residual = 0.0;  // max gap over max term magnitude
};

Gradient assemble_gradient(const GradParts& parts, double log_lambda) {
  const int m = static_cast<int>(parts.wu.size());
  Gradient grad;
  grad.gu.resize(m);
  grad.gv.resize(m);
  double max_gap = kNegInf;
  double max_term = kNegInf;
  auto row = [&](const SignedLogField& op, const std::vector<SignedLog>& w,
                 std::vector<SignedLog>& out, int k) {
    const SignedLog lk{op.log_abs[k], op.sign[k]};
    SignedLog wk = w[k];
    if (wk.sign != 0) wk.log_abs += log_lambda;
    out[k] = signed_sub(lk, wk);
    if (lk.sign != 0) max_term = std::max(max_term, lk.log_abs);
    if (wk.sign != 0) max_term = std::max(max_term, wk.log_abs);
    if (out[k].sign != 0) max_gap = std::max(max_gap, out[k].log_abs);
  };
  for (int k = 0; k < m; ++k) {
    row(parts.lu, parts.wu, grad.gu, k);
    row(parts.lv, parts.wv, grad.gv, k);
  }
  grad.residual =
      max_gap == kNegInf ? 0.0 : std::exp(max_gap - max_term);
  return grad;
}

// Energies/denominator of a candidate pair and the resulting normalized
// log Q, without mutating the candidate unless it is admissible.
struct EvalResult {
  double log_c;          // common normalize factor
  double log_a, log_b;   // rebalance factors on top of it
  double log_q;
};

std::optional<EvalResult> eval_candidate(const ProblemSpec& spec,
                                         const NonlocalContext& ctx_u,
                                         const NonlocalContext& ctx_v,
                                         const ScalarField& u,
                                         const ScalarField& v) {
  const LogValue d = denominator(spec, u, v);
  if (d.is_zero) return std::nullopt;
  const GagliardoResult eu = gagliardo(ctx_u, u);
  const GagliardoResult ev = gagliardo(ctx_v, v);
  if (eu.energy.is_zero || ev.energy.is_zero) return std::nullopt;
  EvalResult r;
  r.log_c = -d.log_value / spec.p;
  const double log_eu = eu.energy.log_value + spec.p * r.log_c;
  const double log_ev = ev.energy.log_value + spec.p * r.log_c;
  const auto [la, lb] =
      rebalance_factors(log_eu, log_ev, spec.alpha(), spec.beta(), spec.p);
  r.log_a = la;
  r.log_b = lb;
  // After the optimal split the numerator (with the 1/p) equals mu.
  r.log_q = (spec.alpha() * (log_eu - std::log(spec.alpha())) +
             spec.beta() * (log_ev - std::log(spec.beta()))) /
            spec.p;
  return r;
}

double deterministic_uniform(std::uint64_t& state) {
  // splitmix64; fixed mapping to (0,1) so seeds reproduce across platforms
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

double weak_residual(const ProblemSpec& spec, const ScalarField& u,
                     const ScalarField& v, const LogValue& lambda) {
  if (lambda.is_zero) throw std::invalid_argument("lambda: must be positive");
  const NonlocalContext ctx_u(spec.grid, spec.s, spec.p);
  const NonlocalContext ctx_v(spec.grid, spec.t, spec.p);
  const GradParts parts = grad_parts(spec, ctx_u, ctx_v, u, v);
  return assemble_gradient(parts, lambda.log_value).residual;
}

double weak_residual(const ProblemSpec& spec, const EigenPair& pair) {
  return weak_residual(spec, pair.u, pair.v, pair.lambda);
}

EigenPair solve(const ProblemSpec& spec, const SolveOptions& opts,
                const ScalarField* u0, const ScalarField* v0) {
  spec.validate();
  if (!(opts.step > 0.0) || !(opts.tol > 0.0) || opts.max_iter < 1) {
    throw std::invalid_argument("solve options: step, tol, max_iter");
  }
  const NonlocalContext ctx_u(spec.grid, spec.s, spec.p);
  const NonlocalContext ctx_v(spec.grid, spec.t, spec.p);
  const int m = spec.grid->interior_count();

  ScalarField u, v;
  switch (opts.init) {
    case InitKind::Given: {
      if (!u0 || !v0) throw std::invalid_argument("solve: missing given pair");
      u = *u0;
      v = *v0;
      break;
    }
    case InitKind::Cones: {
      u = cone_field(spec.grid, spec.cone_apex_u(), spec.s, 1.0);
      v = cone_field(spec.grid, spec.cone_apex_v(), spec.t, 1.0);
      break;
    }
    case InitKind::Random: {
      std::uint64_t state = opts.seed;
      u = ScalarField(spec.grid);
      v = ScalarField(spec.grid);
      for (int k = 0; k < m; ++k) {
        u[k] = 0.25 + 0.75 * deterministic_uniform(state);
      }
      for (int k = 0; k < m; ++k) {
        v[k] = 0.25 + 0.75 * deterministic_uniform(state);
      }
      break;
    }
  }

  const auto init_eval = eval_candidate(spec, ctx_u, ctx_v, u, v);
  if (!init_eval) throw std::domain_error("solve: degenerate initial pair");
  u.scale_log(init_eval->log_c + init_eval->log_a);
  v.scale_log(init_eval->log_c + init_eval->log_b);
  double log_q = init_eval->log_q;

  EigenPair out;
  out.log_q_trace.push_back(log_q);

  constexpr double kEtaFloor = 1e-12;
  // Stationarity level accompanying the decrement-based stops: once accepted
  // decrements fall under tol, the gradient residual only has to reach the
  // square root of tol (the noise floor of the log-domain assembly sits well
  // below it, but far above tol itself).
  const double res_ok = std::sqrt(opts.tol);
  double eta = opts.step;
  int floor_rejects = 0;
  bool stopped_converged = false;
  int iter = 0;
  double last_delta = std::numeric_limits<double>::infinity();

  while (iter < opts.max_iter) {
    ++iter;
    const GradParts parts = grad_parts(spec, ctx_u, ctx_v, u, v);
    const Gradient grad = assemble_gradient(parts, log_q);
    // Both stops are evaluated at the current iterate, the same point the
    // final classification sees: either outright stationarity, or the last
    // accepted decrement fell under tol while the residual here is small.
    if (grad.residual <= opts.tol ||
        (last_delta < opts.tol && grad.residual <= res_ok)) {
      stopped_converged = true;
      break;
    }

    // Per-field normalized descent step, relative to each field's scale.
    double gu_max = kNegInf, gv_max = kNegInf;
    for (int k = 0; k < m; ++k) {
      if (grad.gu[k].sign != 0) gu_max = std::max(gu_max, grad.gu[k].log_abs);
      if (grad.gv[k].sign != 0) gv_max = std::max(gv_max, grad.gv[k].log_abs);
    }
    ScalarField nu = u, nv = v;
    // Direction sign(g) |g / g_max|^{1/(p-1)}: a positive diagonal rescaling
    // of the gradient (still a descent direction) that undoes the p-power
    // spread of the entry magnitudes; without it the sup-normalized gradient
    // concentrates on a few nodes and the line search stalls for large p.
    const double inv_pm1 = 1.0 / (spec.p - 1.0);
    auto step_field = [&](ScalarField& f, const std::vector<SignedLog>& gf,
                          double gf_max) {
      if (gf_max == kNegInf) return;
      const double scale = eta * f.sup_norm();
      for (int k = 0; k < m; ++k) {
        if (gf[k].sign == 0) continue;
        f[k] -= scale * gf[k].sign *
                std::exp((gf[k].log_abs - gf_max) * inv_pm1);
        if (opts.positivity && f[k] < 0.0) f[k] = 0.0;
      }
    };
    step_field(nu, grad.gu, gu_max);
    step_field(nv, grad.gv, gv_max);

    const auto cand = eval_candidate(spec, ctx_u, ctx_v, nu, nv);
    const bool accept = cand && cand->log_q <= log_q;
    const double delta = cand ? log_q - cand->log_q : kNegInf;

    if (accept) {
      nu.scale_log(cand->log_c + cand->log_a);
      nv.scale_log(cand->log_c + cand->log_b);
      u = std::move(nu);
      v = std::move(nv);
      log_q = cand->log_q;
      out.log_q_trace.push_back(log_q);
      floor_rejects = 0;
      eta = std::min(eta * 1.25, opts.step);
      last_delta = delta;
    } else {
      if (cand && std::fabs(delta) < opts.tol && grad.residual <= res_ok) {
        stopped_converged = true;  // pinned at the bottom within tol
        break;
      }
      if (eta <= kEtaFloor) {
        if (++floor_rejects >= 20) {
          // Repeated rejections at the step floor: a flat landscape (every
          // proposal valid, changes below precision) is a stall, not a
          // blow-up; the final weak residual settles the classification.
          const bool flat = cand && std::fabs(delta) < 1e-6;
          if (flat) {
            stopped_converged = true;
          } else {
            out.diverged = true;
          }
          break;
        }
      } else {
        floor_rejects = 0;
      }
      eta = std::max(eta * 0.5, kEtaFloor);
    }
  }

  out.iterations = iter;
  out.final_step = eta;
  out.u = std::move(u);
  out.v = std::move(v);

  const GagliardoResult eu = gagliardo(ctx_u, out.u);
  const GagliardoResult ev = gagliardo(ctx_v, out.v);
  out.denom = denominator(spec, out.u, out.v);
  if (out.denom.is_zero || eu.energy.is_zero || ev.energy.is_zero) {
    throw std::domain_error("solve: degenerate final pair");
  }
  const double log_p = std::log(spec.p);
  out.numerator_u = LogValue::from_log(eu.energy.log_value - log_p);
  out.numerator_v = LogValue::from_log(ev.energy.log_value - log_p);
  out.lambda = LogValue::from_log(
      log_add(eu.energy.log_value, ev.energy.log_value) - log_p -
      out.denom.log_value);
  out.lambda_root = std::exp(out.lambda.log_value / spec.p);
  out.weak_residual = weak_residual(spec, out.u, out.v, out.lambda);
  out.converged =
      stopped_converged && out.weak_residual <= std::sqrt(opts.tol);
  return out;
}

}  // namespace fpl
