#include "core/nonlocal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpl {

namespace {

void check_params(double sigma, double p) {
  if (!(sigma > 0.0) || !(sigma < 1.0)) {
    throw std::invalid_argument("sigma: must lie in (0,1)");
  }
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p: must be finite and > 1");
  }
}

}  // namespace

NonlocalContext::NonlocalContext(std::shared_ptr<const DomainGrid> grid,
                                 double sigma, double p)
    : grid_(std::move(grid)), sigma_(sigma), p_(p) {
  check_params(sigma, p);
  const DomainGrid& g = *grid_;
  const double sp = sigma_ * p_;
  const int m = g.interior_count();
  log_tail_.resize(m);
  if (g.dim() == 1) {
    const double a = g.bounds()[0];
    const double b = g.bounds()[2];
    for (int k = 0; k < m; ++k) {
      const double x = g.interior_coord(k)[0];
      log_tail_[k] =
          log_add(-sp * std::log(x - a), -sp * std::log(b - x)) - std::log(sp);
    }
  } else {
    const double np = g.dim() + sp;
    const double log_h2 = 2.0 * std::log(g.spacing());
    const auto& ext = g.exterior_coords();
    for (int k = 0; k < m; ++k) {
      const auto& q = g.interior_coord(k);
      LogSum acc;
      for (const auto& e : ext) {
        acc.add(-np * std::log(std::hypot(q[0] - e[0], q[1] - e[1])) + log_h2);
      }
      // Radial closure of the integral outside the collar-extended box.
      acc.add(std::log(2.0 * std::numbers::pi) -
              sp * std::log(g.farfield_radius(k)) - std::log(sp));
      log_tail_[k] = acc.log_total();
    }
  }
}

GagliardoResult gagliardo(const NonlocalContext& ctx, const ScalarField& u) {
  const DomainGrid& g = ctx.grid();
  if (&g != &u.grid()) throw std::invalid_argument("gagliardo: grid mismatch");
  const double p = ctx.p();
  const double np = g.dim() + ctx.sigma() * p;
  const double log_h = std::log(g.spacing());
  const double log_hn = g.dim() * log_h;
  const double log2 = std::numbers::ln2;
  const int m = g.interior_count();

  LogSum acc;
  for (int k = 0; k < m; ++k) {
    const double uk = u[k];
    for (int l = k + 1; l < m; ++l) {
      const double d = uk - u[l];
      if (d == 0.0) continue;
      acc.add(log2 + p * std::log(std::fabs(d)) -
              np * g.log_pair_distance(k, l) + 2.0 * log_hn);
    }
    if (uk != 0.0) {
      acc.add(log2 + p * std::log(std::fabs(uk)) + ctx.log_tail(k) + log_hn);
    }
  }

  GagliardoResult r;
  if (!acc.empty()) {
    r.energy = LogValue::from_log(acc.log_total());
    r.seminorm = std::exp(r.energy.log_value / p);
  }
  return r;
}

GagliardoResult gagliardo(const ScalarField& u, double sigma, double p) {
  return gagliardo(NonlocalContext(u.grid_ptr(), sigma, p), u);
}

double holder_seminorm(const ScalarField& u, double sigma) {
  if (!(sigma > 0.0) || !(sigma < 1.0)) {
    throw std::invalid_argument("sigma: must lie in (0,1)");
  }
  const DomainGrid& g = u.grid();
  const int m = g.interior_count();
  double best = 0.0;
  for (int k = 0; k < m; ++k) {
    for (int l = k + 1; l < m; ++l) {
      const double d = std::fabs(u[k] - u[l]);
      if (d == 0.0) continue;
      best = std::max(best, d * std::exp(-sigma * g.log_pair_distance(k, l)));
    }
    if (u[k] != 0.0) {
      best = std::max(best,
                      std::fabs(u[k]) / std::pow(g.interior_distance(k), sigma));
    }
  }
  return best;
}

SignedLogField frac_p_laplacian(const NonlocalContext& ctx,
                                const ScalarField& u) {
  const DomainGrid& g = ctx.grid();
  if (&g != &u.grid()) {
    throw std::invalid_argument("frac_p_laplacian: grid mismatch");
  }
  const double p = ctx.p();
  const double np = g.dim() + ctx.sigma() * p;
  const double log_hn = g.dim() * std::log(g.spacing());
  const int m = g.interior_count();

  SignedLogField out;
  out.grid = u.grid_ptr();
  out.log_abs.resize(m);
  out.sign.resize(m);
  for (int k = 0; k < m; ++k) {
    const double uk = u[k];
    LogSum pos, neg;
    for (int l = 0; l < m; ++l) {
      if (l == k) continue;
      const double d = uk - u[l];
      if (d == 0.0) continue;
      const double lt = (p - 1.0) * std::log(std::fabs(d)) -
                        np * g.log_pair_distance(k, l) + log_hn;
      (d > 0.0 ? pos : neg).add(lt);
    }
    if (uk != 0.0) {
      const double lt = (p - 1.0) * std::log(std::fabs(uk)) + ctx.log_tail(k);
      (uk > 0.0 ? pos : neg).add(lt);
    }
    SignedLog s = signed_diff(pos.log_total(), neg.log_total());
    s.log_abs += std::numbers::ln2;
    out.log_abs[k] = s.sign == 0 ? kNegInf : s.log_abs;
    out.sign[k] = s.sign;
  }
  return out;
}

SignedLogField frac_p_laplacian(const ScalarField& u, double sigma, double p) {
  return frac_p_laplacian(NonlocalContext(u.grid_ptr(), sigma, p), u);
}

namespace {

void check_node(const ScalarField& u, double sigma, int node) {
  if (!(sigma > 0.0) || !(sigma < 1.0)) {
    throw std::invalid_argument("sigma: must lie in (0,1)");
  }
  if (node < 0 || node >= u.size()) {
    throw std::invalid_argument("node: out of range");
  }
}

}  // namespace

double infinity_laplacian_plus(const ScalarField& u, double sigma, int node) {
  check_node(u, sigma, node);
  const DomainGrid& g = u.grid();
  const double uk = u[node];
  double best = -std::numeric_limits<double>::infinity();
  for (int l = 0; l < u.size(); ++l) {
    if (l == node) continue;
    best = std::max(best, (uk - u[l]) *
                              std::exp(-sigma * g.log_pair_distance(node, l)));
  }
  if (uk >= 0.0) {
    best = std::max(best, uk / std::pow(g.interior_distance(node), sigma));
  }
  return best;
}

double infinity_laplacian_minus(const ScalarField& u, double sigma, int node) {
  check_node(u, sigma, node);
  const DomainGrid& g = u.grid();
  const double uk = u[node];
  double best = std::numeric_limits<double>::infinity();
  for (int l = 0; l < u.size(); ++l) {
    if (l == node) continue;
    best = std::min(best, (uk - u[l]) *
                              std::exp(-sigma * g.log_pair_distance(node, l)));
  }
  if (uk <= 0.0) {
    best = std::min(best, uk / std::pow(g.interior_distance(node), sigma));
  }
  return best;
}

double infinity_laplacian(const ScalarField& u, double sigma, int node) {
  return infinity_laplacian_plus(u, sigma, node) +
         infinity_laplacian_minus(u, sigma, node);
}

}  // namespace fpl
