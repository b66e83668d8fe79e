#pragma once

// Independent reference implementations used to cross-check the library:
// plain-double nested-loop energies with analytic 1D tails, brute-force
// Holder quotients, and a derivative-free coordinate-search minimizer of
// the Rayleigh quotient. Deliberately naive arithmetic throughout; any
// agreement with the log-domain library paths is evidence, not tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "core/eigensolver.hpp"
#include "core/field.hpp"

namespace testsupport {

// Fixed bit transform so random sequences do not depend on the standard
// library's distribution implementation.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline fpl::ScalarField random_field(std::shared_ptr<const fpl::DomainGrid> g,
                                     std::mt19937_64& rng, double lo,
                                     double hi) {
  fpl::ScalarField f(std::move(g));
  for (int k = 0; k < f.size(); ++k) {
    f[k] = lo + (hi - lo) * uniform01(rng);
  }
  return f;
}

// Analytic exterior tail over the complement of a 1D interval (a, b):
// integral of |x - y|^-(1 + sigma p) dy.
inline double tail_1d(double x, double a, double b, double sigma, double p) {
  const double sp = sigma * p;
  return (std::pow(x - a, -sp) + std::pow(b - x, -sp)) / sp;
}

// Plain-double Gagliardo p-energy on a 1D grid: every ordered interior pair
// plus both orderings of the interior/exterior tail term.
inline double naive_energy_1d(const fpl::ScalarField& u, double sigma,
                              double p) {
  const fpl::DomainGrid& g = u.grid();
  const double a = g.bounds()[0];
  const double b = g.bounds()[2];
  const double h = g.spacing();
  const int m = g.interior_count();
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    const double xk = g.interior_coord(k)[0];
    for (int l = 0; l < m; ++l) {
      if (l == k) continue;
      const double d = std::fabs(u[k] - u[l]);
      if (d == 0.0) continue;
      const double r = std::fabs(xk - g.interior_coord(l)[0]);
      total += std::pow(d, p) * std::pow(r, -(1.0 + sigma * p)) * h * h;
    }
    if (u[k] != 0.0) {
      total += 2.0 * std::pow(std::fabs(u[k]), p) * tail_1d(xk, a, b, sigma, p) * h;
    }
  }
  return total;
}

// Brute-force Holder seminorm: all interior pairs plus the exterior-zero
// candidate |u(x)| / d(x)^sigma.
inline double naive_holder(const fpl::ScalarField& u, double sigma) {
  const fpl::DomainGrid& g = u.grid();
  const int m = g.interior_count();
  double best = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto& xk = g.interior_coord(k);
    for (int l = k + 1; l < m; ++l) {
      const auto& xl = g.interior_coord(l);
      const double r = std::hypot(xk[0] - xl[0], xk[1] - xl[1]);
      best = std::max(best, std::fabs(u[k] - u[l]) / std::pow(r, sigma));
    }
    if (u[k] != 0.0) {
      best = std::max(
          best, std::fabs(u[k]) / std::pow(g.interior_distance(k), sigma));
    }
  }
  return best;
}

// Plain-double Rayleigh quotient for 1D problems (small p only).
inline double naive_q(const fpl::ProblemSpec& spec, const fpl::ScalarField& u,
                      const fpl::ScalarField& v) {
  const double eu = naive_energy_1d(u, spec.s, spec.p);
  const double ev = naive_energy_1d(v, spec.t, spec.p);
  const double alpha = spec.alpha();
  const double beta = spec.beta();
  const fpl::DomainGrid& g = *spec.grid;
  double denom = 0.0;
  if (spec.variant == fpl::Variant::P2) {
    denom = std::pow(std::fabs(u[spec.anchor0]), alpha) *
            std::pow(std::fabs(v[spec.anchor1]), beta);
  } else {
    double mass = 0.0;
    for (int k = 0; k < u.size(); ++k) {
      mass += std::pow(std::fabs(u[k]), alpha) * g.spacing();
    }
    const int node = spec.variant == fpl::Variant::P1 ? spec.anchor0
                                                      : v.argmax();
    denom = mass * std::pow(std::fabs(v[node]), beta);
  }
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return (eu + ev) / (spec.p * denom);
}

// Derivative-free cyclic coordinate search on the raw (unnormalized)
// quotient; the separate-scaling freedom is part of the search space, so
// the unconstrained infimum matches the constrained minimum. Returns
// Q^(1/p) at the best point found.
inline double coordinate_search_root(const fpl::ProblemSpec& spec,
                                     fpl::ScalarField u, fpl::ScalarField v,
                                     int max_cycles = 4000,
                                     double step_floor = 1e-7) {
  double q = naive_q(spec, u, v);
  double step = 0.25;
  for (int cycle = 0; cycle < max_cycles && step >= step_floor; ++cycle) {
    bool improved = false;
    for (int which = 0; which < 2; ++which) {
      fpl::ScalarField& f = which == 0 ? u : v;
      const double scale = step * std::max(f.sup_norm(), 1e-30);
      for (int k = 0; k < f.size(); ++k) {
        const double saved = f[k];
        for (const double dir : {1.0, -1.0}) {
          double trial = saved + dir * scale;
          if (trial < 0.0) trial = 0.0;  // principal pair is nonnegative
          if (trial == saved) continue;
          f[k] = trial;
          const double qt = naive_q(spec, u, v);
          if (qt < q) {
            q = qt;
            improved = true;
            break;
          }
          f[k] = saved;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return std::pow(q, 1.0 / spec.p);
}

}  // namespace testsupport
