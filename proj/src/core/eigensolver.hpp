#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "core/nonlocal.hpp"

namespace fpl {

// Coupling through the denominator:
//   P1    (integral |u|^alpha) * |v(x0)|^beta
//   P1Max (integral |u|^alpha) * (sup |v|)^beta, sup taken fresh each use
//   P2    |u(x1)|^alpha * |v(x2)|^beta
enum class Variant { P1, P1Max, P2 };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct ProblemSpec {
  std::shared_ptr<const DomainGrid> grid;
  Variant variant = Variant::P1;
  double s = 0.5;
  double t = 0.5;
  double theta = 0.5;
  double p = 0.0;
  int anchor0 = -1;  // x0 for P1, x1 for P2; ignored for P1Max
  int anchor1 = -1;  // x2 for P2
  // Exponent split alpha(p); beta(p) = p - alpha(p). Defaults to theta * p.
  std::function<double(double)> alpha_rule;

  double alpha() const;
  double beta() const;
  ProblemSpec with_p(double new_p) const;
  void validate() const;  // throws std::invalid_argument naming the field

  // The node whose v-value enters the denominator: x0, argmax of v, or x2.
  int coupling_node(const ScalarField& v) const;
  int cone_apex_u() const;  // anchor, or the deepest node when dynamic
  int cone_apex_v() const;
};

struct RayleighValue {
  double log_q = 0.0;
  double q_root = 0.0;  // exp(log_q / p)
};

LogValue denominator(const ProblemSpec& spec, const ScalarField& u,
                     const ScalarField& v);

// Scale both fields by the same factor so the denominator becomes 1.
// Throws std::domain_error on a zero denominator.
void normalize(const ProblemSpec& spec, ScalarField& u, ScalarField& v);

// Optimal split (a,b) with a^alpha b^beta = 1 minimizing
// (a^p A + b^p B) / p for A = [u]^p, B = [v]^p:
//   a^p = mu alpha / A,  b^p = mu beta / B,
//   mu = (A/alpha)^(alpha/p) (B/beta)^(beta/p),
// after which the numerator equals mu. Throws std::domain_error if either
// energy is zero.
void rebalance(const ProblemSpec& spec, ScalarField& u, ScalarField& v);
std::pair<double, double> rebalance_factors(double log_energy_u,
                                            double log_energy_v, double alpha,
                                            double beta, double p);

// Q = [(1/p)[u]^p_{s,p} + (1/p)[v]^p_{t,p}] / denominator, in log form.
// Throws std::domain_error on a zero denominator.
RayleighValue rayleigh(const ProblemSpec& spec, const ScalarField& u,
                       const ScalarField& v);

enum class InitKind { Cones, Random, Given };

struct SolveOptions {
  double step = 0.25;      // relative to each field's sup norm
  int max_iter = 5000;
  double tol = 1e-8;       // on accepted log Q decrements
  bool positivity = true;  // clamp iterates at zero
  InitKind init = InitKind::Cones;
  std::uint64_t seed = 0x5eedULL;
};

struct EigenPair {
  ScalarField u, v;
  LogValue lambda;             // Rayleigh value at the final pair
  double lambda_root = 0.0;    // exp(log lambda / p)
  LogValue numerator_u, numerator_v;  // the two (1/p)[.]^p parts
  LogValue denom;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
  double weak_residual = 0.0;
  double final_step = 0.0;
  std::vector<double> log_q_trace;  // log Q after each accepted step
};

// Projected gradient descent on the Rayleigh quotient with backtracking,
// renormalizing (normalize + rebalance) after every accepted step.
EigenPair solve(const ProblemSpec& spec, const SolveOptions& opts = {},
                const ScalarField* u0 = nullptr,
                const ScalarField* v0 = nullptr);

// Relative sup norm of the discrete Euler-Lagrange gap at (u, v, lambda):
// max over nodes of |L u - lambda dD/du| (and the v side, with the Dirac
// rows carrying the h^-N weight), divided by the largest term magnitude.
double weak_residual(const ProblemSpec& spec, const ScalarField& u,
                     const ScalarField& v, const LogValue& lambda);
double weak_residual(const ProblemSpec& spec, const EigenPair& pair);

}  // namespace fpl
