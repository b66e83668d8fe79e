#pragma once

#include <string>
#include <vector>

#include "core/eigensolver.hpp"

namespace fpl {

// Closed-form limit eigenvalue R^-(s theta + (1-theta) t).
double lambda_infinity(double s, double t, double theta, double R);

// Extremal cone pair: u = R^((theta-1)t - s theta) (R - |x-apex_u|)_+^s and
// v with exponent t, R the grid inradius. The prefactor makes the pair sit
// exactly on the limit constraint sup|u|^theta |v(apex_u...)|^(1-theta) = 1
// when both apexes realize the inradius.
std::pair<ScalarField, ScalarField> cone_pair(
    std::shared_ptr<const DomainGrid> grid, int apex_u, int apex_v, double s,
    double t, double theta);

// The limit Rayleigh quotient max(|u|_s, |v|_t) over the variant's natural
// sup-norm coupling (sup|u|^theta |v(x0)|^(1-theta) etc.). Returns +inf when
// the coupling vanishes.
double holder_quotient(const ProblemSpec& spec, const ScalarField& u,
                       const ScalarField& v);

// Q^(1/p) penalized by the constraint indicator: +inf unless the pair sits
// on the normalization manifold |log D| <= 1e-9.
double constrained_root(const ProblemSpec& spec, const ScalarField& u,
                        const ScalarField& v);

struct SweepRecord {
  double p = 0.0;
  double lambda_root = 0.0;
  double log_lambda = 0.0;
  double holder_u = 0.0;
  double holder_v = 0.0;
  double s_infty_norm = 0.0;  // sup-norm coupling of the pair (diagnostic)
  double constraint = 0.0;    // denominator value, 1 after normalization
  int argmax_u = -1;
  int argmax_v = -1;
  int iterations = 0;
  bool converged = false;
  double weak_residual = 0.0;
  double cone_log_q = 0.0;  // Rayleigh value of the cone pair at this p
  double cone_q_root = 0.0;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double gap = 0.0;
  std::string detail;
};

struct SweepReport {
  ProblemSpec spec;  // template; per-record p varies
  double limit = 0.0;
  std::vector<SweepRecord> records;
  std::vector<EigenPair> pairs;  // aligned with records
  std::vector<CheckResult> checks;
};

struct CheckOptions {
  double limit_tol = 0.15;
  double constraint_tol = 1e-9;
  double bound_tol = 0.05;
};

// Solve along an increasing p list, warm-starting each solve from the
// previous pair renormalized under the new exponents.
SweepReport sweep(const ProblemSpec& spec_template,
                  const std::vector<double>& p_list,
                  const SolveOptions& opts = {});

// Automated limit checks over the converged records of a sweep:
//   final_pair_constraint   nonnegativity + |D - 1| <= constraint_tol
//   lambda_root_limit       |lambda_root - limit| <= limit_tol, error
//                           non-increasing over the last 3 records
//   holder_limit            |max(holder_u, holder_v) - limit| <= limit_tol
//   cone_upper_bound        log Lambda_1(p) <= cone Rayleigh value, all p
//   maxima_movement         (P2) argmax moved <= 2h between last 2 records
//   distance_cone_bound     (P2, s = t) u, v <= (d/R)^s + bound_tol nodewise
// Throws std::invalid_argument with fewer than 3 converged records.
std::vector<CheckResult> limit_checks(const SweepReport& report,
                                      const CheckOptions& opts = {});

}  // namespace fpl
