#pragma once

#include "core/field.hpp"

namespace fpl {

struct GagliardoResult {
  LogValue energy;      // log of the p-th power energy
  double seminorm = 0;  // energy^(1/p)
};

// Per-(grid, sigma, p) kernel data: the log of the exterior tail integral
// T(x) = \int_{complement} |x-y|^{-(N+sigma p)} dy at every interior node.
// In 1D the tail is analytic; in 2D it is the explicit sum over exterior
// nodes plus a radial far-field closure outside the collar-extended box.
class NonlocalContext {
 public:
  NonlocalContext(std::shared_ptr<const DomainGrid> grid, double sigma,
                  double p);

  const DomainGrid& grid() const { return *grid_; }
  const std::shared_ptr<const DomainGrid>& grid_ptr() const { return grid_; }
  double sigma() const { return sigma_; }
  double p() const { return p_; }
  double log_tail(int k) const { return log_tail_[k]; }

 private:
  std::shared_ptr<const DomainGrid> grid_;
  double sigma_;
  double p_;
  std::vector<double> log_tail_;
};

// Discrete Gagliardo energy of the zero extension,
//   [u]^p = sum_{k != l} |u_k - u_l|^p |x_k - x_l|^{-(N+sigma p)} h^{2N}
//         + 2 sum_k |u_k|^p T(x_k) h^N,
// accumulated in log space. The factor 2 on the tail accounts for both
// orderings of the interior/exterior pair, matching the double integral and
// the gradient identity used by frac_p_laplacian.
GagliardoResult gagliardo(const NonlocalContext& ctx, const ScalarField& u);
GagliardoResult gagliardo(const ScalarField& u, double sigma, double p);

// sup |u(x)-u(y)| / |x-y|^sigma over interior pairs together with the
// boundary candidates |u(x)| / d(x)^sigma against the exterior zeros.
double holder_seminorm(const ScalarField& u, double sigma);

// (L u)(x_k) = 2 [ sum_{l != k} |u_k-u_l|^{p-2}(u_k-u_l) |x_k-x_l|^{-(N+sigma p)} h^N
//                + |u_k|^{p-2} u_k T(x_k) ],
// the nodewise gradient of (1/p)[u]^p scaled by h^{-N}.
SignedLogField frac_p_laplacian(const NonlocalContext& ctx,
                                const ScalarField& u);
SignedLogField frac_p_laplacian(const ScalarField& u, double sigma, double p);

// Extremal Holder quotients at one interior node,
//   L+ u(x) = sup_y (u(x)-u(y)) / |x-y|^sigma,
//   L- u(x) = inf_y (u(x)-u(y)) / |x-y|^sigma,
// over interior nodes plus the exterior candidate u(x)/d(x)^sigma (admissible
// for L+ when u(x) >= 0 and for L- when u(x) <= 0).
double infinity_laplacian_plus(const ScalarField& u, double sigma, int node);
double infinity_laplacian_minus(const ScalarField& u, double sigma, int node);
// L+ + L-.
double infinity_laplacian(const ScalarField& u, double sigma, int node);

}  // namespace fpl
