#include "core/viscosity.hpp"

#include <cmath>
#include <stdexcept>

#include "core/nonlocal.hpp"

namespace fpl {

const char* sign_convention_name(SignConvention c) {
  return c == SignConvention::Minus ? "minus" : "plus";
}

namespace {

// Interior nodes deeper than layer_k cells, minus the excluded node.
std::vector<int> evaluation_set(const DomainGrid& g, int layer_k,
                                int excluded) {
  if (layer_k < 0) throw std::invalid_argument("layer_k: must be >= 0");
  std::vector<int> nodes;
  const double depth = layer_k * g.spacing();
  for (int k = 0; k < g.interior_count(); ++k) {
    if (k == excluded) continue;
    if (g.interior_distance(k) > depth) nodes.push_back(k);
  }
  if (nodes.empty()) throw std::invalid_argument("layer_k: empty evaluation set");
  return nodes;
}

}  // namespace

ResidualReport residual_v(const ScalarField& v, int source_node, double t,
                          int layer_k) {
  if (source_node < 0 || source_node >= v.size()) {
    throw std::invalid_argument("source_node: out of range");
  }
  if (v.sup_norm() == 0.0) {
    throw std::invalid_argument("v: must be nonzero");
  }
  ResidualReport rep;
  rep.field_id = 'v';
  rep.layer_k = layer_k;
  rep.nodes = evaluation_set(v.grid(), layer_k, source_node);
  rep.residual.reserve(rep.nodes.size());
  for (int k : rep.nodes) {
    const double r = infinity_laplacian(v, t, k);
    rep.residual.push_back(r);
    rep.sup_norm = std::max(rep.sup_norm, std::fabs(r));
  }
  return rep;
}

ResidualReport residual_u(const ScalarField& u, double v_anchor_value,
                          double s, double theta, double lambda_inf,
                          int layer_k, SignConvention sign, int anchor_node) {
  if (!(lambda_inf > 0.0)) {
    throw std::invalid_argument("lambda_inf: must be positive");
  }
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw std::invalid_argument("theta: must lie in (0,1)");
  }
  if (u.min_value() < -1e-12) {
    throw std::invalid_argument("u: negative values beyond -1e-12");
  }
  if (!(v_anchor_value >= 0.0)) {
    throw std::invalid_argument("v_anchor_value: must be nonnegative");
  }
  ResidualReport rep;
  rep.field_id = 'u';
  rep.sign = sign;
  rep.layer_k = layer_k;
  rep.nodes = evaluation_set(u.grid(), layer_k, anchor_node);
  rep.residual.reserve(rep.nodes.size());
  const double vpow = std::pow(v_anchor_value, 1.0 - theta);
  for (int k : rep.nodes) {
    const double plus = infinity_laplacian_plus(u, s, k);
    const double minus = infinity_laplacian_minus(u, s, k);
    const double uval = u[k] > 0.0 ? u[k] : 0.0;
    const double zeroth = lambda_inf * std::pow(uval, theta) * vpow;
    const double branch =
        sign == SignConvention::Minus ? minus - zeroth : minus + zeroth;
    const double r = std::max(plus + minus, branch);
    rep.residual.push_back(r);
    rep.sup_norm = std::max(rep.sup_norm, std::fabs(r));
  }
  return rep;
}

}  // namespace fpl
