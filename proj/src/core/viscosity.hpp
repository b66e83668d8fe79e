#pragma once

#include <vector>

#include "core/field.hpp"

namespace fpl {

// The limit equation for u couples the one-sided quotient to the eigenvalue
// term through either sign of the zeroth-order part; both published
// conventions are evaluated side by side.
enum class SignConvention { Minus, Plus };

const char* sign_convention_name(SignConvention c);

struct ResidualReport {
  char field_id = 'u';
  SignConvention sign = SignConvention::Minus;
  int layer_k = 0;
  std::vector<int> nodes;        // evaluation set (interior indices)
  std::vector<double> residual;  // aligned with nodes
  double sup_norm = 0.0;
};

// Pointwise residual of max{ L+v + L-v, L-v } ... for the v equation the
// limit PDE away from the source node is the Holder infinity Laplacian
// itself: residual(x) = (L+ + L-) v(x). Evaluated on interior nodes with
// d(x) > layer_k * h, excluding the source node.
ResidualReport residual_v(const ScalarField& v, int source_node, double t,
                          int layer_k);

// Residual of the u limit equation
//   max{ (L+ + L-) u,  L- u -/+ lambda_inf * u^theta * v_anchor^(1-theta) }
// with the convention choosing the sign in front of the eigenvalue term.
// Requires u >= 0 (up to -1e-12) and lambda_inf > 0.
ResidualReport residual_u(const ScalarField& u, double v_anchor_value,
                          double s, double theta, double lambda_inf,
                          int layer_k, SignConvention sign, int anchor_node);

}  // namespace fpl
