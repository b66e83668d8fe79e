#pragma once

#include <memory>
#include <vector>

#include "core/domain.hpp"
#include "core/logsum.hpp"

namespace fpl {

// Grid function: one finite value per interior node, zero on the exterior
// by construction of the discretization.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(std::shared_ptr<const DomainGrid> grid);
  ScalarField(std::shared_ptr<const DomainGrid> grid,
              std::vector<double> values);

  const std::shared_ptr<const DomainGrid>& grid_ptr() const { return grid_; }
  const DomainGrid& grid() const { return *grid_; }
  bool empty() const { return grid_ == nullptr; }
  int size() const { return static_cast<int>(values_.size()); }

  double operator[](int k) const { return values_[k]; }
  double& operator[](int k) { return values_[k]; }
  const std::vector<double>& values() const { return values_; }

  void set(int k, double v);
  void fill(double v);
  void scale(double c);
  void scale_log(double log_c);  // multiply by exp(log_c)

  double sup_norm() const;   // max |v_k|
  double min_value() const;
  int argmax() const;        // lowest index attaining max v_k

  void check_finite(const char* what) const;

 private:
  std::shared_ptr<const DomainGrid> grid_;
  std::vector<double> values_;
};

// prefactor * (R - |x - apex|)_+^exponent with R the grid inradius; the
// extremal cone profile used for solver seeds and the limit identities.
ScalarField cone_field(std::shared_ptr<const DomainGrid> grid, int apex,
                       double exponent, double prefactor);

// Node-wise sign * exp(log_abs); the natural output format for the
// p-homogeneous operators whose values overflow doubles for large p.
struct SignedLogField {
  std::shared_ptr<const DomainGrid> grid;
  std::vector<double> log_abs;
  std::vector<int> sign;

  int size() const { return static_cast<int>(log_abs.size()); }
  double value(int k) const {
    return sign[k] == 0 ? 0.0 : sign[k] * std::exp(log_abs[k]);
  }
};

}  // namespace fpl
