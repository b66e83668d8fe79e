#include "core/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fpl {

ScalarField::ScalarField(std::shared_ptr<const DomainGrid> grid)
    : grid_(std::move(grid)), values_(grid_->interior_count(), 0.0) {}

ScalarField::ScalarField(std::shared_ptr<const DomainGrid> grid,
                         std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->interior_count()) {
    throw std::invalid_argument("field: value count != interior node count");
  }
  check_finite("field");
}

void ScalarField::set(int k, double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("field: non-finite value");
  values_[k] = v;
}

void ScalarField::fill(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("field: non-finite value");
  for (double& x : values_) x = v;
}

void ScalarField::scale(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("field: non-finite scale");
  for (double& x : values_) x *= c;
}

void ScalarField::scale_log(double log_c) {
  scale(std::exp(log_c));
}

double ScalarField::sup_norm() const {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::fabs(x));
  return m;
}

double ScalarField::min_value() const {
  double m = values_.empty() ? 0.0 : values_[0];
  for (double x : values_) m = std::min(m, x);
  return m;
}

int ScalarField::argmax() const {
  int best = 0;
  for (int k = 1; k < size(); ++k) {
    if (values_[k] > values_[best]) best = k;
  }
  return best;
}

ScalarField cone_field(std::shared_ptr<const DomainGrid> grid, int apex,
                       double exponent, double prefactor) {
  if (apex < 0 || apex >= grid->interior_count()) {
    throw std::invalid_argument("apex: not an interior node index");
  }
  const DomainGrid& g = *grid;
  const double r0 = g.inradius();
  const auto& c = g.interior_coord(apex);
  ScalarField f(grid);
  for (int k = 0; k < f.size(); ++k) {
    const auto& q = g.interior_coord(k);
    const double r = r0 - std::hypot(q[0] - c[0], q[1] - c[1]);
    if (r > 0.0) f[k] = prefactor * std::pow(r, exponent);
  }
  return f;
}

void ScalarField::check_finite(const char* what) const {
  for (double x : values_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
  }
}

}  // namespace fpl
