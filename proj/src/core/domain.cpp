#include "core/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/logsum.hpp"

namespace fpl {

const char* mask_rule_name(MaskRule rule) {
  switch (rule) {
    case MaskRule::Interval: return "interval";
    case MaskRule::Rectangle: return "rectangle";
    case MaskRule::Disc: return "disc";
  }
  return "?";
}

MaskRule mask_rule_from_name(const std::string& name) {
  if (name == "interval") return MaskRule::Interval;
  if (name == "rectangle") return MaskRule::Rectangle;
  if (name == "disc") return MaskRule::Disc;
  throw std::invalid_argument("mask_rule: unknown name '" + name + "'");
}

namespace {

int resolve_collar_layers(double collar_width, double h) {
  if (collar_width == 0.0) return 4;  // default 4h
  if (!std::isfinite(collar_width) || collar_width < 2.0 * h - 1e-12 * h) {
    throw std::invalid_argument("collar_width: must be at least 2h");
  }
  return static_cast<int>(std::lround(collar_width / h));
}

void check_bounds_1d(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("bounds: must be finite");
  }
  if (!(a < b)) throw std::invalid_argument("bounds: need a < b");
}

}  // namespace

std::shared_ptr<const DomainGrid> DomainGrid::interval(double a, double b,
                                                       int n,
                                                       double collar_width) {
  check_bounds_1d(a, b);
  if (n < 8) throw std::invalid_argument("n: need at least 8 cells per axis");
  auto g = std::shared_ptr<DomainGrid>(new DomainGrid());
  g->dim_ = 1;
  g->n_ = n;
  g->h_ = (b - a) / n;
  g->mask_ = MaskRule::Interval;
  g->bounds_ = {a, 0.0, b, 0.0};
  g->collar_layers_ = resolve_collar_layers(collar_width, g->h_);
  g->finalize();
  return g;
}

std::shared_ptr<const DomainGrid> DomainGrid::box2d(
    const std::array<double, 4>& bounds, int n_per_axis, MaskRule rule,
    double collar_width) {
  check_bounds_1d(bounds[0], bounds[2]);
  check_bounds_1d(bounds[1], bounds[3]);
  if (n_per_axis < 8) {
    throw std::invalid_argument("n: need at least 8 cells per axis");
  }
  if (rule == MaskRule::Interval) {
    throw std::invalid_argument("mask_rule: interval mask needs a 1D grid");
  }
  const double wx = bounds[2] - bounds[0];
  const double wy = bounds[3] - bounds[1];
  if (std::fabs(wx - wy) > 1e-12 * std::max(wx, wy)) {
    // One spacing per grid; anisotropic boxes would need per-axis h.
    throw std::invalid_argument("bounds: box must be square (uniform h)");
  }
  auto g = std::shared_ptr<DomainGrid>(new DomainGrid());
  g->dim_ = 2;
  g->n_ = n_per_axis;
  g->h_ = wx / n_per_axis;
  g->mask_ = rule;
  g->bounds_ = bounds;
  g->center_ = {0.5 * (bounds[0] + bounds[2]), 0.5 * (bounds[1] + bounds[3])};
  g->disc_radius_ = 0.5 * wx;
  g->collar_layers_ = resolve_collar_layers(collar_width, g->h_);
  g->finalize();
  return g;
}

void DomainGrid::finalize() {
  const int c = collar_layers_;
  const int per_axis = n_ + 2 * c;
  const double x0 = bounds_[0];
  const double y0 = bounds_[1];

  auto mask_distance = [&](double x, double y) {
    double d = 0.0;
    switch (mask_) {
      case MaskRule::Interval:
        d = std::min(x - bounds_[0], bounds_[2] - x);
        break;
      case MaskRule::Rectangle:
        d = std::min(std::min(x - bounds_[0], bounds_[2] - x),
                     std::min(y - bounds_[1], bounds_[3] - y));
        break;
      case MaskRule::Disc:
        d = disc_radius_ - std::hypot(x - center_[0], y - center_[1]);
        break;
    }
    return d;
  };

  const int rows = dim_ == 2 ? per_axis : 1;
  coords_.reserve(static_cast<size_t>(per_axis) * rows);
  distance_.values.reserve(coords_.capacity());
  for (int iy = 0; iy < rows; ++iy) {
    for (int ix = 0; ix < per_axis; ++ix) {
      const double x = x0 + (ix - c + 0.5) * h_;
      const double y = dim_ == 2 ? y0 + (iy - c + 0.5) * h_ : 0.0;
      coords_.push_back({x, y});
      lattice_.push_back({ix, iy});
      const double d = mask_distance(x, y);
      distance_.values.push_back(d > 0.0 ? d : 0.0);
    }
  }

  interior_of_node_.assign(coords_.size(), -1);
  for (int node = 0; node < node_count(); ++node) {
    if (distance_.values[node] > 0.0) {
      interior_of_node_[node] = static_cast<int>(interior_.size());
      interior_.push_back(node);
      interior_lattice_.push_back(lattice_[node]);
    } else {
      exterior_coords_.push_back(coords_[node]);
    }
  }
  if (interior_.empty()) throw std::invalid_argument("grid: no interior nodes");

  distance_.inradius = 0.0;
  for (int k = 0; k < interior_count(); ++k) {
    const double d = interior_distance(k);
    if (d > distance_.inradius) {
      distance_.inradius = d;
      deepest_ = k;
    }
  }

  offset_stride_ = per_axis;
  if (dim_ == 1) {
    log_offset_.resize(per_axis + 1, kNegInf);
    for (int k = 1; k <= per_axis; ++k) log_offset_[k] = std::log(h_ * k);
  } else {
    log_offset_.assign(static_cast<size_t>(per_axis + 1) * (per_axis + 1),
                       kNegInf);
    for (int dy = 0; dy <= per_axis; ++dy) {
      for (int dx = 0; dx <= per_axis; ++dx) {
        if (dx == 0 && dy == 0) continue;
        log_offset_[static_cast<size_t>(dy) * (per_axis + 1) + dx] =
            std::log(h_ * std::hypot(static_cast<double>(dx),
                                     static_cast<double>(dy)));
      }
    }
  }
}

int DomainGrid::nearest_interior(const std::array<double, 2>& point) const {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < interior_count(); ++k) {
    const auto& q = interior_coord(k);
    const double dx = q[0] - point[0];
    const double dy = q[1] - point[1];
    const double d2 = dx * dx + dy * dy;
    // Strict improvement beyond a relative slack keeps ties at the lowest
    // index; the first node always seeds the search.
    if (best_d2 == std::numeric_limits<double>::infinity() ||
        d2 < best_d2 - 1e-15 * (1.0 + best_d2)) {
      best_d2 = d2;
      best = k;
    }
  }
  return best;
}

double DomainGrid::pair_distance(int k, int l) const {
  const auto& a = interior_lattice_[k];
  const auto& b = interior_lattice_[l];
  if (dim_ == 1) return h_ * std::abs(a[0] - b[0]);
  return h_ * std::hypot(static_cast<double>(a[0] - b[0]),
                         static_cast<double>(a[1] - b[1]));
}

double DomainGrid::log_pair_distance(int k, int l) const {
  const auto& a = interior_lattice_[k];
  const auto& b = interior_lattice_[l];
  const int dx = std::abs(a[0] - b[0]);
  if (dim_ == 1) return log_offset_[dx];
  const int dy = std::abs(a[1] - b[1]);
  return log_offset_[static_cast<size_t>(dy) * (offset_stride_ + 1) + dx];
}

double DomainGrid::farfield_radius(int k) const {
  const auto& q = interior_coord(k);
  const double cw = collar_width();
  double r = std::min(q[0] - (bounds_[0] - cw), (bounds_[2] + cw) - q[0]);
  if (dim_ == 2) {
    r = std::min(r, std::min(q[1] - (bounds_[1] - cw), (bounds_[3] + cw) - q[1]));
  }
  return r;
}

}  // namespace fpl
