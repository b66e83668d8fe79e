#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace fpl {

enum class MaskRule { Interval, Rectangle, Disc };

const char* mask_rule_name(MaskRule rule);
MaskRule mask_rule_from_name(const std::string& name);

// Euclidean distance to the complement of the domain, sampled at every node
// of the extended lattice (zero on and outside the boundary), plus the
// discrete inradius R = max over interior nodes.
struct DistanceField {
  std::vector<double> values;
  double inradius = 0.0;
};

// Uniform cell-centered lattice over a bounding box, extended by a collar of
// explicit exterior nodes on which grid functions are zero. Interior nodes
// are the cell centers strictly inside the mask region. Immutable.
//
// Two index spaces: "node" ids run over the whole extended lattice in row
// scan order; "interior" indices 0..interior_count()-1 enumerate interior
// nodes ascending by node id. Fields and anchors live in interior indices.
class DomainGrid {
 public:
  static std::shared_ptr<const DomainGrid> interval(double a, double b, int n,
                                                    double collar_width = 0.0);
  static std::shared_ptr<const DomainGrid> box2d(
      const std::array<double, 4>& bounds, int n_per_axis, MaskRule rule,
      double collar_width = 0.0);

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  double collar_width() const { return collar_layers_ * h_; }
  int collar_layers() const { return collar_layers_; }
  MaskRule mask_rule() const { return mask_; }
  // x0, y0, x1, y1; the y slots are zero in 1D.
  const std::array<double, 4>& bounds() const { return bounds_; }
  int cells_per_axis() const { return n_; }

  int node_count() const { return static_cast<int>(coords_.size()); }
  const std::array<double, 2>& node_coord(int node) const {
    return coords_[node];
  }
  bool node_interior(int node) const { return interior_of_node_[node] >= 0; }

  int interior_count() const { return static_cast<int>(interior_.size()); }
  const std::array<double, 2>& interior_coord(int k) const {
    return coords_[interior_[k]];
  }
  double interior_distance(int k) const {
    return distance_.values[interior_[k]];
  }
  const std::vector<std::array<double, 2>>& exterior_coords() const {
    return exterior_coords_;
  }

  const DistanceField& distance() const { return distance_; }
  double inradius() const { return distance_.inradius; }
  // Lowest interior index attaining the inradius.
  int deepest_interior() const { return deepest_; }
  // Interior index nearest to a point in Euclidean distance, ties to the
  // lowest index.
  int nearest_interior(const std::array<double, 2>& point) const;

  // |x_k - x_l| between interior nodes, and its log via the lattice offset
  // tables (exact multiples of the spacing).
  double pair_distance(int k, int l) const;
  double log_pair_distance(int k, int l) const;

  // Distance from an interior node to the boundary of the collar-extended
  // bounding box (the far-field radius for 2D tail integrals).
  double farfield_radius(int k) const;

 private:
  DomainGrid() = default;
  void finalize();

  int dim_ = 1;
  double h_ = 0.0;
  int n_ = 0;
  int collar_layers_ = 0;
  MaskRule mask_ = MaskRule::Interval;
  std::array<double, 4> bounds_{};
  std::array<double, 2> center_{};
  double disc_radius_ = 0.0;

  std::vector<std::array<double, 2>> coords_;
  std::vector<std::array<int, 2>> lattice_;
  std::vector<int> interior_;          // node id per interior index
  std::vector<int> interior_of_node_;  // interior index or -1
  std::vector<std::array<int, 2>> interior_lattice_;
  std::vector<std::array<double, 2>> exterior_coords_;
  DistanceField distance_;
  int deepest_ = -1;
  std::vector<double> log_offset_;  // log(h * |di|) 1D, log(h * hypot) 2D
  int offset_stride_ = 0;
};

}  // namespace fpl
