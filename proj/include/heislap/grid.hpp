#pragma once

#include <cstddef>
#include <vector>

#include "heislap/geometry.hpp"

namespace heislap {

struct GridNode {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;
  int i = 0, j = 0, k = 0;  // lattice indices
};

// Interior lattice nodes of the cylinder omega x (a,b): (x1,x2) strictly
// inside omega, x3 strictly inside (a,b). Nodes are enumerated
// lexicographically with x3 outermost, then x2, then x1.
class Grid3D {
 public:
  Grid3D(Polygon poly, double a, double b, double h_plane, double h_axial);

  const Polygon& polygon() const { return poly_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double h_plane() const { return h_plane_; }
  double h_axial() const { return h_axial_; }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<GridNode>& nodes() const { return nodes_; }

  // Linear index of lattice point (i,j,k), or -1 if it is not a node.
  int index_of(int i, int j, int k) const;

  double cell_volume() const { return h_plane_ * h_plane_ * h_axial_; }
  double volume_estimate() const { return double(size()) * cell_volume(); }

  int ni() const { return ni_; }
  int nj() const { return nj_; }
  int nk() const { return nk_; }

 private:
  Polygon poly_;
  double a_, b_, h_plane_, h_axial_;
  int ni_ = 0, nj_ = 0, nk_ = 0;  // lattice extents (index upper bounds)
  std::vector<GridNode> nodes_;
  std::vector<int> index_;  // dense (ni+1)*(nj+1)*(nk+1) lookup
};

Grid3D build_grid(const Polygon& poly, double a, double b, double h_plane,
                  double h_axial);

}  // namespace heislap
