#include "heislap/grid.hpp"

#include <cmath>
#include <string>

#include "heislap/errors.hpp"

namespace heislap {

Grid3D::Grid3D(Polygon poly, double a, double b, double h_plane, double h_axial)
    : poly_(std::move(poly)), a_(a), b_(b), h_plane_(h_plane), h_axial_(h_axial) {
  if (!(a < b)) throw config_error("grid: need a < b, got a = " + std::to_string(a) +
                                   ", b = " + std::to_string(b));
  if (!(h_plane > 0.0) || !(h_axial > 0.0))
    throw config_error("grid: spacings must be positive");
  const BoundingBox& bb = poly_.bounding_box();
  if (h_plane >= std::max(bb.width(), bb.height()))
    throw config_error("grid: in-plane spacing exceeds the cross-section extent");
  if (h_axial >= (b - a)) throw config_error("grid: axial spacing exceeds b - a");

  ni_ = int(std::floor(bb.width() / h_plane + 1e-12));
  nj_ = int(std::floor(bb.height() / h_plane + 1e-12));
  nk_ = int(std::floor((b - a) / h_axial + 1e-12));
  const double guard = 1e-12 * (b - a);

  index_.assign(std::size_t(ni_ + 1) * (nj_ + 1) * (nk_ + 1), -1);
  // x3 outermost, then x2, then x1: deterministic lexicographic enumeration
  for (int k = 0; k <= nk_; ++k) {
    double x3 = a + k * h_axial;
    if (!(x3 > a + guard && x3 < b - guard)) continue;
    for (int j = 0; j <= nj_; ++j) {
      double x2 = bb.ymin + j * h_plane;
      for (int i = 0; i <= ni_; ++i) {
        double x1 = bb.xmin + i * h_plane;
        if (!poly_.contains({x1, x2})) continue;
        index_[(std::size_t(k) * (nj_ + 1) + j) * (ni_ + 1) + i] = int(nodes_.size());
        nodes_.push_back({x1, x2, x3, i, j, k});
      }
    }
  }
  if (nodes_.empty())
    throw config_error("grid: no interior nodes; try spacings below " +
                       std::to_string(std::min(bb.width(), b - a) / 2));
}

int Grid3D::index_of(int i, int j, int k) const {
  if (i < 0 || i > ni_ || j < 0 || j > nj_ || k < 0 || k > nk_) return -1;
  return index_[(std::size_t(k) * (nj_ + 1) + j) * (ni_ + 1) + i];
}

Grid3D build_grid(const Polygon& poly, double a, double b, double h_plane,
                  double h_axial) {
  return Grid3D(poly, a, b, h_plane, h_axial);
}

}  // namespace heislap
