#include "heislap/operator.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "heislap/errors.hpp"

namespace heislap {

HeisenbergForm assemble_heisenberg(const Grid3D& grid) {
  const int n = int(grid.size());
  const double inv_hp = 1.0 / grid.h_plane();
  const double inv_ha = 1.0 / grid.h_axial();
  const BoundingBox& bb = grid.polygon().bounding_box();

  // Forward differences of the zero-extended function, one row per lattice
  // base point that reaches a node; the x3-coefficient is frozen at the base
  // point. Rows at exterior base points carry the boundary links, so the
  // form equals the full zero-extension form: identical for a function
  // embedded in any larger grid (this is what makes domain monotonicity
  // exact at the discrete level).
  std::vector<Triplet> trips;
  trips.reserve(std::size_t(n) * 8);
  int row = 0;

  // X1 = d_1 + (x2/2) d_3
  for (int k = -1; k <= grid.nk(); ++k) {
    for (int j = 0; j <= grid.nj(); ++j) {
      const double x2 = bb.ymin + j * grid.h_plane();
      const double c1 = 0.5 * x2 * inv_ha;
      for (int i = -1; i <= grid.ni(); ++i) {
        int base = grid.index_of(i, j, k);
        int east = grid.index_of(i + 1, j, k);
        int up = grid.index_of(i, j, k + 1);
        if (base < 0 && east < 0 && (up < 0 || c1 == 0.0)) continue;
        if (base >= 0) trips.push_back({row, base, -inv_hp - c1});
        if (east >= 0) trips.push_back({row, east, inv_hp});
        if (up >= 0 && c1 != 0.0) trips.push_back({row, up, c1});
        ++row;
      }
    }
  }

  // X2 = d_2 - (x1/2) d_3
  for (int k = -1; k <= grid.nk(); ++k) {
    for (int j = -1; j <= grid.nj(); ++j) {
      for (int i = 0; i <= grid.ni(); ++i) {
        const double x1 = bb.xmin + i * grid.h_plane();
        const double c2 = -0.5 * x1 * inv_ha;
        int base = grid.index_of(i, j, k);
        int north = grid.index_of(i, j + 1, k);
        int up = grid.index_of(i, j, k + 1);
        if (base < 0 && north < 0 && (up < 0 || c2 == 0.0)) continue;
        if (base >= 0) trips.push_back({row, base, -inv_hp - c2});
        if (north >= 0) trips.push_back({row, north, inv_hp});
        if (up >= 0 && c2 != 0.0) trips.push_back({row, up, c2});
        ++row;
      }
    }
  }

  HeisenbergForm form;
  form.factor = SparseMatrix::from_triplets(row, n, std::move(trips));
  form.matrix = gram_product(form.factor);
  return form;
}

SparseSymMatrix assemble_magnetic2d(double b_field, double half_width, double h,
                                    MagneticGauge gauge) {
  if (b_field < 0.0) throw config_error("magnetic2d: B must be nonnegative");
  if (!(half_width > 0.0) || !(h > 0.0))
    throw config_error("magnetic2d: half_width and h must be positive");
  if (h >= half_width) throw config_error("magnetic2d: spacing exceeds the domain");
  const double flux = b_field * h * h;
  if (flux > 0.5)
    throw config_error("magnetic2d: flux per plaquette B*h^2 = " +
                       std::to_string(flux) + " > 0.5; refine h");

  const double len = half_width;
  const double guard = 1e-12 * len;
  // interior lattice of (-L, L)^2
  std::vector<double> coord;
  for (int i = 1;; ++i) {
    double x = -len + i * h;
    if (!(x < len - guard)) break;
    coord.push_back(x);
  }
  const int nn = int(coord.size());
  if (nn < 2) throw config_error("magnetic2d: grid too coarse");
  const std::size_t nc = std::size_t(nn) * nn;  // complex dimension
  const int n2 = int(2 * nc);                   // realified

  auto id = [nn](int i, int j) { return std::size_t(j) * nn + i; };

  const double inv_h2 = 1.0 / (h * h);
  std::vector<Triplet> trips;
  trips.reserve(nc * 10);
  for (std::size_t c = 0; c < nc; ++c) {
    trips.push_back({int(c), int(c), 4.0 * inv_h2});
    trips.push_back({int(nc + c), int(nc + c), 4.0 * inv_h2});
  }

  // Peierls phase on the link from node u to node w: B times the line
  // integral of A. For A = (-x2, x1)/2 the x-link picks up -B*h*y/2 and the
  // y-link +B*h*x/2; the gauge-shifted A + grad(x1 x2/2) = (0, x1) moves the
  // whole phase onto y-links.
  auto add_hop = [&](std::size_t u, std::size_t w, double theta) {
    const double re = -std::cos(theta) * inv_h2;
    const double im = -std::sin(theta) * inv_h2;  // Im of the u -> w hop
    trips.push_back({int(u), int(w), re});
    trips.push_back({int(w), int(u), re});
    trips.push_back({int(nc + u), int(nc + w), re});
    trips.push_back({int(nc + w), int(nc + u), re});
    // realified [[Hr, -Hi], [Hi, Hr]]
    trips.push_back({int(u), int(nc + w), -im});
    trips.push_back({int(nc + w), int(u), -im});
    trips.push_back({int(w), int(nc + u), im});
    trips.push_back({int(nc + u), int(w), im});
  };

  for (int j = 0; j < nn; ++j) {
    for (int i = 0; i < nn; ++i) {
      if (i + 1 < nn) {
        double theta = (gauge == MagneticGauge::symmetric)
                           ? -0.5 * b_field * h * coord[j]
                           : 0.0;
        add_hop(id(i, j), id(i + 1, j), theta);
      }
      if (j + 1 < nn) {
        double theta = (gauge == MagneticGauge::symmetric)
                           ? 0.5 * b_field * h * coord[i]
                           : b_field * h * coord[i];
        add_hop(id(i, j), id(i, j + 1), theta);
      }
    }
  }
  return SparseSymMatrix::from_triplets(n2, std::move(trips));
}

}  // namespace heislap
