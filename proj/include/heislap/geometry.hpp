#pragma once

#include <cstddef>
#include <vector>

namespace heislap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct BoundingBox {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diagonal() const;
};

// Simple counterclockwise polygon: the cross-section omega.
// Construction validates vertex count, orientation and simplicity.
class Polygon {
 public:
  explicit Polygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  double area() const { return area_; }
  const BoundingBox& bounding_box() const { return bbox_; }
  bool convex() const { return convex_; }

  // Distance from p to the boundary polyline, defined everywhere.
  double boundary_segment_distance(const Point2& p) const;
  // Strictly inside the open polygon (even-odd rule; boundary excluded).
  bool contains(const Point2& p) const;
  // dist(p, boundary) for interior p; 0 for exterior or boundary points.
  double boundary_distance(const Point2& p) const;

 private:
  std::vector<Point2> verts_;
  double area_ = 0.0;
  BoundingBox bbox_{};
  bool convex_ = false;
};

double polygon_area(const Polygon& poly);

// Cell-centered square lattice covering the polygon's bounding box.
struct Grid2 {
  double x0 = 0.0, y0 = 0.0;  // lower-left corner of cell (0,0)
  double h = 0.0;
  int nx = 0, ny = 0;
  Point2 center(int i, int j) const {
    return {x0 + (i + 0.5) * h, y0 + (j + 0.5) * h};
  }
  std::size_t cells() const { return std::size_t(nx) * std::size_t(ny); }
};

// delta(x') = dist(x', boundary) sampled at cell centers, exact per
// edge/vertex; 0 outside the open polygon.
class DistanceField {
 public:
  DistanceField(Polygon poly, double h_plane);

  const Polygon& polygon() const { return poly_; }
  const Grid2& grid() const { return grid_; }
  double h() const { return grid_.h; }
  // row-major: j * nx + i
  const std::vector<double>& values() const { return values_; }
  double value(int i, int j) const { return values_[std::size_t(j) * grid_.nx + i]; }
  std::size_t interior_count() const { return interior_count_; }

 private:
  Polygon poly_;
  Grid2 grid_;
  std::vector<double> values_;
  std::size_t interior_count_ = 0;
};

// Grid sup of delta. Underestimates the true in-radius by at most
// h/sqrt(2) for convex omega (distance from the incenter to the nearest
// cell center).
double inradius(const DistanceField& field);

// |{delta < beta}| estimated by midpoint counting: cells * h^2.
double sublevel_area(const DistanceField& field, double beta);

struct LayerQuotient {
  double value = 0.0;      // height * inf_beta |omega^beta| / beta
  double beta_star = 0.0;  // minimizing beta
};

// height * min over a geometric beta-grid in (h, R] of sublevel_area/beta.
LayerQuotient l_omega(const DistanceField& field, double height, int n_beta = 64);

struct GeometrySummary {
  double area_omega = 0.0;
  double inradius = 0.0;
  double l_omega = 0.0;
  double height = 0.0;
  double volume_Omega = 0.0;
  double beta_star = 0.0;
};

GeometrySummary summarize_geometry(const DistanceField& field, double height,
                                   int n_beta = 64);

}  // namespace heislap
