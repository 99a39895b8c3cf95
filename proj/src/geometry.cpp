#include "heislap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "heislap/errors.hpp"

namespace heislap {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % n];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * s;
}

int orient_sign(const Point2& o, const Point2& a, const Point2& b, double eps) {
  double c = cross(o, a, b);
  if (c > eps) return 1;
  if (c < -eps) return -1;
  return 0;
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection test (touching counts).
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c,
                        const Point2& d, double eps) {
  int d1 = orient_sign(c, d, a, eps);
  int d2 = orient_sign(c, d, b, eps);
  int d3 = orient_sign(a, b, c, eps);
  int d4 = orient_sign(a, b, d, eps);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  double ex = p.x - (a.x + t * dx);
  double ey = p.y - (a.y + t * dy);
  return std::hypot(ex, ey);
}

}  // namespace

double BoundingBox::diagonal() const { return std::hypot(width(), height()); }

Polygon::Polygon(std::vector<Point2> vertices) : verts_(std::move(vertices)) {
  const std::size_t n = verts_.size();
  if (n < 3)
    throw config_error("polygon: need at least 3 vertices, got " + std::to_string(n));

  bbox_.xmin = bbox_.xmax = verts_[0].x;
  bbox_.ymin = bbox_.ymax = verts_[0].y;
  for (const Point2& p : verts_) {
    bbox_.xmin = std::min(bbox_.xmin, p.x);
    bbox_.xmax = std::max(bbox_.xmax, p.x);
    bbox_.ymin = std::min(bbox_.ymin, p.y);
    bbox_.ymax = std::max(bbox_.ymax, p.y);
  }
  const double scale = std::max(bbox_.diagonal(), 1e-300);
  const double eps = 1e-14 * scale * scale;

  area_ = signed_area(verts_);
  if (!(area_ > 0.0))
    throw config_error("polygon: vertices must be counterclockwise with positive area "
                       "(signed area = " + std::to_string(area_) + ")");

  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = verts_[i];
    const Point2& q = verts_[(i + 1) % n];
    if (std::hypot(q.x - p.x, q.y - p.y) <= 1e-14 * scale)
      throw config_error("polygon: degenerate edge at vertex " + std::to_string(i));
  }

  // simplicity: non-adjacent closed edges must be disjoint
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(verts_[i], verts_[(i + 1) % n], verts_[j],
                             verts_[(j + 1) % n], eps))
        throw config_error("polygon: edges " + std::to_string(i) + " and " +
                           std::to_string(j) + " intersect (not a simple polygon)");
    }
  }

  convex_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    double c = cross(verts_[i], verts_[(i + 1) % n], verts_[(i + 2) % n]);
    if (c < -eps) {
      convex_ = false;
      break;
    }
  }
}

double Polygon::boundary_segment_distance(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = verts_.size(); i < n; ++i)
    best = std::min(best, point_segment_distance(p, verts_[i], verts_[(i + 1) % n]));
  return best;
}

bool Polygon::contains(const Point2& p) const {
  if (p.x < bbox_.xmin || p.x > bbox_.xmax || p.y < bbox_.ymin || p.y > bbox_.ymax)
    return false;
  bool inside = false;
  for (std::size_t i = 0, n = verts_.size(), j = n - 1; i < n; j = i++) {
    const Point2& vi = verts_[i];
    const Point2& vj = verts_[j];
    if ((vi.y > p.y) != (vj.y > p.y) &&
        p.x < (vj.x - vi.x) * (p.y - vi.y) / (vj.y - vi.y) + vi.x)
      inside = !inside;
  }
  if (!inside) return false;
  // boundary points are not interior; guard against ray-casting ties
  return boundary_segment_distance(p) > 1e-12 * bbox_.diagonal();
}

double Polygon::boundary_distance(const Point2& p) const {
  return contains(p) ? boundary_segment_distance(p) : 0.0;
}

double polygon_area(const Polygon& poly) { return poly.area(); }

DistanceField::DistanceField(Polygon poly, double h_plane) : poly_(std::move(poly)) {
  if (!(h_plane > 0.0)) throw config_error("distance field: spacing must be positive");
  const BoundingBox& bb = poly_.bounding_box();
  if (h_plane >= std::max(bb.width(), bb.height()))
    throw config_error("distance field: spacing exceeds the polygon extent");
  grid_.x0 = bb.xmin;
  grid_.y0 = bb.ymin;
  grid_.h = h_plane;
  grid_.nx = int(std::ceil(bb.width() / h_plane - 1e-12));
  grid_.ny = int(std::ceil(bb.height() / h_plane - 1e-12));

  values_.assign(grid_.cells(), 0.0);
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      double d = poly_.boundary_distance(grid_.center(i, j));
      if (d > 0.0) {
        values_[std::size_t(j) * grid_.nx + i] = d;
        ++interior_count_;
      }
    }
  }
  if (interior_count_ == 0)
    throw config_error("distance field: no interior nodes; refine the spacing");
}

double inradius(const DistanceField& field) {
  double r = 0.0;
  for (double v : field.values()) r = std::max(r, v);
  return r;
}

double sublevel_area(const DistanceField& field, double beta) {
  if (!(beta > 0.0)) throw config_error("sublevel_area: beta must be positive");
  std::size_t count = 0;
  for (double v : field.values())
    if (v > 0.0 && v < beta) ++count;
  return double(count) * field.h() * field.h();
}

LayerQuotient l_omega(const DistanceField& field, double height, int n_beta) {
  if (!(height > 0.0)) throw config_error("l_omega: height must be positive");
  if (n_beta < 2) throw config_error("l_omega: need at least 2 beta samples");
  const double r = inradius(field);
  const double h = field.h();
  if (!(r > h))
    throw config_error("l_omega: in-radius does not exceed the spacing; refine the grid");

  // geometric grid in (h, R]: the quotient varies smoothly and log spacing
  // resolves small beta where it can dip for non-convex omega
  LayerQuotient best;
  best.value = std::numeric_limits<double>::infinity();
  const double ratio = r / h;
  for (int s = 0; s < n_beta; ++s) {
    double beta = h * std::pow(ratio, double(s + 1) / double(n_beta));
    beta = std::min(beta, r);
    double q = sublevel_area(field, beta) / beta;
    if (q < best.value) {
      best.value = q;
      best.beta_star = beta;
    }
  }
  best.value *= height;
  return best;
}

GeometrySummary summarize_geometry(const DistanceField& field, double height,
                                   int n_beta) {
  GeometrySummary s;
  s.area_omega = field.polygon().area();
  s.inradius = inradius(field);
  LayerQuotient lq = l_omega(field, height, n_beta);
  s.l_omega = lq.value;
  s.beta_star = lq.beta_star;
  s.height = height;
  s.volume_Omega = s.area_omega * height;
  return s;
}

}  // namespace heislap
