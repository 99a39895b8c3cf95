#include "heislap/hardy.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "heislap/errors.hpp"
#include "heislap/sparse.hpp"

namespace heislap {

namespace {

// Plain conjugate gradients on an SPD matrix; deterministic reduction order.
int conjugate_gradient(const SparseSymMatrix& k, const std::vector<double>& rhs,
                       std::vector<double>& x, double rel_tol, int max_iter) {
  const std::size_t n = rhs.size();
  std::vector<double> r(n), p(n), kp(n);
  k.apply(x.data(), kp.data());
  double rhs_norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = rhs[i] - kp[i];
    rhs_norm2 += rhs[i] * rhs[i];
  }
  if (rhs_norm2 == 0.0) {
    x.assign(n, 0.0);
    return 0;
  }
  p = r;
  double rr = 0.0;
  for (std::size_t i = 0; i < n; ++i) rr += r[i] * r[i];
  const double target2 = rel_tol * rel_tol * rhs_norm2;
  int it = 0;
  while (rr > target2 && it < max_iter) {
    k.apply(p.data(), kp.data());
    double pkp = 0.0;
    for (std::size_t i = 0; i < n; ++i) pkp += p[i] * kp[i];
    if (pkp <= 0.0) break;
    double alpha = rr / pkp;
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    double rr_new = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] -= alpha * kp[i];
      rr_new += r[i] * r[i];
    }
    double beta = rr_new / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_new;
    ++it;
  }
  return it;
}

// First crossing of the segment p -> q with the polygon boundary, as a
// parameter in (0, 1]; 2.0 when the segment does not cross.
double first_boundary_crossing(const Polygon& poly, Point2 p, Point2 q) {
  double best = 2.0;
  const auto& verts = poly.vertices();
  const double rx = q.x - p.x, ry = q.y - p.y;
  for (std::size_t e = 0, n = verts.size(); e < n; ++e) {
    const Point2& a = verts[e];
    const Point2& b = verts[(e + 1) % n];
    const double sx = b.x - a.x, sy = b.y - a.y;
    const double den = rx * sy - ry * sx;
    if (den == 0.0) continue;
    const double t = ((a.x - p.x) * sy - (a.y - p.y) * sx) / den;
    const double u = ((a.x - p.x) * ry - (a.y - p.y) * rx) / den;
    if (t > 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) best = std::min(best, t);
  }
  return best;
}

}  // namespace

HardyEstimate estimate_hardy_constant(const DistanceField& field, double tol,
                                      int max_iter) {
  if (!(tol > 0.0)) throw config_error("hardy: tolerance must be positive");
  const Polygon& poly = field.polygon();
  const Grid2& g = field.grid();
  const double h = g.h;
  const double inv_h2 = 1.0 / (h * h);

  // Trial space: cell centers at least h/2 from the boundary, so the weight
  // blows up no faster than the h-level 4/h^2 (nodes closer than that carry
  // no trial value; they stay pinned at zero like the exterior).
  std::vector<int> node_id(g.cells(), -1);
  std::vector<double> delta;
  std::vector<std::pair<int, int>> coords;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double d = field.value(i, j);
      if (d >= 0.5 * h) {
        node_id[std::size_t(j) * g.nx + i] = int(delta.size());
        delta.push_back(d);
        coords.emplace_back(i, j);
      }
    }
  const std::size_t n = delta.size();
  if (n < 10)
    throw config_error("hardy: need at least 10 interior nodes, got " +
                       std::to_string(n));

  // 5-point stiffness with short Dirichlet arms: where a neighbor center is
  // not a trial node, the linear ramp meets zero at the actual boundary
  // crossing (arm length s in [h/2, h]), contributing h/s * 1/h^2 to the
  // diagonal instead of the full-length 1/h^2.
  std::vector<Triplet> trips;
  trips.reserve(n * 5);
  for (std::size_t r = 0; r < n; ++r) {
    auto [i, j] = coords[r];
    const Point2 p = g.center(i, j);
    double diag = 0.0;
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int s = 0; s < 4; ++s) {
      int ii = i + di[s], jj = j + dj[s];
      int c = -1;
      if (ii >= 0 && ii < g.nx && jj >= 0 && jj < g.ny)
        c = node_id[std::size_t(jj) * g.nx + ii];
      if (c >= 0) {
        trips.push_back({int(r), c, -inv_h2});
        diag += inv_h2;
      } else {
        const Point2 q{p.x + di[s] * h, p.y + dj[s] * h};
        double t = first_boundary_crossing(poly, p, q);
        t = (t <= 1.0) ? std::min(std::max(t, 0.5), 1.0) : 1.0;
        diag += inv_h2 / t;
      }
    }
    trips.push_back({int(r), int(r), diag});
  }
  SparseSymMatrix k = SparseSymMatrix::from_triplets(int(n), std::move(trips));

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / (delta[i] * delta[i]);

  // Largest eigenvalue nu of the pencil W u = nu K u by power iteration with
  // CG solves on K; mu = 1/nu is the smallest eigenvalue of K u = mu W u.
  // The start sqrt(delta) mimics the extremal boundary profile and is
  // positive, so the iteration homes in on the Perron pair.
  std::vector<double> u(n), z(n), y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) u[i] = std::sqrt(delta[i]);
  {
    double nrm = 0.0;
    for (double v : u) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : u) v /= nrm;
  }

  const int cg_max = int(20 * std::sqrt(double(n)) + 200);
  double mu = 0.0, mu_prev = -1.0;
  int small_steps = 0;
  int it = 0;
  bool converged = false;
  for (it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) z[i] = w[i] * u[i];
    conjugate_gradient(k, z, y, 1e-11, cg_max);
    double nrm = 0.0;
    for (double v : y) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) throw convergence_error("hardy: power iteration collapsed");
    for (std::size_t i = 0; i < n; ++i) u[i] = y[i] / nrm;

    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) num += w[i] * u[i] * u[i];
    double den = k.quadratic_form(u.data());
    double nu = num / den;
    mu = 1.0 / nu;
    if (mu_prev > 0.0 && std::abs(mu - mu_prev) <= tol * mu) {
      // require the relative-change test twice in a row
      if (++small_steps >= 2) {
        converged = true;
        break;
      }
    } else {
      small_steps = 0;
    }
    mu_prev = mu;
  }

  std::vector<double> ku(n);
  k.apply(u.data(), ku.data());
  double ku_norm = 0.0, res_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ku[i] - mu * w[i] * u[i];
    res_norm += r * r;
    ku_norm += ku[i] * ku[i];
  }
  const double residual = std::sqrt(res_norm) / std::sqrt(ku_norm);

  if (!converged)
    throw convergence_error("hardy: power iteration did not converge in " +
                            std::to_string(max_iter) + " iterations; last pencil residual " +
                            std::to_string(residual));

  HardyEstimate est;
  est.c_est = 1.0 / std::sqrt(mu);
  est.mesh = h;
  est.rayleigh_residual = residual;
  est.iterations = it;
  est.refinement_history = {{h, est.c_est}};
  return est;
}

HardyEstimate estimate_hardy_refined(const Polygon& poly, double h0, int levels,
                                     double tol, int max_iter) {
  if (levels < 1) throw config_error("hardy: need at least one refinement level");
  std::vector<std::pair<double, double>> history;
  HardyEstimate est;
  double h = h0;
  for (int lvl = 0; lvl < levels; ++lvl) {
    DistanceField field(poly, h);
    est = estimate_hardy_constant(field, tol, max_iter);
    history.emplace_back(h, est.c_est);
    h *= 0.5;
  }
  est.refinement_history = std::move(history);
  return est;
}

double hardy_bound_used(const HardyEstimate& est, CMode mode) {
  switch (mode) {
    case CMode::convex:
      return 2.0;
    case CMode::worst_case:
      return 4.0;
    case CMode::measured:
      return std::max(est.c_est, 2.0);
  }
  throw config_error("hardy_bound_used: unknown mode");
}

}  // namespace heislap
