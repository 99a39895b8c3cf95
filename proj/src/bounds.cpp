#include "heislap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "heislap/errors.hpp"

namespace heislap {

double riesz_mean(std::span<const double> eigenvalues, double lambda) {
  double acc = 0.0;
  for (double ev : eigenvalues) acc += std::max(lambda - ev, 0.0);
  return acc;
}

double riesz_mean(const Spectrum& spec, double lambda) {
  return riesz_mean(std::span<const double>(spec.eigenvalues), lambda);
}

double berezin_rhs(double volume, double lambda) {
  if (!(volume > 0.0)) throw config_error("berezin_rhs: volume must be positive");
  if (lambda < 0.0) throw config_error("berezin_rhs: lambda must be nonnegative");
  return volume * lambda * lambda * lambda / 96.0;
}

double theorem_rhs(double volume, double l, double c, double lambda) {
  if (c < 2.0)
    throw config_error("theorem_rhs: c = " + std::to_string(c) +
                       " is below the floor 2 (outside the validity regime)");
  if (!(volume > 0.0) || !(l > 0.0))
    throw config_error("theorem_rhs: volume and l must be positive");
  if (lambda < 0.0) throw config_error("theorem_rhs: lambda must be nonnegative");
  if (lambda == 0.0) return 0.0;
  const double p = (2.0 * c + 5.0) / (c + 2.0);
  const double q = (2.0 * c + 2.0) / (c + 2.0);
  const double r = c / (c + 2.0);
  const double remainder = std::pow(lambda, p) * (1.0 + 2.0 / c) / 96.0 *
                           std::pow(l, q) * std::pow(volume, -r) *
                           std::pow(4.0 * c + 4.0, -q);
  return std::max(0.0, berezin_rhs(volume, lambda) - remainder);
}

double corollary_rhs(double volume, double inradius_omega, double lambda) {
  if (!(volume > 0.0) || !(inradius_omega > 0.0))
    throw config_error("corollary_rhs: volume and inradius must be positive");
  if (lambda < 0.0) throw config_error("corollary_rhs: lambda must be nonnegative");
  if (lambda == 0.0) return 0.0;
  // 2^7 * 3^2 * sqrt(3) = 48 * 12^(3/2)
  const double coeff = 1152.0 * std::sqrt(3.0);
  const double remainder = std::pow(lambda, 2.25) * volume /
                           (coeff * std::pow(inradius_omega, 1.5));
  return std::max(0.0, berezin_rhs(volume, lambda) - remainder);
}

double leading_term_oracle(double volume, double lambda, int k_max) {
  if (k_max < 1) throw config_error("leading_term_oracle: k_max must be >= 1");
  double partial = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    double odd = 2.0 * k - 1.0;
    partial += 1.0 / (odd * odd);
  }
  const double pi = 3.14159265358979323846;
  return volume / (2.0 * pi * pi) * partial * lambda * lambda * lambda / 6.0;
}

double weyl_ratio(std::span<const double> eigenvalues, double volume, double lambda) {
  if (!(lambda > 0.0)) throw config_error("weyl_ratio: lambda must be positive");
  return 96.0 * riesz_mean(eigenvalues, lambda) /
         (volume * lambda * lambda * lambda);
}

double weyl_ratio(const Spectrum& spec, double volume, double lambda) {
  return weyl_ratio(std::span<const double>(spec.eigenvalues), volume, lambda);
}

namespace {

// delta at the in-plane position of each 3D node; exact evaluation, cached
// per lattice column (i,j).
std::vector<double> node_deltas(const DistanceField& field, const Grid3D& grid) {
  std::map<std::pair<int, int>, double> cache;
  std::vector<double> out;
  out.reserve(grid.size());
  for (const GridNode& nd : grid.nodes()) {
    auto key = std::make_pair(nd.i, nd.j);
    auto it = cache.find(key);
    if (it == cache.end()) {
      double d = field.polygon().boundary_distance({nd.x1, nd.x2});
      it = cache.emplace(key, d).first;
    }
    out.push_back(it->second);
  }
  return out;
}

double mass_norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

}  // namespace

PairCheck check_cylinder_hardy(std::span<const double> v, double lambda_v,
                               const DistanceField& field, const Grid3D& grid,
                               double c) {
  if (v.size() != grid.size())
    throw config_error("check_cylinder_hardy: vector/grid size mismatch");
  if (c < 2.0) throw config_error("check_cylinder_hardy: c must be >= 2");
  const std::vector<double> deltas = node_deltas(field, grid);
  const double cellvol = grid.cell_volume();
  const double norm2 = mass_norm2(v) * cellvol;
  double lhs = 0.0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    double d = deltas[r];
    if (d > 0.0) lhs += v[r] * v[r] / (d * d) * cellvol;
  }
  return {lhs / norm2, c * c * lambda_v};
}

PairCheck check_boundary_estimate(std::span<const double> v, double lambda_v,
                                  const DistanceField& field, const Grid3D& grid,
                                  double c, double beta) {
  if (v.size() != grid.size())
    throw config_error("check_boundary_estimate: vector/grid size mismatch");
  if (c < 2.0) throw config_error("check_boundary_estimate: c must be >= 2");
  const double r_omega = inradius(field);
  if (!(beta > 0.0) || beta > r_omega * (1.0 + 1e-12))
    throw config_error("check_boundary_estimate: beta must lie in (0, R(omega)]");
  const std::vector<double> deltas = node_deltas(field, grid);
  const double cellvol = grid.cell_volume();
  const double norm2 = mass_norm2(v) * cellvol;
  double lhs = 0.0;
  for (std::size_t r = 0; r < v.size(); ++r)
    if (deltas[r] < beta) lhs += v[r] * v[r] * cellvol;
  const double rhs = std::pow(c, 2.0 + 2.0 / c) * std::pow(beta, 2.0 + 2.0 / c) *
                     std::pow(lambda_v, 1.0 + 1.0 / c);
  return {lhs / norm2, rhs};
}

BoundReport check_bounds(const Spectrum& spec, const GeometrySummary& geom,
                         double c_used, std::span<const double> lambda_grid,
                         bool convex, double tol_bound) {
  BoundReport report;
  report.geometry = geom;
  report.c_used = c_used;
  report.tol_bound = tol_bound;
  report.lambda_max_computed = spec.max_eigenvalue();
  report.spectrum_size = spec.eigenvalues.size();
  report.rows.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    BoundRow row;
    row.lambda = lambda;
    row.lhs = riesz_mean(spec, lambda);
    row.rhs_berezin = berezin_rhs(geom.volume_Omega, lambda);
    row.rhs_theorem = theorem_rhs(geom.volume_Omega, geom.l_omega, c_used, lambda);
    if (convex)
      row.rhs_corollary = corollary_rhs(geom.volume_Omega, geom.inradius, lambda);
    row.margin_berezin = row.rhs_berezin - row.lhs;
    row.margin_theorem = row.rhs_theorem - row.lhs;
    row.truncated = lambda > report.lambda_max_computed;
    row.failed = row.lhs > row.rhs_berezin * (1.0 + tol_bound) ||
                 row.lhs > row.rhs_theorem * (1.0 + tol_bound) ||
                 (row.rhs_corollary &&
                  row.lhs > *row.rhs_corollary * (1.0 + tol_bound));
    report.any_failure = report.any_failure || row.failed;
    report.rows.push_back(row);
  }
  return report;
}

std::vector<double> make_lambda_grid(double lo, double hi, int count, bool geometric) {
  if (count < 2) throw config_error("lambda grid: count must be >= 2");
  if (!(lo > 0.0) && geometric)
    throw config_error("lambda grid: geometric spacing needs lambda_min > 0");
  if (!(hi > lo)) throw config_error("lambda grid: need max > min");
  std::vector<double> grid(static_cast<std::size_t>(count), 0.0);
  for (int s = 0; s < count; ++s) {
    double t = double(s) / double(count - 1);
    grid[s] = geometric ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  return grid;
}

double remainder_exponent_fit(const Spectrum& spec, double volume,
                              std::span<const double> lambda_grid) {
  // least squares on log(remainder) vs log(lambda), upper half of the grid
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t s = lambda_grid.size() / 2; s < lambda_grid.size(); ++s) {
    double lambda = lambda_grid[s];
    double gap = berezin_rhs(volume, lambda) - riesz_mean(spec, lambda);
    if (!(gap > 0.0)) continue;
    double lx = std::log(lambda), ly = std::log(gap);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return 0.0;
  double denom = double(count) * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (double(count) * sxy - sx * sy) / denom;
}

}  // namespace heislap
