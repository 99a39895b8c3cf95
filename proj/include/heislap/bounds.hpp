#pragma once

#include <optional>
#include <span>
#include <vector>

#include "heislap/eigensolve.hpp"
#include "heislap/geometry.hpp"
#include "heislap/grid.hpp"

namespace heislap {

// Riesz mean of order 1 over the computed eigenvalues:
// sum_k max(lambda - lambda_k, 0).
double riesz_mean(std::span<const double> eigenvalues, double lambda);
double riesz_mean(const Spectrum& spec, double lambda);

// Sharp Berezin-type right-hand side  |Omega| lambda^3 / 96.
double berezin_rhs(double volume, double lambda);

// Improved bound with remainder,
//   max{0, V lambda^3/96
//          - lambda^{(2c+5)/(c+2)} (1+2/c)/96 l^{(2c+2)/(c+2)}
//            V^{-c/(c+2)} (4c+4)^{-(2c+2)/(c+2)}},
// valid for c >= 2; c < 2 is rejected.
double theorem_rhs(double volume, double l, double c, double lambda);

// Convex-cross-section specialization:
//   max{0, V lambda^3/96 - lambda^{9/4} V / (2^7 3^2 sqrt(3) R^{3/2})}.
// Equals theorem_rhs(V, V/R, 2, lambda).
double corollary_rhs(double volume, double inradius, double lambda);

// Partial-sum evaluation of the leading term,
// (V / 2 pi^2) (sum_{k<=k_max} 1/(2k-1)^2) (lambda^3 / 6); converges to
// berezin_rhs as k_max -> infinity (the sum tends to pi^2/8).
double leading_term_oracle(double volume, double lambda, int k_max);

// 96 * riesz_mean / (V lambda^3); tends to 1 from below as lambda grows.
double weyl_ratio(std::span<const double> eigenvalues, double volume, double lambda);
double weyl_ratio(const Spectrum& spec, double volume, double lambda);

struct PairCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Cylinder Hardy inequality on a computed eigenpair:
// lhs = sum |v|^2 / delta(x')^2 * cellvol (v normalized in the cell-volume
// norm), rhs = c^2 * lambda_v. delta is evaluated exactly at the node's
// in-plane position.
PairCheck check_cylinder_hardy(std::span<const double> v, double lambda_v,
                               const DistanceField& field, const Grid3D& grid,
                               double c);

// Boundary-layer estimate on a computed eigenpair:
// lhs = mass of v on nodes with delta(x') < beta,
// rhs = c^{2+2/c} beta^{2+2/c} lambda_v^{1+1/c}.
// Requires beta in (0, R(omega)].
PairCheck check_boundary_estimate(std::span<const double> v, double lambda_v,
                                  const DistanceField& field, const Grid3D& grid,
                                  double c, double beta);

struct BoundRow {
  double lambda = 0.0;
  double lhs = 0.0;  // Riesz mean
  double rhs_berezin = 0.0;
  double rhs_theorem = 0.0;
  std::optional<double> rhs_corollary;  // convex cross-sections only
  double margin_berezin = 0.0;          // rhs - lhs
  double margin_theorem = 0.0;
  bool truncated = false;  // lambda above the largest computed eigenvalue
  bool failed = false;     // lhs > rhs * (1 + tol_bound) for some rhs
};

struct BoundReport {
  std::vector<BoundRow> rows;
  GeometrySummary geometry;
  double c_used = 0.0;
  double tol_bound = 0.05;
  double lambda_max_computed = 0.0;
  bool any_failure = false;
  std::size_t spectrum_size = 0;
};

// Evaluates every bound over the lambda grid. A row fails when the Riesz
// mean exceeds a right-hand side by more than the relative slack tol_bound
// (bound checks are inequality-based; slack covers O(h) discretization).
BoundReport check_bounds(const Spectrum& spec, const GeometrySummary& geom,
                         double c_used, std::span<const double> lambda_grid,
                         bool convex, double tol_bound = 0.05);

// Geometric or linear grid of `count` points from lo to hi inclusive.
std::vector<double> make_lambda_grid(double lo, double hi, int count, bool geometric);

// Least-squares slope of log(berezin_rhs - riesz_mean) against log(lambda)
// over the upper half of the grid: the empirical remainder exponent.
// Diagnostic only; the true order of the second asymptotic term is open.
double remainder_exponent_fit(const Spectrum& spec, double volume,
                              std::span<const double> lambda_grid);

}  // namespace heislap
