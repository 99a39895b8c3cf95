#pragma once

#include <utility>
#include <vector>

#include "heislap/geometry.hpp"

namespace heislap {

struct HardyEstimate {
  double c_est = 0.0;              // discrete lower estimate of c
  double mesh = 0.0;               // finest h used
  double rayleigh_residual = 0.0;  // ||K u - mu W u|| / ||K u|| at the returned u
  std::vector<std::pair<double, double>> refinement_history;  // (h, c_est)
  int iterations = 0;
};

// Variational estimate of the Hardy constant c: smallest eigenvalue mu of
// the pencil K u = mu W u, with K the 5-point Dirichlet stiffness matrix on
// the interior cells and W = diag(1/delta^2); c_est = 1/sqrt(mu). Solved as
// the largest eigenvalue of the inverted quotient by power iteration with
// conjugate-gradient inner solves on K. The result is a lower bound on c up
// to discretization error (finite trial space); it never certifies an upper
// bound. Stops on relative change in mu below `tol`; throws
// convergence_error with the last residual if max_iter is exhausted.
HardyEstimate estimate_hardy_constant(const DistanceField& field,
                                      double tol = 1e-8, int max_iter = 10000);

// Runs estimate_hardy_constant on h0, h0/2, ..., recording the refinement
// history; the returned estimate is the finest level's.
HardyEstimate estimate_hardy_refined(const Polygon& poly, double h0, int levels,
                                     double tol = 1e-8, int max_iter = 10000);

enum class CMode { measured, convex, worst_case };

// The c injected into the remainder bound: convex -> 2, worst_case -> 4,
// measured -> max(c_est, 2). The measured mode is a heuristic (c_est
// underestimates c) and reports must flag it; worst_case is safe whenever
// 2 <= c <= 4 holds.
double hardy_bound_used(const HardyEstimate& est, CMode mode);

}  // namespace heislap
