#pragma once

#include <cstdint>
#include <vector>

#include "heislap/sparse.hpp"

namespace heislap {

class DenseSymMatrix {
 public:
  DenseSymMatrix() = default;
  explicit DenseSymMatrix(int n) : n_(n), a_(std::size_t(n) * n, 0.0) {}

  int dim() const { return n_; }
  double& at(int i, int j) { return a_[std::size_t(i) * n_ + j]; }
  double at(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

DenseSymMatrix dense_from_sparse(const SparseSymMatrix& a);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  // ||A v - lambda v||_2 / max(1, |lambda|) with ||v|| = 1
  std::vector<double> residuals;
  std::vector<std::vector<double>> vectors;  // one per pair; may be empty
  std::vector<char> converged;               // per pair
  int iterations = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;

  bool all_converged() const;
  double max_eigenvalue() const;  // largest computed (0 for empty)
};

// m smallest eigenpairs of a sparse SPD matrix by blocked, locally optimal
// preconditioned CG iteration (diagonal preconditioner). Deterministic for a
// fixed seed: pseudo-random start block, fixed reduction order, no threads.
// Requires m >= 1 and 4*m <= dim. Unconverged pairs are returned flagged,
// not thrown.
Spectrum lobpcg_smallest(const SparseSymMatrix& a, int m, double tol = 1e-8,
                         int max_iter = 600, std::uint64_t seed = 1234,
                         bool keep_vectors = true);

// Full spectrum by cyclic Jacobi rotations; off-diagonal Frobenius norm is
// driven below 1e-13 * ||A||_F. Oracle for small instances; dim <= 2000.
Spectrum dense_jacobi_all(const DenseSymMatrix& a, bool keep_vectors = false);

// Internal building block shared with the Rayleigh-Ritz step; exposed for
// tests. `a` is destroyed. Eigenvalues ascending; eigenvectors, if
// requested, are returned as columns of a row-major n x n matrix.
void jacobi_eigensolve(std::vector<double>& a, int n, std::vector<double>& evals,
                       std::vector<double>* evecs);

}  // namespace heislap
