#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace heislap {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// Rectangular sparse matrix, compressed sparse row. Used for the stacked
// difference factor G; rows need not equal cols.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  void apply(const double* x, double* y) const;            // y = M x
  void apply_transpose(const double* x, double* y) const;  // y = M^T x
  std::vector<double> apply(const std::vector<double>& x) const;

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// Square symmetric positive semi-definite CSR matrix. Entry (i,j) is
// present iff (j,i) is, with bitwise-equal values; construction checks this.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;
  static SparseSymMatrix from_triplets(int dim, std::vector<Triplet> entries);

  int dim() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }

  void apply(const double* x, double* y) const;
  std::vector<double> apply(const std::vector<double>& x) const;
  double quadratic_form(const double* x) const;  // x^T A x
  std::vector<double> diagonal() const;

  // max |a_ij - a_ji| over stored entries; 0 by construction.
  double max_asymmetry() const;

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int dim_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// A = G^T G accumulated row-by-row in a fixed order, so the result is
// bitwise symmetric and PSD by construction.
SparseSymMatrix gram_product(const SparseMatrix& g);

// Matrix Market coordinate format, symmetric, %.17g values (exact decimal
// round-trip).
void write_matrix_market(const SparseSymMatrix& m, std::ostream& os);
SparseSymMatrix read_matrix_market(std::istream& is);

}  // namespace heislap
