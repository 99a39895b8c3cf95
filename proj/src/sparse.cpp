#include "heislap/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "heislap/errors.hpp"
#include "heislap/numio.hpp"

namespace heislap {

namespace {

// Stable sort by (row, col) keeps insertion order within a coordinate, so
// duplicate accumulation is order-deterministic (and bitwise symmetric when
// the emitter produced mirrored products in the same row order).
void sort_and_compress(int rows, std::vector<Triplet>& t,
                       std::vector<std::size_t>& row_ptr, std::vector<int>& col_idx,
                       std::vector<double>& values) {
  std::stable_sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr.assign(std::size_t(rows) + 1, 0);
  col_idx.clear();
  values.clear();
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col)
      sum += t[j++].value;
    if (sum != 0.0) {
      col_idx.push_back(t[i].col);
      values.push_back(sum);
      ++row_ptr[std::size_t(t[i].row) + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < std::size_t(rows); ++r) row_ptr[r + 1] += row_ptr[r];
}

void check_range(int rows, int cols, const std::vector<Triplet>& t) {
  for (const Triplet& e : t)
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw config_error("sparse: triplet index out of range");
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         std::vector<Triplet> entries) {
  if (rows < 0 || cols < 0) throw config_error("sparse: negative dimension");
  check_range(rows, cols, entries);
  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  sort_and_compress(rows, entries, m.row_ptr_, m.col_idx_, m.values_);
  return m;
}

void SparseMatrix::apply(const double* x, double* y) const {
  for (int r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[std::size_t(r) + 1]; ++k)
      acc += values_[k] * x[col_idx_[k]];
    y[r] = acc;
  }
}

void SparseMatrix::apply_transpose(const double* x, double* y) const {
  std::fill(y, y + cols_, 0.0);
  for (int r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[std::size_t(r) + 1]; ++k)
      y[col_idx_[k]] += values_[k] * x[r];
}

std::vector<double> SparseMatrix::apply(const std::vector<double>& x) const {
  if (int(x.size()) != cols_) throw config_error("sparse apply: size mismatch");
  std::vector<double> y(rows_);
  apply(x.data(), y.data());
  return y;
}

SparseSymMatrix SparseSymMatrix::from_triplets(int dim, std::vector<Triplet> entries) {
  if (dim < 0) throw config_error("sparse: negative dimension");
  check_range(dim, dim, entries);
  SparseSymMatrix m;
  m.dim_ = dim;
  sort_and_compress(dim, entries, m.row_ptr_, m.col_idx_, m.values_);
  if (m.max_asymmetry() != 0.0)
    throw config_error("sparse: matrix is not exactly symmetric");
  return m;
}

void SparseSymMatrix::apply(const double* x, double* y) const {
  for (int r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[std::size_t(r) + 1]; ++k)
      acc += values_[k] * x[col_idx_[k]];
    y[r] = acc;
  }
}

std::vector<double> SparseSymMatrix::apply(const std::vector<double>& x) const {
  if (int(x.size()) != dim_) throw config_error("sparse apply: size mismatch");
  std::vector<double> y(dim_);
  apply(x.data(), y.data());
  return y;
}

double SparseSymMatrix::quadratic_form(const double* x) const {
  double acc = 0.0;
  for (int r = 0; r < dim_; ++r) {
    double row = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[std::size_t(r) + 1]; ++k)
      row += values_[k] * x[col_idx_[k]];
    acc += row * x[r];
  }
  return acc;
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(dim_, 0.0);
  for (int r = 0; r < dim_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[std::size_t(r) + 1]; ++k)
      if (col_idx_[k] == r) d[r] = values_[k];
  return d;
}

double SparseSymMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[std::size_t(r) + 1]; ++k) {
      int c = col_idx_[k];
      // binary search the mirrored entry in row c
      std::size_t lo = row_ptr_[c], hi = row_ptr_[std::size_t(c) + 1];
      const int* base = col_idx_.data();
      const int* it = std::lower_bound(base + lo, base + hi, r);
      if (it == base + hi || *it != r) return std::abs(values_[k]);
      double mirror = values_[std::size_t(it - base)];
      worst = std::max(worst, std::abs(values_[k] - mirror));
    }
  }
  return worst;
}

SparseSymMatrix gram_product(const SparseMatrix& g) {
  std::vector<Triplet> trips;
  trips.reserve(g.nnz() * 3);
  const auto& rp = g.row_ptr();
  const auto& ci = g.col_idx();
  const auto& vv = g.values();
  for (int r = 0; r < g.rows(); ++r) {
    for (std::size_t p = rp[r]; p < rp[std::size_t(r) + 1]; ++p) {
      for (std::size_t q = rp[r]; q < rp[std::size_t(r) + 1]; ++q) {
        trips.push_back({ci[p], ci[q], vv[p] * vv[q]});
      }
    }
  }
  return SparseSymMatrix::from_triplets(g.cols(), std::move(trips));
}

void write_matrix_market(const SparseSymMatrix& m, std::ostream& os) {
  // lower triangle, 1-based, exact decimal values
  std::size_t count = 0;
  const auto& rp = m.row_ptr();
  const auto& ci = m.col_idx();
  for (int r = 0; r < m.dim(); ++r)
    for (std::size_t k = rp[r]; k < rp[std::size_t(r) + 1]; ++k)
      if (ci[k] <= r) ++count;
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  os << m.dim() << ' ' << m.dim() << ' ' << count << '\n';
  const auto& vv = m.values();
  for (int r = 0; r < m.dim(); ++r)
    for (std::size_t k = rp[r]; k < rp[std::size_t(r) + 1]; ++k)
      if (ci[k] <= r)
        os << (r + 1) << ' ' << (ci[k] + 1) << ' ' << fp17(vv[k]) << '\n';
}

SparseSymMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) ||
      line.rfind("%%MatrixMarket matrix coordinate real symmetric", 0) != 0)
    throw config_error("matrix market: unsupported or missing header");
  do {
    if (!std::getline(is, line)) throw config_error("matrix market: truncated file");
  } while (!line.empty() && line[0] == '%');
  std::istringstream head(line);
  long rows = 0, cols = 0, nnz = 0;
  head >> rows >> cols >> nnz;
  if (rows != cols || rows <= 0 || nnz < 0)
    throw config_error("matrix market: bad size line");
  std::vector<Triplet> trips;
  trips.reserve(std::size_t(nnz) * 2);
  for (long e = 0; e < nnz; ++e) {
    long i = 0, j = 0;
    std::string val;
    if (!(is >> i >> j >> val)) throw config_error("matrix market: truncated entries");
    double v = parse_double(val, "matrix market value");
    trips.push_back({int(i - 1), int(j - 1), v});
    if (i != j) trips.push_back({int(j - 1), int(i - 1), v});
  }
  return SparseSymMatrix::from_triplets(int(rows), std::move(trips));
}

}  // namespace heislap
