#include "heislap/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "heislap/errors.hpp"

namespace heislap {

namespace {

double dot(std::size_t n, const double* x, const double* y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double norm2(std::size_t n, const double* x) { return std::sqrt(dot(n, x, x)); }

// column-major block of vectors
struct Block {
  std::size_t n = 0;
  int m = 0;
  std::vector<double> a;

  Block() = default;
  Block(std::size_t n_, int m_) : n(n_), m(m_), a(n_ * std::size_t(m_), 0.0) {}
  double* col(int j) { return a.data() + std::size_t(j) * n; }
  const double* col(int j) const { return a.data() + std::size_t(j) * n; }
};

// c (p x q, row-major) = a^T b for column-major a (n x p), b (n x q);
// 4x4 register tiles, fixed accumulation order.
void gemm_tn(std::size_t n, int p, int q, const double* a, const double* b,
             double* c) {
  constexpr int ti = 4, tj = 4;
  for (int i0 = 0; i0 < p; i0 += ti) {
    const int ilim = std::min(p, i0 + ti);
    for (int j0 = 0; j0 < q; j0 += tj) {
      const int jlim = std::min(q, j0 + tj);
      double acc[ti][tj] = {};
      for (std::size_t t = 0; t < n; ++t) {
        for (int i = i0; i < ilim; ++i) {
          const double av = a[std::size_t(i) * n + t];
          for (int j = j0; j < jlim; ++j)
            acc[i - i0][j - j0] += av * b[std::size_t(j) * n + t];
        }
      }
      for (int i = i0; i < ilim; ++i)
        for (int j = j0; j < jlim; ++j) c[std::size_t(i) * q + j] = acc[i - i0][j - j0];
    }
  }
}

// y (n x q, column-major) = x (n x p, column-major) * c (p x q, row-major)
void gemm_nn(std::size_t n, int p, int q, const double* x, const double* c,
             double* y) {
  constexpr int ti = 4, tj = 4;
  std::fill(y, y + n * std::size_t(q), 0.0);
  for (int j0 = 0; j0 < q; j0 += tj) {
    const int jlim = std::min(q, j0 + tj);
    for (int i0 = 0; i0 < p; i0 += ti) {
      const int ilim = std::min(p, i0 + ti);
      double w[ti][tj];
      bool any = false;
      for (int i = i0; i < ilim; ++i)
        for (int j = j0; j < jlim; ++j) {
          w[i - i0][j - j0] = c[std::size_t(i) * q + j];
          any = any || w[i - i0][j - j0] != 0.0;
        }
      if (!any) continue;
      for (std::size_t t = 0; t < n; ++t) {
        for (int j = j0; j < jlim; ++j) {
          double acc = y[std::size_t(j) * n + t];
          for (int i = i0; i < ilim; ++i) acc += x[std::size_t(i) * n + t] * w[i - i0][j - j0];
          y[std::size_t(j) * n + t] = acc;
        }
      }
    }
  }
}

// One orthonormalization pass over the columns of v: Gram matrix, ordered
// Cholesky with column dropping, in-place triangular post-solve. Columns
// whose norm collapses below drop_rel of the original are discarded;
// `protect` leading columns are never dropped. Returns the kept count.
int cholqr_pass(Block& v, int protect, double drop_rel) {
  const std::size_t n = v.n;
  const int q = v.m;
  if (q == 0) return 0;
  std::vector<double> s(std::size_t(q) * q);
  gemm_tn(n, q, q, v.a.data(), v.a.data(), s.data());

  // left-looking Cholesky over kept columns
  std::vector<int> kept;
  kept.reserve(q);
  std::vector<double> r(std::size_t(q) * q, 0.0);  // rows: kept order, cols: j
  for (int j = 0; j < q; ++j) {
    double d = s[std::size_t(j) * q + j];
    for (std::size_t ki = 0; ki < kept.size(); ++ki) {
      double acc = s[std::size_t(kept[ki]) * q + j];
      for (std::size_t t = 0; t < ki; ++t)
        acc -= r[t * q + kept[ki]] * r[t * q + j];
      acc /= r[ki * q + kept[ki]];
      r[ki * q + j] = acc;
      d -= acc * acc;
    }
    const double floor = drop_rel * drop_rel * s[std::size_t(j) * q + j];
    if (int(kept.size()) >= protect && (d <= floor || !(d > 0.0))) continue;
    if (!(d > 0.0))
      throw convergence_error("cholqr: protected column became dependent");
    r[kept.size() * std::size_t(q) + j] = std::sqrt(d);
    kept.push_back(j);
  }

  // v_kept <- v * R^{-1}, compacting kept columns to the front
  for (std::size_t ki = 0; ki < kept.size(); ++ki) {
    const int j = kept[ki];
    double* dst = v.col(int(ki));
    if (j != int(ki)) std::copy(v.col(j), v.col(j) + n, dst);
    for (std::size_t t = 0; t < ki; ++t) {
      double w = r[t * q + j];
      if (w != 0.0) axpy(n, -w, v.col(int(t)), dst);
    }
    const double inv = 1.0 / r[ki * q + j];
    for (std::size_t t = 0; t < n; ++t) dst[t] *= inv;
  }
  v.m = int(kept.size());
  return v.m;
}

}  // namespace

DenseSymMatrix dense_from_sparse(const SparseSymMatrix& a) {
  DenseSymMatrix d(a.dim());
  const auto& rp = a.row_ptr();
  const auto& ci = a.col_idx();
  const auto& vv = a.values();
  for (int r = 0; r < a.dim(); ++r)
    for (std::size_t k = rp[r]; k < rp[std::size_t(r) + 1]; ++k)
      d.at(r, ci[k]) = vv[k];
  return d;
}

bool Spectrum::all_converged() const {
  for (char c : converged)
    if (!c) return false;
  return true;
}

double Spectrum::max_eigenvalue() const {
  return eigenvalues.empty() ? 0.0 : eigenvalues.back();
}

void jacobi_eigensolve(std::vector<double>& a, int n, std::vector<double>& evals,
                       std::vector<double>* evecs) {
  evals.assign(std::size_t(n), 0.0);
  if (evecs) {
    evecs->assign(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) (*evecs)[std::size_t(i) * n + i] = 1.0;
  }
  if (n == 0) return;
  if (n == 1) {
    evals[0] = a[0];
    return;
  }

  double norm_f = 0.0;
  for (double v : a) norm_f += v * v;
  norm_f = std::sqrt(norm_f);
  if (norm_f == 0.0) return;

  const double target = 1e-14 * norm_f;
  const double skip = target / double(n);
  const int max_sweeps = 100;
  double off = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        off += 2.0 * a[std::size_t(p) * n + q] * a[std::size_t(p) * n + q];
    off = std::sqrt(off);
    if (off <= target) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[std::size_t(p) * n + q];
        if (std::abs(apq) <= skip) continue;
        double app = a[std::size_t(p) * n + p];
        double aqq = a[std::size_t(q) * n + q];
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = a[std::size_t(i) * n + p];
          double aiq = a[std::size_t(i) * n + q];
          a[std::size_t(i) * n + p] = c * aip - s * aiq;
          a[std::size_t(i) * n + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          double api = a[std::size_t(p) * n + i];
          double aqi = a[std::size_t(q) * n + i];
          a[std::size_t(p) * n + i] = c * api - s * aqi;
          a[std::size_t(q) * n + i] = s * api + c * aqi;
        }
        if (evecs) {
          double* v = evecs->data();
          for (int i = 0; i < n; ++i) {
            double vip = v[std::size_t(i) * n + p];
            double viq = v[std::size_t(i) * n + q];
            v[std::size_t(i) * n + p] = c * vip - s * viq;
            v[std::size_t(i) * n + q] = s * vip + c * viq;
          }
        }
      }
    }
  }
  if (off > 1e-12 * norm_f)
    throw convergence_error("jacobi: off-diagonal norm " + std::to_string(off) +
                            " did not reach 1e-12 * ||A||");

  std::vector<int> order(static_cast<std::size_t>(n), 0);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a[std::size_t(i) * n + i] < a[std::size_t(j) * n + j];
  });
  std::vector<double> sorted(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) sorted[i] = a[std::size_t(order[i]) * n + order[i]];
  evals = std::move(sorted);
  if (evecs) {
    std::vector<double> vs(std::size_t(n) * n, 0.0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        vs[std::size_t(i) * n + j] = (*evecs)[std::size_t(i) * n + order[j]];
    *evecs = std::move(vs);
  }
}

Spectrum dense_jacobi_all(const DenseSymMatrix& a, bool keep_vectors) {
  const int n = a.dim();
  if (n > 2000)
    throw config_error("dense_jacobi_all: dimension " + std::to_string(n) +
                       " exceeds the 2000 cap");
  std::vector<double> work = a.data();
  std::vector<double> evals;
  std::vector<double> evecs;
  jacobi_eigensolve(work, n, evals, &evecs);

  Spectrum out;
  out.eigenvalues = evals;
  out.tolerance = 1e-12;
  out.iterations = 0;
  out.converged.assign(std::size_t(n), 1);
  out.residuals.assign(std::size_t(n), 0.0);
  const std::size_t nn = std::size_t(n);
  std::vector<double> v(nn);
  std::vector<double> av(nn);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) v[i] = evecs[std::size_t(i) * n + j];
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += a.at(i, k) * v[k];
      av[i] = acc;
    }
    axpy(nn, -evals[j], v.data(), av.data());
    out.residuals[j] = norm2(nn, av.data()) / std::max(1.0, std::abs(evals[j]));
    if (keep_vectors) out.vectors.push_back(v);
  }
  return out;
}

Spectrum lobpcg_smallest(const SparseSymMatrix& a, int m, double tol, int max_iter,
                         std::uint64_t seed, bool keep_vectors) {
  const std::size_t n = std::size_t(a.dim());
  if (m < 1) throw config_error("lobpcg: m must be >= 1");
  if (std::size_t(4 * m) > n)
    throw config_error("lobpcg: m = " + std::to_string(m) +
                       " exceeds dim/4 = " + std::to_string(n / 4) +
                       " (blocked iteration headroom)");
  if (!(tol > 0.0)) throw config_error("lobpcg: tolerance must be positive");
  if (max_iter < 1) throw config_error("lobpcg: max_iter must be >= 1");

  int b = std::min(2 * m, m + 10);
  b = std::min(b, std::max(m, int(n / 3)));

  const std::vector<double> diag = a.diagonal();

  std::mt19937_64 gen(seed);
  auto next_uniform = [&gen]() {
    // 53-bit draw in [-1, 1); bit-reproducible for a fixed seed
    return double(gen() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
  };

  Block x(n, b);
  for (int j = 0; j < b; ++j)
    for (std::size_t i = 0; i < n; ++i) x.col(j)[i] = next_uniform();
  cholqr_pass(x, 0, 1e-10);
  cholqr_pass(x, x.m, 1e-10);
  while (x.m < b) {  // random block degenerated; extend with fresh draws
    Block ext(n, b);
    std::copy(x.a.begin(), x.a.begin() + n * std::size_t(x.m), ext.a.begin());
    for (int j = x.m; j < b; ++j)
      for (std::size_t i = 0; i < n; ++i) ext.col(j)[i] = next_uniform();
    ext.m = b;
    cholqr_pass(ext, x.m, 1e-10);
    x = std::move(ext);
  }

  auto apply_cols = [&](const Block& src, Block& dst) {
    dst.n = n;
    dst.m = src.m;
    dst.a.resize(n * std::size_t(src.m));
    for (int j = 0; j < src.m; ++j) a.apply(src.col(j), dst.col(j));
  };

  std::vector<double> theta(std::size_t(b), 0.0);
  Block ax;
  apply_cols(x, ax);
  {
    std::vector<double> s(std::size_t(b) * b);
    gemm_tn(n, b, b, x.a.data(), ax.a.data(), s.data());
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j)
        s[std::size_t(j) * b + i] = s[std::size_t(i) * b + j];
    std::vector<double> evals, evecs;
    jacobi_eigensolve(s, b, evals, &evecs);
    Block xn(n, b), axn(n, b);
    gemm_nn(n, b, b, x.a.data(), evecs.data(), xn.a.data());
    gemm_nn(n, b, b, ax.a.data(), evecs.data(), axn.a.data());
    x = std::move(xn);
    ax = std::move(axn);
    std::copy(evals.begin(), evals.begin() + b, theta.begin());
  }

  Block p;  // previous search directions (empty on the first pass)
  std::vector<double> resid(std::size_t(b), 0.0);
  std::vector<char> conv(std::size_t(b), 0);
  std::vector<double> r(n);
  int iters = 0;

  auto refresh_residuals = [&]() {
    for (int j = 0; j < b; ++j) {
      std::copy(ax.col(j), ax.col(j) + n, r.begin());
      axpy(n, -theta[j], x.col(j), r.data());
      resid[j] = norm2(n, r.data());
      conv[j] = resid[j] <= tol * std::max(1.0, std::abs(theta[j])) ? 1 : 0;
    }
  };

  for (int it = 1; it <= max_iter; ++it) {
    iters = it;
    refresh_residuals();
    bool done = true;
    for (int j = 0; j < m; ++j)
      if (!conv[j]) {
        done = false;
        break;
      }
    if (done) break;

    // candidate basis [X | W_active | P_active], orthonormalized by two
    // Cholesky-QR passes with dependent-column dropping (soft locking:
    // converged pairs keep their Ritz vector but contribute no directions)
    Block v(n, 3 * b);
    int q = 0;
    for (int j = 0; j < b; ++j) std::copy(x.col(j), x.col(j) + n, v.col(q++));
    for (int j = 0; j < b; ++j) {
      if (conv[j]) continue;
      double* w = v.col(q);
      std::copy(ax.col(j), ax.col(j) + n, w);
      axpy(n, -theta[j], x.col(j), w);
      for (std::size_t i = 0; i < n; ++i)
        if (diag[i] > 0.0) w[i] /= diag[i];
      ++q;
    }
    for (int j = 0; j < p.m && q < 3 * b; ++j) {
      if (j < b && conv[j]) continue;
      std::copy(p.col(j), p.col(j) + n, v.col(q++));
    }
    v.m = q;
    cholqr_pass(v, b, 1e-8);
    cholqr_pass(v, v.m, 1e-8);
    q = v.m;
    if (q <= b) break;  // no usable search directions left

    Block av;
    apply_cols(v, av);

    std::vector<double> t(std::size_t(q) * q);
    gemm_tn(n, q, q, v.a.data(), av.a.data(), t.data());
    for (int i = 0; i < q; ++i)
      for (int j = i + 1; j < q; ++j) t[std::size_t(j) * q + i] = t[std::size_t(i) * q + j];
    std::vector<double> evals, evecs;
    jacobi_eigensolve(t, q, evals, &evecs);

    // q x b slice of the lowest Ritz vectors
    std::vector<double> c_low(std::size_t(q) * b);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < b; ++j) c_low[std::size_t(i) * b + j] = evecs[std::size_t(i) * q + j];

    Block xn(n, b), axn(n, b), pn(n, b);
    gemm_nn(n, q, b, v.a.data(), c_low.data(), xn.a.data());
    gemm_nn(n, q, b, av.a.data(), c_low.data(), axn.a.data());
    // direction part: contributions of the non-X candidate columns
    gemm_nn(n, q - b, b, v.col(b), c_low.data() + std::size_t(b) * b, pn.a.data());
    for (int j = 0; j < b; ++j) theta[j] = evals[j];
    x = std::move(xn);
    ax = std::move(axn);
    p = std::move(pn);
  }

  refresh_residuals();

  Spectrum out;
  out.tolerance = tol;
  out.seed = seed;
  out.iterations = iters;
  out.eigenvalues.assign(theta.begin(), theta.begin() + m);
  out.residuals.resize(std::size_t(m));
  out.converged.assign(std::size_t(m), 0);
  for (int j = 0; j < m; ++j) {
    out.residuals[j] = resid[j] / std::max(1.0, std::abs(theta[j]));
    out.converged[j] = conv[j];
  }
  if (keep_vectors) {
    out.vectors.resize(std::size_t(m));
    for (int j = 0; j < m; ++j) out.vectors[j].assign(x.col(j), x.col(j) + n);
  }
  return out;
}

}  // namespace heislap
