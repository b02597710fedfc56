#include "wmark/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "wmark/errors.hpp"

namespace wmark {

namespace {

// Working storage for the Jacobi iteration: columns kept contiguous so the
// inner loops stream over memory.
class ColumnStore {
 public:
  ColumnStore(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  double* col(std::size_t j) { return data_.data() + j * rows_; }
  const double* col(std::size_t j) const { return data_.data() + j * rows_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

// Plane rotation on a column pair: x <- c*x - s*y, y <- s*x + c*y.
void rotate(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

// Orthogonalizes the columns of b in place, accumulating the applied
// rotations into v (initialized to identity). Cyclic pair ordering, fixed
// for determinism. Returns false when the sweep cap is exhausted.
bool jacobi_orthogonalize(ColumnStore& b, ColumnStore& v) {
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  std::vector<double> norm2(n, 0.0);

  for (int sweep = 0; sweep < kSvdMaxSweeps; ++sweep) {
    for (std::size_t j = 0; j < n; ++j) norm2[j] = dot(b.col(j), b.col(j), m);
    const double max_norm2 = *std::max_element(norm2.begin(), norm2.end());
    if (max_norm2 == 0.0) return true;

    // Columns numerically indistinguishable from zero are left alone; their
    // direction is noise and rotating them never converges.
    const double eps = std::numeric_limits<double>::epsilon();
    const double null2 =
        max_norm2 * (static_cast<double>(m) * eps) * (static_cast<double>(m) * eps);

    double max_off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (norm2[p] <= null2 || norm2[q] <= null2) continue;
        const double gamma = dot(b.col(p), b.col(q), m);
        const double off = std::abs(gamma) / std::sqrt(norm2[p] * norm2[q]);
        max_off = std::max(max_off, off);
        if (off <= kSvdConvergenceTol) continue;

        const double zeta = (norm2[q] - norm2[p]) / (2.0 * gamma);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(b.col(p), b.col(q), m, c, s);
        rotate(v.col(p), v.col(q), v.rows(), c, s);
        norm2[p] -= t * gamma;
        norm2[q] += t * gamma;
      }
    }
    if (max_off <= kSvdConvergenceTol) return true;
  }
  return false;
}

// Fills the remaining columns of u (those listed in `slots`) with an
// orthonormal completion of the already-populated columns in `filled`,
// choosing candidates from the standard basis deterministically.
void complete_basis(RealMatrix& u, std::vector<std::size_t>& filled,
                    const std::vector<std::size_t>& slots) {
  const std::size_t m = u.rows();
  std::vector<bool> used(m, false);

  for (std::size_t slot : slots) {
    // Residual norm^2 of e_i against span(filled) is 1 - sum of squared
    // entries of row i over the filled columns.
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      double proj2 = 0.0;
      for (std::size_t c : filled) proj2 += u(i, c) * u(i, c);
      const double res2 = 1.0 - proj2;
      if (res2 > best) {
        best = res2;
        best_i = i;
      }
    }
    used[best_i] = true;

    std::vector<double> w(m, 0.0);
    w[best_i] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c : filled) {
        double p = 0.0;
        for (std::size_t i = 0; i < m; ++i) p += w[i] * u(i, c);
        for (std::size_t i = 0; i < m; ++i) w[i] -= p * u(i, c);
      }
    }
    double norm = std::sqrt(dot(w.data(), w.data(), m));
    for (std::size_t i = 0; i < m; ++i) u(i, slot) = w[i] / norm;
    filled.push_back(slot);
  }
}

// Largest-|entry|-non-negative convention; ties broken by lowest row index.
bool column_needs_flip(const RealMatrix& m, std::size_t j) {
  double best = -1.0;
  double sign_entry = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double a = std::abs(m(i, j));
    if (a > best) {
      best = a;
      sign_entry = m(i, j);
    }
  }
  return sign_entry < 0.0;
}

void flip_column(RealMatrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

void apply_sign_convention(RealMatrix& u, RealMatrix& v, std::size_t rank_dim) {
  for (std::size_t j = 0; j < rank_dim; ++j) {
    if (column_needs_flip(u, j)) {
      flip_column(u, j);
      flip_column(v, j);
    }
  }
  for (std::size_t j = rank_dim; j < u.cols(); ++j) {
    if (column_needs_flip(u, j)) flip_column(u, j);
  }
  for (std::size_t j = rank_dim; j < v.cols(); ++j) {
    if (column_needs_flip(v, j)) flip_column(v, j);
  }
}

}  // namespace

SvdFactors svd_decompose(const RealMatrix& a) {
  if (a.empty()) throw InvalidInput("svd: empty matrix");
  if (!a.all_finite()) throw InvalidInput("svd: non-finite entries");

  const std::size_t out_rows = a.rows();
  const std::size_t out_cols = a.cols();
  const std::size_t k = std::min(out_rows, out_cols);

  const double max_abs = a.max_abs();
  if (max_abs == 0.0) {
    return SvdFactors{RealMatrix::identity(out_rows), std::vector<double>(k, 0.0),
                      RealMatrix::identity(out_cols)};
  }

  // Power-of-two pre-scaling keeps squared column norms inside the
  // representable range for extreme inputs. Exact, so results for
  // ordinarily scaled matrices are bit-identical with or without it.
  const int scale_exp = std::clamp(-std::ilogb(max_abs), -1022, 1022);
  const double prescale = std::exp2(scale_exp);
  const double postscale = std::exp2(-scale_exp);

  // Work on the tall orientation so columns never outnumber rows.
  const bool transposed = out_rows < out_cols;
  const std::size_t m = transposed ? out_cols : out_rows;
  const std::size_t n = transposed ? out_rows : out_cols;

  ColumnStore b(m, n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (transposed) {
        b.col(i)[j] = a(i, j) * prescale;
      } else {
        b.col(j)[i] = a(i, j) * prescale;
      }
    }
  }
  ColumnStore vacc(n, n);
  for (std::size_t j = 0; j < n; ++j) vacc.col(j)[j] = 1.0;

  if (!jacobi_orthogonalize(b, vacc)) {
    throw ConvergenceError("svd: no convergence within sweep cap");
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    norms[j] = std::sqrt(dot(b.col(j), b.col(j), m));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  const double s_max = norms[order[0]];
  const double null_tol =
      s_max * static_cast<double>(std::max(m, n)) * std::numeric_limits<double>::epsilon();

  std::vector<double> s(n);
  RealMatrix uu(m, m, 0.0);
  RealMatrix vv(n, n, 0.0);
  std::vector<std::size_t> filled;
  std::vector<std::size_t> pending;
  for (std::size_t rank_pos = 0; rank_pos < n; ++rank_pos) {
    const std::size_t src = order[rank_pos];
    const double sv = norms[src] <= null_tol ? 0.0 : norms[src];
    s[rank_pos] = sv * postscale;
    for (std::size_t i = 0; i < n; ++i) vv(i, rank_pos) = vacc.col(src)[i];
    if (sv > 0.0) {
      for (std::size_t i = 0; i < m; ++i) uu(i, rank_pos) = b.col(src)[i] / sv;
      filled.push_back(rank_pos);
    } else {
      pending.push_back(rank_pos);
    }
  }
  for (std::size_t j = n; j < m; ++j) pending.push_back(j);
  complete_basis(uu, filled, pending);

  SvdFactors f;
  if (transposed) {
    f.u = std::move(vv);
    f.v = std::move(uu);
  } else {
    f.u = std::move(uu);
    f.v = std::move(vv);
  }
  f.s.assign(s.begin(), s.begin() + k);
  apply_sign_convention(f.u, f.v, k);
  return f;
}

RealMatrix svd_reconstruct(const SvdFactors& f) {
  const std::size_t m = f.u.rows();
  const std::size_t n = f.v.rows();
  if (f.u.cols() != m || f.v.cols() != n) {
    throw InvalidInput("svd_reconstruct: u and v must be square");
  }
  if (f.s.size() != std::min(m, n)) {
    throw InvalidInput("svd_reconstruct: singular value count mismatch");
  }
  for (double sv : f.s) {
    if (!std::isfinite(sv)) {
      throw InvalidInput("svd_reconstruct: non-finite singular value");
    }
  }

  RealMatrix out(m, n, 0.0);
  for (std::size_t t = 0; t < f.s.size(); ++t) {
    const double sv = f.s[t];
    if (sv == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const double ui = f.u(i, t) * sv;
      if (ui == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += ui * f.v(j, t);
      }
    }
  }
  return out;
}

}  // namespace wmark
