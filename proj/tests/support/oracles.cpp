#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wmark::oracle {

RealMatrix naive_dct2(const RealMatrix& x) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  RealMatrix y(m, n);
  for (std::size_t u = 0; u < m; ++u) {
    const double cu = u == 0 ? inv_sqrt2 : 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double cv = v == 0 ? inv_sqrt2 : 1.0;
      double acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          acc += x(i, j) *
                 std::cos((2.0 * static_cast<double>(i) + 1.0) *
                          static_cast<double>(u) * std::numbers::pi /
                          (2.0 * static_cast<double>(m))) *
                 std::cos((2.0 * static_cast<double>(j) + 1.0) *
                          static_cast<double>(v) * std::numbers::pi /
                          (2.0 * static_cast<double>(n)));
        }
      }
      y(u, v) = 2.0 * cu * cv /
                std::sqrt(static_cast<double>(m) * static_cast<double>(n)) * acc;
    }
  }
  return y;
}

namespace {

const double kLow[2] = {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
const double kHigh[2] = {1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2};

// c[k] = sum_n filt[n - 2k] * x[n], one level, half-length output.
std::vector<double> analyze_1d(const std::vector<double>& x, const double* filt) {
  const std::size_t half = x.size() / 2;
  std::vector<double> out(half, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t nn = 0; nn < x.size(); ++nn) {
      const std::ptrdiff_t idx =
          static_cast<std::ptrdiff_t>(nn) - 2 * static_cast<std::ptrdiff_t>(k);
      if (idx >= 0 && idx < 2) out[k] += filt[idx] * x[nn];
    }
  }
  return out;
}

}  // namespace

SubbandSet naive_dwt2(const RealMatrix& x) {
  const std::size_t hr = x.rows() / 2;
  const std::size_t hc = x.cols() / 2;

  RealMatrix row_lo(x.rows(), hc);
  RealMatrix row_hi(x.rows(), hc);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::vector<double> row(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) row[j] = x(i, j);
    const std::vector<double> lo = analyze_1d(row, kLow);
    const std::vector<double> hi = analyze_1d(row, kHigh);
    for (std::size_t j = 0; j < hc; ++j) {
      row_lo(i, j) = lo[j];
      row_hi(i, j) = hi[j];
    }
  }

  SubbandSet out{RealMatrix(hr, hc), RealMatrix(hr, hc), RealMatrix(hr, hc),
                 RealMatrix(hr, hc)};
  for (std::size_t j = 0; j < hc; ++j) {
    std::vector<double> col_lo(x.rows());
    std::vector<double> col_hi(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
      col_lo[i] = row_lo(i, j);
      col_hi[i] = row_hi(i, j);
    }
    const std::vector<double> ll = analyze_1d(col_lo, kLow);
    const std::vector<double> hl = analyze_1d(col_lo, kHigh);
    const std::vector<double> lh = analyze_1d(col_hi, kLow);
    const std::vector<double> hh = analyze_1d(col_hi, kHigh);
    for (std::size_t i = 0; i < hr; ++i) {
      out.ll(i, j) = ll[i];
      out.hl(i, j) = hl[i];
      out.lh(i, j) = lh[i];
      out.hh(i, j) = hh[i];
    }
  }
  return out;
}

double naive_mse(const RealMatrix& a, const RealMatrix& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      acc += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
    }
  }
  return acc / (static_cast<double>(a.rows()) * static_cast<double>(a.cols()));
}

namespace {

RealMatrix gram(const RealMatrix& a) {
  const std::size_t n = a.cols();
  RealMatrix g(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) acc += a(k, i) * a(k, j);
      g(i, j) = acc;
    }
  }
  return g;
}

std::vector<double> finish_spectrum(std::vector<double> eig) {
  for (double& v : eig) v = std::max(v, 0.0);
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

}  // namespace

std::vector<double> gram_eigenvalues_jacobi(const RealMatrix& a) {
  RealMatrix s = gram(a);
  const std::size_t n = s.rows();
  if (n == 1) return finish_spectrum({s(0, 0)});

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += std::abs(s(i, i));
      for (std::size_t j = i + 1; j < n; ++j) off += std::abs(s(i, j));
    }
    if (off <= 1e-15 * std::max(diag, 1e-300)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double tau = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s(k, p);
          const double skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s(p, k);
          const double sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = s(i, i);
  return finish_spectrum(eig);
}

std::vector<double> gram_eigenvalues_power(const RealMatrix& a) {
  RealMatrix b = gram(a);
  const std::size_t n = b.rows();
  std::vector<double> eig;

  for (std::size_t round = 0; round < n; ++round) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = 1.0 + 0.37 * static_cast<double>((i + round) % n);
    }
    double lambda = 0.0;
    for (int it = 0; it < 200000; ++it) {
      std::vector<double> w(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i] += b(i, j) * v[j];
      }
      double norm = 0.0;
      for (double x : w) norm += x * x;
      norm = std::sqrt(norm);
      if (norm == 0.0) {
        lambda = 0.0;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
      double next = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double bv = 0.0;
        for (std::size_t j = 0; j < n; ++j) bv += b(i, j) * v[j];
        next += v[i] * bv;
      }
      if (it > 32 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next))) {
        lambda = next;
        break;
      }
      lambda = next;
    }
    eig.push_back(lambda);
    // Hotelling deflation removes the found component.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        b(i, j) -= lambda * v[i] * v[j];
      }
    }
  }
  return finish_spectrum(eig);
}

std::vector<double> char_poly_coefficients(const RealMatrix& sym) {
  const std::size_t n = sym.rows();
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[n] = 1.0;

  // M_1 = I; N_k = A M_k; c_{n-k} = -tr(N_k)/k; M_{k+1} = N_k + c_{n-k} I.
  RealMatrix m = RealMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = multiply(sym, m);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
    const double c = -trace / static_cast<double>(k);
    coeffs[n - k] = c;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c;
  }
  return coeffs;
}

double char_poly_residual(const std::vector<double>& coeffs, double x) {
  double value = 0.0;
  double magnitude = 0.0;
  double power = 1.0;
  for (double c : coeffs) {
    value += c * power;
    magnitude += std::abs(c * power);
    power *= x;
  }
  return std::abs(value) / std::max(magnitude, 1e-300);
}

}  // namespace wmark::oracle
