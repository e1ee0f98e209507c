#ifndef CLRS_STEPLEN_HPP
#define CLRS_STEPLEN_HPP

// Step-length control: the largest s with X + s·dX ⪰ 0, computed per block as
// -1/λ_min(L⁻¹ dX L⁻ᵀ).  The congruence transform runs at full working
// precision (it inherits the conditioning of X), but the extreme eigenvalue
// of the resulting symmetric matrix only needs ~1% accuracy, so it is
// estimated in hardware doubles after scaling the matrix to unit max-entry:
// dense Jacobi for tiny blocks, Lanczos with full reorthogonalization above.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "clrs/dense.hpp"

namespace clrs {

// Cyclic Jacobi eigenvalue iteration for a symmetric matrix in doubles.
// `a` is row-major n×n and is destroyed; returns eigenvalues sorted ascending.
inline std::vector<double> jacobi_eigenvalues_d(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-60) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0) continue;
        double theta = (at(q, q) - at(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace detail {

// Fixed linear congruential generator for reproducible Lanczos start vectors.
struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed) {}
  double next_unit() {  // in (-1, 1)
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(static_cast<std::int64_t>(s >> 11)) * (1.0 / 4503599627370496.0);
  }
};

// Smallest eigenvalue of a symmetric matrix (row-major doubles, scaled to
// max-entry ~1 by the caller).  Lanczos with full reorthogonalization, cap 64
// iterations, stop when the estimate changes by < 2^-30 relatively.
inline double lanczos_min_eigenvalue(const std::vector<double>& a, std::size_t n) {
  const std::size_t cap = n < 64 ? n : 64;
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> v(n);
  Lcg rng(0x5DEECE66DULL);
  double norm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = rng.next_unit();
    norm += v[i] * v[i];
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;

  double prev_est = 0;
  bool have_prev = false;
  std::vector<double> w(n);
  for (std::size_t j = 0; j < cap; ++j) {
    basis.push_back(v);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      const double* row = a.data() + i * n;
      for (std::size_t k = 0; k < n; ++k) s += row[k] * v[k];
      w[i] = s;
    }
    double aj = 0;
    for (std::size_t i = 0; i < n; ++i) aj += v[i] * w[i];
    alpha.push_back(aj);
    // subtract projections onto all previous Lanczos vectors (full reorth)
    for (const auto& u : basis) {
      double proj = 0;
      for (std::size_t i = 0; i < n; ++i) proj += u[i] * w[i];
      for (std::size_t i = 0; i < n; ++i) w[i] -= proj * u[i];
    }
    double bj = 0;
    for (std::size_t i = 0; i < n; ++i) bj += w[i] * w[i];
    bj = std::sqrt(bj);

    // smallest Ritz value of the (j+1)x(j+1) tridiagonal
    const std::size_t m = alpha.size();
    std::vector<double> t(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      t[i * m + i] = alpha[i];
      if (i + 1 < m) {
        t[i * m + i + 1] = beta[i];
        t[(i + 1) * m + i] = beta[i];
      }
    }
    double est = jacobi_eigenvalues_d(std::move(t), m).front();
    if (have_prev) {
      double denom = std::max(std::abs(est), 1e-300);
      if (std::abs(est - prev_est) / denom < 9.313225746154785e-10)  // 2^-30
        return est;
    }
    prev_est = est;
    have_prev = true;

    if (bj < 1e-60) return est;  // Krylov space exhausted: estimate is exact
    beta.push_back(bj);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / bj;
  }
  return prev_est;
}

inline double symmetric_min_eigenvalue(const std::vector<double>& a, std::size_t n) {
  if (n <= 8) return jacobi_eigenvalues_d(a, n).front();
  return lanczos_min_eigenvalue(a, n);
}

}  // namespace detail

// Largest s ≥ 0 with X_block + s·dX_block ⪰ 0, given the Cholesky factor L of
// X_block.  Returns +inf when dX's transform has no negative eigenvalue.  The
// returned value is deliberately shrunk by 0.5% so it never exceeds the true
// supremum by more than 1% even with an imperfect eigenvalue estimate.
inline BigFloat max_feasible_step_block(const DenseMatrix& dx, const DenseMatrix& l) {
  const std::size_t n = l.rows();
  if (n == 0) return positive_infinity();
  // A = L⁻¹ dX L⁻ᵀ at working precision
  DenseMatrix w = solve_triangular(l, dx, Side::Left, Transpose::No);
  DenseMatrix a = solve_triangular(l, w, Side::Right, Transpose::Yes);
  a.symmetrize();
  BigFloat sigma = a.max_abs();
  if (sigma.is_zero()) return positive_infinity();
  std::vector<double> ad(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ad[i * n + j] = (a(i, j) / sigma).to_double();
  double lam = detail::symmetric_min_eigenvalue(ad, n);
  lam *= 1.005;  // push further negative: safety underestimate of the step
  if (lam >= 0) return positive_infinity();
  BigFloat denom = sigma * BigFloat(lam);  // = padded λ_min(A)
  return BigFloat(-1) / denom;
}

inline BigFloat max_feasible_step(const BlockDiagMatrix& x, const BlockDiagMatrix& dx,
                                  const BlockDiagMatrix& l_x) {
  (void)x;
  BigFloat s = positive_infinity();
  for (std::size_t b = 0; b < dx.block_count(); ++b) {
    BigFloat sb = max_feasible_step_block(dx.block(b), l_x.block(b));
    if (sb < s) s = sb;
  }
  return s;
}

}  // namespace clrs

#endif  // CLRS_STEPLEN_HPP
