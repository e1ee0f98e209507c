#ifndef CLRS_TESTS_HELPERS_HPP
#define CLRS_TESTS_HELPERS_HPP

// Shared deterministic test utilities.  All randomness comes from a fixed
// xorshift stream so every run sees the same instances.

#include <cstdint>
#include <vector>

#include "clrs/dense.hpp"

namespace clrs_tests {

// Temporarily switches the global working precision; restores it on exit.
struct PrecisionGuard {
  long saved;
  explicit PrecisionGuard(long bits) : saved(clrs::working_precision()) {
    clrs::set_working_precision(bits);
  }
  ~PrecisionGuard() { clrs::set_working_precision(saved); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;
};

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed = 0x243F6A8885A308D3ULL) : s(seed) {}
  std::uint64_t next_u64() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  // uniform in (-1, 1)
  double next_unit() {
    return static_cast<double>(static_cast<std::int64_t>(next_u64() >> 11)) /
           4503599627370496.0;
  }
  // uniform in (0, 1)
  double next_01() { return 0.5 * (next_unit() + 1.0); }
};

inline clrs::DenseMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  clrs::DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = clrs::BigFloat(rng.next_unit());
  return m;
}

inline clrs::DenseMatrix random_symmetric(Rng& rng, std::size_t n) {
  clrs::DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      clrs::BigFloat v(rng.next_unit());
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

// A = G·Gᵀ + I, guaranteed symmetric positive definite.
inline clrs::DenseMatrix random_spd(Rng& rng, std::size_t n) {
  clrs::DenseMatrix g = random_matrix(rng, n, n);
  clrs::DenseMatrix a = clrs::matmul(g, g, clrs::Transpose::No, clrs::Transpose::Yes);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += clrs::BigFloat(1);
  a.symmetrize();
  return a;
}

inline clrs::BigFloat max_abs_diff(const clrs::DenseMatrix& a, const clrs::DenseMatrix& b) {
  clrs::BigFloat m(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      clrs::BigFloat d = clrs::abs(a(i, j) - b(i, j));
      if (d > m) m = d;
    }
  return m;
}

}  // namespace clrs_tests

#endif  // CLRS_TESTS_HELPERS_HPP
