#ifndef CLRS_DENSE_HPP
#define CLRS_DENSE_HPP

// Dense arbitrary-precision matrices and the factorization/solve kernels the
// interior-point solver is built on.  Storage is row-major; blocks stay dense
// (sampled problems have no useful sparsity inside a block).

#include <cstddef>
#include <string>
#include <vector>

#include "clrs/bigfloat.hpp"
#include "clrs/errors.hpp"

namespace clrs {

enum class Side { Left, Right };
enum class Transpose { No, Yes };

class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = BigFloat(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigFloat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigFloat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  BigFloat* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const BigFloat* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

  void set_zero() {
    for (auto& v : data_) v.set_zero();
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // (A + Aᵀ)/2 in place; bitwise-symmetric output regardless of accumulation order.
  void symmetrize() {
    BigFloat half(0.5);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j) {
        BigFloat m = ((*this)(i, j) + (*this)(j, i)) * half;
        (*this)(i, j) = m;
        (*this)(j, i) = m;
      }
  }

  void scale(const BigFloat& s) {
    for (auto& v : data_) v *= s;
  }

  // this += s * M
  void add_scaled(const BigFloat& s, const DenseMatrix& m) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k].add_mul(s, m.data_[k]);
  }

  BigFloat max_abs() const {
    BigFloat m(0);
    for (const auto& v : data_) {
      BigFloat a = abs(v);
      if (a > m) m = a;
    }
    return m;
  }

  BigFloat trace() const {
    BigFloat t(0);
    std::size_t n = rows_ < cols_ ? rows_ : cols_;
    for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<BigFloat> data_;
};

// ⟨A, B⟩ = Σ_ij A_ij B_ij (trace inner product for symmetric use).
inline BigFloat frobenius_inner(const DenseMatrix& a, const DenseMatrix& b) {
  BigFloat s(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const BigFloat* ra = a.row_ptr(i);
    const BigFloat* rb = b.row_ptr(i);
    for (std::size_t j = 0; j < a.cols(); ++j) s.add_mul(ra[j], rb[j]);
  }
  return s;
}

// C = op(A)·op(B).  Plain cubic kernel with fused accumulation; entry C(i,j)
// is a single left-to-right dot product, so results do not depend on how the
// caller parallelizes over output entries.
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b,
                          Transpose ta = Transpose::No, Transpose tb = Transpose::No) {
  const std::size_t m = (ta == Transpose::No) ? a.rows() : a.cols();
  const std::size_t ka = (ta == Transpose::No) ? a.cols() : a.rows();
  const std::size_t kb = (tb == Transpose::No) ? b.rows() : b.cols();
  const std::size_t n = (tb == Transpose::No) ? b.cols() : b.rows();
  if (ka != kb) throw std::invalid_argument("matmul: inner dimensions differ");
  DenseMatrix c(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigFloat& cij = c(i, j);
      for (std::size_t k = 0; k < ka; ++k) {
        const BigFloat& aik = (ta == Transpose::No) ? a(i, k) : a(k, i);
        const BigFloat& bkj = (tb == Transpose::No) ? b(k, j) : b(j, k);
        cij.add_mul(aik, bkj);
      }
    }
  return c;
}

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
inline DenseMatrix cholesky(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cholesky: matrix not square");
  const std::size_t n = a.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    BigFloat d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d.sub_mul(l(j, k), l(j, k));
    if (!d.is_finite() || d.sign() <= 0)
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) + " not positive");
    BigFloat ljj = sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      BigFloat s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s.sub_mul(l(i, k), l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

// Triangular solve against a lower-triangular L:
//   Left , No : L  Z = B        Left , Yes: Lᵀ Z = B
//   Right, No : Z L  = B        Right, Yes: Z Lᵀ = B
inline DenseMatrix solve_triangular(const DenseMatrix& l, const DenseMatrix& b,
                                    Side side = Side::Left, Transpose trans = Transpose::No) {
  const std::size_t n = l.rows();
  if (l.cols() != n) throw std::invalid_argument("solve_triangular: L not square");
  for (std::size_t i = 0; i < n; ++i)
    if (l(i, i).is_zero())
      throw std::invalid_argument("solve_triangular: zero diagonal at " + std::to_string(i));

  DenseMatrix z = b;
  if (side == Side::Left) {
    if (b.rows() != n) throw std::invalid_argument("solve_triangular: dimension mismatch");
    const std::size_t m = b.cols();
    if (trans == Transpose::No) {
      // forward substitution, row by row
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
          const BigFloat& lik = l(i, k);
          if (lik.is_zero()) continue;
          for (std::size_t j = 0; j < m; ++j) z(i, j).sub_mul(lik, z(k, j));
        }
        const BigFloat& d = l(i, i);
        for (std::size_t j = 0; j < m; ++j) z(i, j) /= d;
      }
    } else {
      // Lᵀ is upper triangular: back substitution
      for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) {
          const BigFloat& lki = l(k, ii);  // (Lᵀ)(ii,k)
          if (lki.is_zero()) continue;
          for (std::size_t j = 0; j < m; ++j) z(ii, j).sub_mul(lki, z(k, j));
        }
        const BigFloat& d = l(ii, ii);
        for (std::size_t j = 0; j < m; ++j) z(ii, j) /= d;
      }
    }
  } else {
    if (b.cols() != n) throw std::invalid_argument("solve_triangular: dimension mismatch");
    const std::size_t m = b.rows();
    if (trans == Transpose::No) {
      // Z L = B: columns of Z from the right, back substitution over columns
      for (std::size_t jj = n; jj-- > 0;) {
        const BigFloat& d = l(jj, jj);
        for (std::size_t i = 0; i < m; ++i) z(i, jj) /= d;
        for (std::size_t k = 0; k < jj; ++k) {
          const BigFloat& ljk = l(jj, k);
          if (ljk.is_zero()) continue;
          for (std::size_t i = 0; i < m; ++i) z(i, k).sub_mul(z(i, jj), ljk);
        }
      }
    } else {
      // Z Lᵀ = B: forward over columns
      for (std::size_t jj = 0; jj < n; ++jj) {
        const BigFloat& d = l(jj, jj);
        for (std::size_t i = 0; i < m; ++i) z(i, jj) /= d;
        for (std::size_t k = jj + 1; k < n; ++k) {
          const BigFloat& lkj = l(k, jj);  // (Lᵀ)(jj,k)
          if (lkj.is_zero()) continue;
          for (std::size_t i = 0; i < m; ++i) z(i, k).sub_mul(z(i, jj), lkj);
        }
      }
    }
  }
  return z;
}

class BlockDiagMatrix {
 public:
  BlockDiagMatrix() = default;
  explicit BlockDiagMatrix(std::vector<DenseMatrix> blocks) : blocks_(std::move(blocks)) {}

  static BlockDiagMatrix identity_like(const BlockDiagMatrix& other) {
    std::vector<DenseMatrix> bs;
    bs.reserve(other.blocks_.size());
    for (const auto& b : other.blocks_) bs.push_back(DenseMatrix::identity(b.rows()));
    return BlockDiagMatrix(std::move(bs));
  }

  std::size_t block_count() const { return blocks_.size(); }
  DenseMatrix& block(std::size_t i) { return blocks_[i]; }
  const DenseMatrix& block(std::size_t i) const { return blocks_[i]; }
  std::vector<DenseMatrix>& blocks() { return blocks_; }
  const std::vector<DenseMatrix>& blocks() const { return blocks_; }

  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.rows();
    return n;
  }

  void set_zero() {
    for (auto& b : blocks_) b.set_zero();
  }
  void scale(const BigFloat& s) {
    for (auto& b : blocks_) b.scale(s);
  }
  void add_scaled(const BigFloat& s, const BlockDiagMatrix& m) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i].add_scaled(s, m.blocks_[i]);
  }
  void symmetrize() {
    for (auto& b : blocks_) b.symmetrize();
  }
  BigFloat max_abs() const {
    BigFloat m(0);
    for (const auto& b : blocks_) {
      BigFloat a = b.max_abs();
      if (a > m) m = a;
    }
    return m;
  }

 private:
  std::vector<DenseMatrix> blocks_;
};

inline BigFloat frobenius_inner(const BlockDiagMatrix& a, const BlockDiagMatrix& b) {
  BigFloat s(0);
  for (std::size_t i = 0; i < a.block_count(); ++i) s += frobenius_inner(a.block(i), b.block(i));
  return s;
}

inline BlockDiagMatrix cholesky(const BlockDiagMatrix& a) {
  std::vector<DenseMatrix> ls;
  ls.reserve(a.block_count());
  for (const auto& b : a.blocks()) ls.push_back(cholesky(b));
  return BlockDiagMatrix(std::move(ls));
}

}  // namespace clrs

#endif  // CLRS_DENSE_HPP
