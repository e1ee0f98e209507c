#ifndef CLRS_SAMPLING_HPP
#define CLRS_SAMPLING_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "clrs/dense.hpp"
#include "clrs/errors.hpp"
#include "clrs/polynomial.hpp"

namespace clrs {

struct SampleSet {
  std::vector<std::vector<BigFloat>> points;

  std::size_t size() const { return points.size(); }
};

// A polynomial known only through its values on a fixed sample set, tagged
// with the degree it inherited from the basis construction.
struct SampledPolynomial {
  std::vector<BigFloat> values;
  long degree = 0;
};

enum class Unisolvence { Minimal, UnisolventNonMinimal, NotUnisolvent };

inline DenseMatrix vandermonde(const PolyBasis& basis, const SampleSet& s) {
  DenseMatrix v(s.size(), basis.size());
  for (std::size_t l = 0; l < s.size(); ++l)
    for (std::size_t k = 0; k < basis.size(); ++k)
      v(l, k) = basis.elements[k].eval(s.points[l]);
  return v;
}

namespace detail {

inline Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j).to_double();
  return a;
}

// Unpivoted machine-precision QR returning the square upper-triangular factor
// with positive diagonal (the canonical Cholesky factor of the Gram matrix —
// unique, so the basis transform does not depend on reflector sign choices).
// Throws RankDeficient only on a hard breakdown; conditioning is the caller's
// contract.
inline Eigen::MatrixXd qr_upper_factor(const Eigen::MatrixXd& a) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd r = qr.matrixQR()
                          .topRows(a.cols())
                          .triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    double d = r(k, k);
    if (!std::isfinite(d) || d == 0.0)
      throw RankDeficient("qr_upper_factor: zero pivot at column " + std::to_string(k));
    if (d < 0.0) r.row(k) = -r.row(k);
  }
  return r;
}

// High-precision inverse of an upper-triangular matrix via back substitution
// (solve R X = I).
inline DenseMatrix upper_triangular_inverse(const DenseMatrix& r) {
  DenseMatrix lower = r.transposed();
  return solve_triangular(lower, DenseMatrix::identity(r.rows()), Side::Left, Transpose::Yes);
}

inline DenseMatrix from_eigen(const Eigen::MatrixXd& a) {
  DenseMatrix m(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = BigFloat(a(i, j));
  return m;
}

}  // namespace detail

// Row indices of an approximately determinant-maximizing square submatrix:
// the first `target` pivots of a column-pivoted machine-precision QR of V^T.
// Pivots whose magnitude falls below 1e-12·max|V| are numerically zero; fewer
// than `target` of them means the candidate set is not unisolvent.
inline std::vector<std::size_t> approximate_fekete(const DenseMatrix& v, std::size_t target) {
  if (v.cols() != target)
    throw std::invalid_argument("approximate_fekete: target must equal the basis size");
  if (v.rows() < target)
    throw std::invalid_argument("approximate_fekete: fewer candidates than basis elements");
  Eigen::MatrixXd vt = detail::to_eigen(v).transpose();
  double scale = vt.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw RankDeficient("approximate_fekete: zero Vandermonde");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vt);
  const double threshold = 1e-12 * scale;
  const auto& qr_mat = qr.matrixQR();
  for (std::size_t k = 0; k < target; ++k) {
    if (!(std::abs(qr_mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k))) > threshold))
      throw RankDeficient("approximate_fekete: candidate set spans only " + std::to_string(k) +
                          " of " + std::to_string(target) + " dimensions");
  }
  const auto& perm = qr.colsPermutation().indices();
  std::vector<std::size_t> rows(target);
  for (std::size_t k = 0; k < target; ++k) rows[k] = static_cast<std::size_t>(perm(static_cast<Eigen::Index>(k)));
  return rows;
}

struct RefinedBasis {
  DenseMatrix v;                          // candidate Vandermonde in the refined basis
  std::vector<DenseMatrix> r_inv_chain;   // upper-triangular transforms, applied left to right

  // Cumulative change of basis: refined = original · transform().
  DenseMatrix transform() const {
    if (r_inv_chain.empty()) throw std::logic_error("RefinedBasis: empty chain");
    DenseMatrix t = r_inv_chain.front();
    for (std::size_t i = 1; i < r_inv_chain.size(); ++i) t = matmul(t, r_inv_chain[i]);
    return t;
  }
};

// Conditioning repair: each round takes the machine-precision QR factor R of
// the current Vandermonde and replaces V by V·R^{-1}, with the product done in
// high precision.  R is upper triangular, so nondecreasing column degrees are
// preserved.  The transforms are returned so solutions can be mapped back.
inline RefinedBasis refine_basis(const DenseMatrix& v, int rounds = 2) {
  if (v.rows() < v.cols()) throw std::invalid_argument("refine_basis: fewer rows than columns");
  if (rounds < 1) throw std::invalid_argument("refine_basis: rounds must be >= 1");
  RefinedBasis out;
  out.v = v;
  for (int round = 0; round < rounds; ++round) {
    Eigen::MatrixXd r = detail::qr_upper_factor(detail::to_eigen(out.v));
    DenseMatrix r_inv = detail::upper_triangular_inverse(detail::from_eigen(r));
    out.v = matmul(out.v, r_inv);
    out.r_inv_chain.push_back(std::move(r_inv));
  }
  return out;
}

struct OrthogonalBasis {
  std::vector<SampledPolynomial> elements;
  DenseMatrix q;          // values: q(l, k) = element k at sample point l
  DenseMatrix transform;  // upper triangular; q = v_selected · transform
};

// Sample-orthogonal basis on a minimal unisolvent set: machine-precision QR of
// the selected square Vandermonde, then the high-precision product V'·R^{-1}.
// Degrees carry over column-for-column (R is triangular).
inline OrthogonalBasis orthogonal_sampled_basis(const DenseMatrix& v_selected,
                                                const std::vector<long>& degrees) {
  if (v_selected.rows() != v_selected.cols())
    throw std::invalid_argument("orthogonal_sampled_basis: matrix must be square");
  if (degrees.size() != v_selected.cols())
    throw std::invalid_argument("orthogonal_sampled_basis: degree list size mismatch");
  Eigen::MatrixXd r = detail::qr_upper_factor(detail::to_eigen(v_selected));
  OrthogonalBasis out;
  out.transform = detail::upper_triangular_inverse(detail::from_eigen(r));
  out.q = matmul(v_selected, out.transform);
  out.elements.reserve(degrees.size());
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    SampledPolynomial p;
    p.degree = degrees[k];
    p.values.reserve(out.q.rows());
    for (std::size_t l = 0; l < out.q.rows(); ++l) p.values.push_back(out.q(l, k));
    out.elements.push_back(std::move(p));
  }
  return out;
}

inline Unisolvence check_unisolvent(const DenseMatrix& v) {
  Eigen::MatrixXd a = detail::to_eigen(v);
  double scale = a.cwiseAbs().maxCoeff();
  std::size_t rank = 0;
  if (scale > 0.0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    const double threshold = 1e-12 * scale;
    std::size_t limit = std::min(v.rows(), v.cols());
    const auto& qr_mat = qr.matrixQR();
    for (std::size_t k = 0; k < limit; ++k) {
      if (!(std::abs(qr_mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k))) > threshold)) break;
      ++rank;
    }
  }
  if (rank < v.cols()) return Unisolvence::NotUnisolvent;
  return v.rows() == v.cols() ? Unisolvence::Minimal : Unisolvence::UnisolventNonMinimal;
}

inline Unisolvence check_unisolvent(const PolyBasis& basis, const SampleSet& s) {
  return check_unisolvent(vandermonde(basis, s));
}

// Chebyshev points of the first kind mapped affinely into [a, b], in
// increasing order; pairwise distinct for any count.
inline std::vector<BigFloat> chebyshev_points(std::size_t count, const BigFloat& a,
                                              const BigFloat& b) {
  if (count == 0) throw std::invalid_argument("chebyshev_points: count must be positive");
  if (!(a < b)) throw std::invalid_argument("chebyshev_points: empty interval");
  BigFloat mid = (a + b) * BigFloat(0.5);
  BigFloat half = (b - a) * BigFloat(0.5);
  BigFloat pi = const_pi();
  std::vector<BigFloat> pts;
  pts.reserve(count);
  for (std::size_t j = count; j-- > 0;) {
    BigFloat angle = pi * BigFloat(2 * static_cast<long>(j) + 1) / BigFloat(2 * static_cast<long>(count));
    pts.push_back(mid + half * cos(angle));
  }
  return pts;
}

inline SampleSet univariate_samples(const std::vector<BigFloat>& xs) {
  SampleSet s;
  s.points.reserve(xs.size());
  for (const auto& x : xs) s.points.push_back({x});
  return s;
}

}  // namespace clrs

#endif  // CLRS_SAMPLING_HPP
