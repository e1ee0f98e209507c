#ifndef CLRS_SYMMETRY_HPP
#define CLRS_SYMMETRY_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clrs/dense.hpp"
#include "clrs/errors.hpp"
#include "clrs/polynomial.hpp"
#include "clrs/sampling.hpp"

namespace clrs {

// Finite group given by an explicit list of orthogonal matrices acting on
// R^n.  Element 0 must be the identity; inverses are transposes, which the
// polynomial action relies on.
struct GroupAction {
  std::vector<DenseMatrix> elements;

  std::size_t size() const { return elements.size(); }
  std::size_t dimension() const { return elements.empty() ? 0 : elements[0].rows(); }

  void validate() const {
    if (elements.empty()) throw std::invalid_argument("GroupAction: empty element list");
    std::size_t n = dimension();
    BigFloat tol = pow2(40 - static_cast<long>(working_precision()));
    DenseMatrix id = DenseMatrix::identity(n);
    for (const auto& m : elements) {
      if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("GroupAction: mixed matrix dimensions");
      DenseMatrix gram = matmul(m, m, Transpose::Yes, Transpose::No);
      gram.add_scaled(BigFloat(-1), id);
      if (gram.max_abs() > tol)
        throw std::invalid_argument("GroupAction: element is not orthogonal");
    }
    DenseMatrix first = elements[0];
    first.add_scaled(BigFloat(-1), id);
    if (first.max_abs() > tol)
      throw std::invalid_argument("GroupAction: element 0 must be the identity");
    // Closure: every product lands back in the list.
    for (const auto& a : elements)
      for (const auto& b : elements) {
        DenseMatrix ab = matmul(a, b);
        bool found = false;
        for (const auto& c : elements) {
          DenseMatrix diff = ab;
          diff.add_scaled(BigFloat(-1), c);
          if (diff.max_abs() <= tol) {
            found = true;
            break;
          }
        }
        if (!found) throw std::invalid_argument("GroupAction: element list is not closed");
      }
  }
};

// Irreducible representation as matrices aligned element-for-element with a
// GroupAction's list.  Real orthogonal type only.
struct Irrep {
  std::vector<DenseMatrix> matrices;

  std::size_t dim() const { return matrices.empty() ? 0 : matrices[0].rows(); }
};

struct IrrepTable {
  std::vector<Irrep> irreps;
};

inline void validate_irreps(const GroupAction& action, const IrrepTable& table) {
  BigFloat tol = pow2(40 - static_cast<long>(working_precision()));
  std::size_t order = 0;
  for (const auto& irrep : table.irreps) {
    if (irrep.matrices.size() != action.size())
      throw NonOrthogonalIrrep("irrep element count does not match the group order");
    std::size_t d = irrep.dim();
    DenseMatrix id = DenseMatrix::identity(d);
    for (const auto& m : irrep.matrices) {
      if (m.rows() != d || m.cols() != d)
        throw NonOrthogonalIrrep("irrep matrices have mixed dimensions");
      DenseMatrix gram = matmul(m, m, Transpose::Yes, Transpose::No);
      gram.add_scaled(BigFloat(-1), id);
      if (gram.max_abs() > tol)
        throw NonOrthogonalIrrep("irrep matrix is not orthogonal");
    }
    order += d * d;
  }
  if (order != action.size())
    throw NonOrthogonalIrrep("sum of squared irrep dimensions (" + std::to_string(order) +
                             ") does not match the group order (" +
                             std::to_string(action.size()) + ")");
}

// L(gamma)p (x) = p(theta(gamma)^{-1} x); the inverse is the transpose.
inline Polynomial apply_group_element(const Polynomial& p, const DenseMatrix& theta) {
  std::size_t n = theta.rows();
  if (p.num_vars() != n)
    throw std::invalid_argument("apply_group_element: arity mismatch");
  std::vector<Polynomial> subs;
  subs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial s(n);
    for (std::size_t k = 0; k < n; ++k) {
      // (theta^T)_{i,k} = theta(k, i)
      if (!theta(k, i).is_zero())
        s += Polynomial::variable(n, k) * theta(k, i);
    }
    subs.push_back(std::move(s));
  }
  return p.substitute(subs);
}

// Matrix-coefficient projection p^pi_{j,j'} = (d_pi/|G|) sum_g pi(g^{-1})_{j',j} L(g),
// with pi(g^{-1})_{j',j} = pi(g)_{j,j'} for orthogonal irreps.  Indices are
// zero-based here.
inline Polynomial isotypic_projection(const Polynomial& p, const GroupAction& action,
                                      const Irrep& irrep, std::size_t j, std::size_t jp) {
  Polynomial acc(p.num_vars());
  for (std::size_t g = 0; g < action.size(); ++g) {
    const BigFloat& coeff = irrep.matrices[g](j, jp);
    if (coeff.is_zero()) continue;
    acc += apply_group_element(p, action.elements[g]) * coeff;
  }
  BigFloat scale = BigFloat(static_cast<long>(irrep.dim())) /
                   BigFloat(static_cast<long>(action.size()));
  acc *= scale;
  return acc;
}

struct SymAdaptedBasis {
  struct Component {
    std::size_t irrep;    // index into the IrrepTable
    std::size_t dim;      // d_pi
    // elements[i][j] = e_{pi,i,j}; i indexes copies, j runs over 0..d_pi-1.
    std::vector<std::vector<Polynomial>> elements;
    std::vector<long> degrees;  // per copy, nondecreasing

    std::size_t copies() const { return elements.size(); }
  };
  std::vector<Component> components;

  // sum over components of (copies of degree <= d)·d_pi; equals the dimension
  // of the full degree-<= d space when the basis is complete.
  std::size_t element_count(long max_degree) const {
    std::size_t total = 0;
    for (const auto& c : components)
      for (long deg : c.degrees)
        if (deg <= max_degree) total += c.dim;
    return total;
  }
};

// Applies the (1,1) projection of every irrep to the graded monomial basis,
// extracts a maximal independent subset of the image by column-pivoted
// elimination on coefficient vectors (pivot threshold 2^(-p/2)), and completes
// each surviving copy with the (j,1) projections.
inline SymAdaptedBasis symmetry_adapted_basis(const GroupAction& action, const IrrepTable& table,
                                              long max_degree) {
  action.validate();
  validate_irreps(action, table);
  std::size_t n = action.dimension();
  PolyBasis monomials = monomial_basis(n, max_degree);
  BigFloat threshold = pow2(-static_cast<long>(working_precision()) / 2);

  SymAdaptedBasis out;
  for (std::size_t pi = 0; pi < table.irreps.size(); ++pi) {
    const Irrep& irrep = table.irreps[pi];
    SymAdaptedBasis::Component comp;
    comp.irrep = pi;
    comp.dim = irrep.dim();
    // Row-echelon pivots over exponent keys: (key, unit-pivot polynomial).
    std::vector<std::pair<Polynomial::Exponents, Polynomial>> pivots;
    for (std::size_t k = 0; k < monomials.size(); ++k) {
      Polynomial q = isotypic_projection(monomials.elements[k], action, irrep, 0, 0);
      for (const auto& piv : pivots) {
        BigFloat c = q.coefficient(piv.first);
        if (!c.is_zero()) q -= piv.second * c;
      }
      // Column pivoting: largest remaining coefficient becomes the pivot.
      BigFloat best(0);
      const Polynomial::Exponents* best_key = nullptr;
      for (const auto& term : q.terms()) {
        BigFloat mag = abs(term.second);
        if (mag > best) {
          best = mag;
          best_key = &term.first;
        }
      }
      if (best_key == nullptr || best <= threshold) continue;  // not in the image
      q *= BigFloat(1) / q.coefficient(*best_key);
      pivots.emplace_back(*best_key, q);
      std::vector<Polynomial> copy;
      copy.reserve(irrep.dim());
      copy.push_back(q);
      for (std::size_t j = 1; j < irrep.dim(); ++j)
        copy.push_back(isotypic_projection(q, action, irrep, j, 0));
      comp.degrees.push_back(monomials.degrees[k]);
      comp.elements.push_back(std::move(copy));
    }
    if (!comp.elements.empty()) out.components.push_back(std::move(comp));
  }

  std::size_t expected = monomials.size();
  if (out.element_count(max_degree) != expected)
    throw NonOrthogonalIrrep("symmetry adapted basis spans " +
                             std::to_string(out.element_count(max_degree)) + " of " +
                             std::to_string(expected) +
                             " dimensions; the irrep table is incomplete or inconsistent");
  return out;
}

// Invariant PSD matrix polynomial E_pi(x)_{i,i'} = (1/d_pi) sum_j e_{pi,i,j} e_{pi,i',j},
// restricted to copies of degree <= d, together with the factor columns
// u_j(x)_i = e_{pi,i,j}(x): E = (1/d_pi)·F·F^T, so any evaluation has rank at
// most d_pi with explicit rank-1 terms.
struct InvariantBlock {
  std::size_t irrep;
  std::size_t d_pi;
  std::vector<long> degrees;  // row degrees
  PolynomialMatrix factors;   // copies × d_pi
  PolynomialMatrix e;         // copies × copies
};

inline std::vector<InvariantBlock> build_E_pi(const SymAdaptedBasis& basis, long d) {
  std::size_t num_vars = 0;
  for (const auto& c : basis.components)
    if (!c.elements.empty()) num_vars = c.elements[0][0].num_vars();
  std::vector<InvariantBlock> out;
  for (const auto& comp : basis.components) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < comp.copies(); ++i)
      if (comp.degrees[i] <= d) keep.push_back(i);
    if (keep.empty()) continue;
    InvariantBlock block;
    block.irrep = comp.irrep;
    block.d_pi = comp.dim;
    block.factors = PolynomialMatrix(keep.size(), comp.dim, num_vars);
    block.e = PolynomialMatrix(keep.size(), keep.size(), num_vars);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      block.degrees.push_back(comp.degrees[keep[i]]);
      for (std::size_t j = 0; j < comp.dim; ++j)
        block.factors(i, j) = comp.elements[keep[i]][j];
    }
    BigFloat inv_dim = BigFloat(1) / BigFloat(static_cast<long>(comp.dim));
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t ip = i; ip < keep.size(); ++ip) {
        Polynomial entry(num_vars);
        for (std::size_t j = 0; j < comp.dim; ++j)
          entry += block.factors(i, j) * block.factors(ip, j);
        entry *= inv_dim;
        block.e(i, ip) = entry;
        if (ip != i) block.e(ip, i) = std::move(entry);
      }
    out.push_back(std::move(block));
  }
  return out;
}

// Elementary symmetric functions g_1..g_{|G|} of the orbit multiset
// {L(gamma)g : gamma in G}.  The semialgebraic set cut out by the orbit equals
// the set cut out by these invariant polynomials.
inline std::vector<Polynomial> invariant_generators(const Polynomial& g,
                                                    const GroupAction& action) {
  std::size_t order = action.size();
  std::vector<Polynomial> elem(order + 1, Polynomial(g.num_vars()));
  elem[0] = Polynomial::constant(g.num_vars(), BigFloat(1));
  for (std::size_t m = 0; m < order; ++m) {
    Polynomial orbit_elem = apply_group_element(g, action.elements[m]);
    for (std::size_t k = std::min(m + 1, order); k >= 1; --k)
      elem[k] += elem[k - 1] * orbit_elem;
  }
  return std::vector<Polynomial>(elem.begin() + 1, elem.end());
}

// One representative per orbit, in first-appearance order.  Throws
// NotInvariant when the set is not closed under the action (to tolerance).
inline SampleSet orbit_representatives(const SampleSet& s, const GroupAction& action) {
  std::size_t n = action.dimension();
  BigFloat scale(1);
  for (const auto& pt : s.points)
    for (const auto& c : pt) scale = max(scale, abs(c));
  BigFloat tol = pow2(40 - static_cast<long>(working_precision())) * scale;

  auto find_match = [&](const std::vector<BigFloat>& y) -> std::ptrdiff_t {
    for (std::size_t j = 0; j < s.points.size(); ++j) {
      bool close = true;
      for (std::size_t c = 0; c < n; ++c)
        if (abs(s.points[j][c] - y[c]) > tol) {
          close = false;
          break;
        }
      if (close) return static_cast<std::ptrdiff_t>(j);
    }
    return -1;
  };

  std::vector<bool> claimed(s.points.size(), false);
  SampleSet reps;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (claimed[i]) continue;
    reps.points.push_back(s.points[i]);
    for (const auto& theta : action.elements) {
      std::vector<BigFloat> y(n, BigFloat(0));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) y[r].add_mul(theta(r, c), s.points[i][c]);
      std::ptrdiff_t j = find_match(y);
      if (j < 0)
        throw NotInvariant("orbit_representatives: image of point " + std::to_string(i) +
                           " is not in the sample set");
      claimed[static_cast<std::size_t>(j)] = true;
    }
  }
  return reps;
}

// All barycentric combinations sum_i (k_i/d)·v_i with k_i >= 0, sum k_i = d,
// over n+1 affinely independent vertices: C(n+d, n) points, invariant under
// any action permuting the vertices, and minimal unisolvent for degree <= d.
inline SampleSet simplex_invariant_grid(const std::vector<std::vector<BigFloat>>& vertices,
                                        long d) {
  if (vertices.empty()) throw std::invalid_argument("simplex_invariant_grid: no vertices");
  std::size_t n = vertices[0].size();
  if (vertices.size() != n + 1)
    throw std::invalid_argument("simplex_invariant_grid: need n+1 vertices in R^n");
  for (const auto& v : vertices)
    if (v.size() != n) throw std::invalid_argument("simplex_invariant_grid: vertex arity mismatch");
  if (d < 0) throw std::invalid_argument("simplex_invariant_grid: negative degree");

  Eigen::MatrixXd edges(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      edges(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (vertices[j + 1][i] - vertices[0][i]).to_double();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
  if (static_cast<std::size_t>(lu.rank()) != n)
    throw std::invalid_argument("simplex_invariant_grid: vertices are affinely dependent");

  SampleSet grid;
  if (d == 0) {
    // The unique invariant single point is the centroid.
    std::vector<BigFloat> centroid(n, BigFloat(0));
    for (const auto& v : vertices)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += v[i];
    for (auto& c : centroid) c /= BigFloat(static_cast<long>(n + 1));
    grid.points.push_back(std::move(centroid));
    return grid;
  }
  std::vector<unsigned> k(n + 1, 0);
  BigFloat inv_d = BigFloat(1) / BigFloat(d);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rem) {
    if (i == n) {
      k[i] = static_cast<unsigned>(rem);
      std::vector<BigFloat> pt(n, BigFloat(0));
      for (std::size_t vi = 0; vi <= n; ++vi) {
        if (k[vi] == 0) continue;
        BigFloat alpha = BigFloat(static_cast<long>(k[vi])) * inv_d;
        for (std::size_t c = 0; c < n; ++c) pt[c].add_mul(alpha, vertices[vi][c]);
      }
      grid.points.push_back(std::move(pt));
      return;
    }
    for (long kk = 0; kk <= rem; ++kk) {
      k[i] = static_cast<unsigned>(kk);
      rec(i + 1, rem - kk);
    }
  };
  rec(0, d);
  return grid;
}

// ---- concrete groups used by the applications --------------------------------

// Full coordinate-permutation action of S_n on R^n, elements in lexicographic
// permutation order (identity first).
inline GroupAction coordinate_permutation_action(std::size_t n) {
  GroupAction action;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(perm[i], i) = BigFloat(1);
    action.elements.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return action;
}

namespace detail {

inline int permutation_matrix_parity(const DenseMatrix& m) {
  std::size_t n = m.rows();
  std::vector<std::size_t> image(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!m(i, j).is_zero()) image[j] = i;
  int inversions = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (image[a] > image[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace detail

// Complete real irrep tables for S_2 and S_3 coordinate-permutation actions.
// The standard representation is the restriction to the invariant complement
// of (1,...,1), computed as B^T·theta·B for an orthonormal basis B of that
// complement — automatically orthogonal and aligned with the element list.
inline IrrepTable symmetric_group_irreps(const GroupAction& action) {
  std::size_t order = action.size();
  std::size_t n = action.dimension();
  if (!((n == 2 && order == 2) || (n == 3 && order == 6)))
    throw std::invalid_argument("symmetric_group_irreps: only S_2 and S_3 tables are built in");
  IrrepTable table;
  Irrep triv, sign;
  for (const auto& theta : action.elements) {
    triv.matrices.push_back(DenseMatrix::identity(1));
    DenseMatrix s(1, 1);
    s(0, 0) = BigFloat(detail::permutation_matrix_parity(theta));
    sign.matrices.push_back(std::move(s));
  }
  table.irreps.push_back(std::move(triv));
  table.irreps.push_back(std::move(sign));
  if (n == 3) {
    DenseMatrix b(3, 2);
    BigFloat inv_sqrt2 = BigFloat(1) / sqrt(BigFloat(2));
    BigFloat inv_sqrt6 = BigFloat(1) / sqrt(BigFloat(6));
    b(0, 0) = inv_sqrt2;            b(0, 1) = inv_sqrt6;
    b(1, 0) = -inv_sqrt2;           b(1, 1) = inv_sqrt6;
    b(2, 0) = BigFloat(0);          b(2, 1) = BigFloat(-2) * inv_sqrt6;
    Irrep standard;
    for (const auto& theta : action.elements)
      standard.matrices.push_back(matmul(matmul(b, theta, Transpose::Yes, Transpose::No), b));
    table.irreps.push_back(std::move(standard));
  }
  return table;
}

// Dihedral group of the square acting on R^2: rotations by multiples of 90
// degrees and the four mirror reflections, with exact 0/±1 entries.
inline GroupAction dihedral4_action() {
  auto mat = [](long a, long b, long c, long d) {
    DenseMatrix m(2, 2);
    m(0, 0) = BigFloat(a);
    m(0, 1) = BigFloat(b);
    m(1, 0) = BigFloat(c);
    m(1, 1) = BigFloat(d);
    return m;
  };
  GroupAction action;
  action.elements.push_back(mat(1, 0, 0, 1));    // e
  action.elements.push_back(mat(0, -1, 1, 0));   // r (90°)
  action.elements.push_back(mat(-1, 0, 0, -1));  // r²
  action.elements.push_back(mat(0, 1, -1, 0));   // r³
  action.elements.push_back(mat(1, 0, 0, -1));   // s (x-axis mirror)
  action.elements.push_back(mat(0, 1, 1, 0));    // r·s (diagonal y=x)
  action.elements.push_back(mat(-1, 0, 0, 1));   // r²·s (y-axis mirror)
  action.elements.push_back(mat(0, -1, -1, 0));  // r³·s (diagonal y=-x)
  return action;
}

// Irreps of the dihedral group above: four one-dimensional characters indexed
// by the generator signs (r -> ±1, s -> ±1) and the faithful two-dimensional
// representation, which is the action itself.
inline IrrepTable dihedral4_irreps(const GroupAction& action) {
  if (action.size() != 8 || action.dimension() != 2)
    throw std::invalid_argument("dihedral4_irreps: expects the dihedral4_action element list");
  // Element g = r^a s^b in the order built above: a = index%4, b = index/4.
  auto character = [&](int r_sign, int s_sign) {
    Irrep chi;
    for (std::size_t g = 0; g < 8; ++g) {
      int a = static_cast<int>(g % 4), b = static_cast<int>(g / 4);
      long value = 1;
      for (int i = 0; i < a; ++i) value *= r_sign;
      if (b == 1) value *= s_sign;
      DenseMatrix m(1, 1);
      m(0, 0) = BigFloat(value);
      chi.matrices.push_back(std::move(m));
    }
    return chi;
  };
  IrrepTable table;
  table.irreps.push_back(character(1, 1));
  table.irreps.push_back(character(1, -1));
  table.irreps.push_back(character(-1, 1));
  table.irreps.push_back(character(-1, -1));
  Irrep faithful;
  for (const auto& theta : action.elements) faithful.matrices.push_back(theta);
  table.irreps.push_back(std::move(faithful));
  return table;
}

// Counterexample machinery for invariant interpolation under the square's
// symmetry: any invariant 28-point set whose orbit sizes are five 4-orbits
// plus one 8-orbit is annihilated by a nonzero degree-6 polynomial, so no such
// set is unisolvent for the full degree-6 space (dimension 28).
//
// Size-4 orbits have a mirror-line stabilizer, so they lie on x=0, y=0 or
// y=±x — all zeros of xy(x+y)(x-y) — and the size-8 orbit lies on a circle.
struct D4Fixture {
  GroupAction action;
  IrrepTable irreps;
  SampleSet points;    // 28 points, invariant, 5 orbits of size 4 + 1 of size 8
  Polynomial witness;  // xy(x+y)(x-y)(x²+y²-r²), degree 6, vanishes on points
};

// mirror_params[i] places the i-th size-4 orbit at distance-parameter a_i on
// an axis (on_diagonal false → orbit of (a,0)) or a diagonal (true → orbit of
// (a,a)); (cx, cy) seeds the size-8 orbit and fixes the witness circle.
inline D4Fixture d4_nonexistence_fixture(const std::vector<BigFloat>& mirror_params,
                                         const std::vector<bool>& on_diagonal,
                                         const BigFloat& cx, const BigFloat& cy) {
  if (mirror_params.size() != 5 || on_diagonal.size() != 5)
    throw std::invalid_argument("d4_nonexistence_fixture: need exactly five size-4 orbits");
  if (cx.is_zero() || cy.is_zero() || abs(cx) == abs(cy))
    throw std::invalid_argument("d4_nonexistence_fixture: seed for the 8-orbit lies on a mirror line");

  D4Fixture fx;
  fx.action = dihedral4_action();
  fx.irreps = dihedral4_irreps(fx.action);

  auto add_orbit = [&](const BigFloat& x, const BigFloat& y) {
    for (const auto& theta : fx.action.elements) {
      std::vector<BigFloat> pt = {theta(0, 0) * x + theta(0, 1) * y,
                                  theta(1, 0) * x + theta(1, 1) * y};
      bool seen = false;
      for (const auto& q : fx.points.points)
        if (q[0] == pt[0] && q[1] == pt[1]) {
          seen = true;
          break;
        }
      if (!seen) fx.points.points.push_back(std::move(pt));
    }
  };
  for (std::size_t i = 0; i < 5; ++i) {
    if (mirror_params[i].is_zero())
      throw std::invalid_argument("d4_nonexistence_fixture: zero mirror parameter");
    if (on_diagonal[i])
      add_orbit(mirror_params[i], mirror_params[i]);
    else
      add_orbit(mirror_params[i], BigFloat(0));
  }
  add_orbit(cx, cy);
  if (fx.points.size() != 28)
    throw std::invalid_argument("d4_nonexistence_fixture: orbit parameters collide (got " +
                                std::to_string(fx.points.size()) + " distinct points)");

  Polynomial x = Polynomial::variable(2, 0);
  Polynomial y = Polynomial::variable(2, 1);
  BigFloat r2 = cx * cx + cy * cy;
  fx.witness = x * y * (x + y) * (x - y) * (x * x + y * y - Polynomial::constant(2, r2));
  return fx;
}

inline D4Fixture d4_nonexistence_fixture() {
  return d4_nonexistence_fixture(
      {BigFloat(0.3), BigFloat(0.55), BigFloat(0.8), BigFloat(1.05), BigFloat(0.21)},
      {false, true, false, true, false}, BigFloat(0.4), BigFloat(0.7));
}

}  // namespace clrs

#endif  // CLRS_SYMMETRY_HPP
