#ifndef CLRS_LOWRANK_HPP
#define CLRS_LOWRANK_HPP

// Low-rank representation of constraint matrices.  A constraint matrix acts
// on a block-diagonal PSD variable; inside block l it is a grid of
// base_l × base_l sub-blocks indexed by (r, s), and only sub-blocks with
// r ≤ s are stored.  Each stored sub-block is a weighted sum of rank-1 outer
// products λ·v·wᵀ; the terms need not be symmetric even when the represented
// matrix is.  For r < s the stored block is implicitly mirrored: the full
// matrix also contains its transpose at (s, r).

#include <cstddef>
#include <vector>

#include "clrs/dense.hpp"

namespace clrs {

struct LowRankTerm {
  BigFloat lambda;
  std::vector<BigFloat> v, w;  // same length = sub-block base dimension
};

struct SubBlockTerms {
  std::size_t l = 0;  // block index within the cluster
  std::size_t r = 0, s = 0;  // sub-block coordinates, r <= s
  std::vector<LowRankTerm> terms;
};

struct ConstraintMatrix {
  std::vector<SubBlockTerms> entries;
};

// Shape of one block of a cluster's PSD variable: an r_count × r_count grid
// of base × base sub-blocks (dimension base * r_count).
struct BlockShape {
  std::size_t base = 0;
  std::size_t r_count = 1;
  std::size_t dim() const { return base * r_count; }
};

// acc_l += coeff * (represented constraint matrix), dense accumulation.
inline void add_scaled_constraint(BlockDiagMatrix& acc, const BigFloat& coeff,
                                  const ConstraintMatrix& a,
                                  const std::vector<BlockShape>& shapes) {
  for (const auto& e : a.entries) {
    DenseMatrix& blk = acc.block(e.l);
    const std::size_t base = shapes[e.l].base;
    const std::size_t ro = e.r * base, co = e.s * base;
    for (const auto& t : e.terms) {
      BigFloat clam = coeff * t.lambda;
      for (std::size_t i = 0; i < base; ++i) {
        BigFloat cv = clam * t.v[i];
        if (cv.is_zero()) continue;
        for (std::size_t jj = 0; jj < base; ++jj) blk(ro + i, co + jj).add_mul(cv, t.w[jj]);
      }
      if (e.r != e.s) {
        for (std::size_t i = 0; i < base; ++i) {
          BigFloat cw = clam * t.w[i];
          if (cw.is_zero()) continue;
          for (std::size_t jj = 0; jj < base; ++jj) blk(co + i, ro + jj).add_mul(cw, t.v[jj]);
        }
      }
    }
  }
}

// ⟨A, M⟩ = Tr(A·M) for the represented (symmetric) constraint matrix against
// an arbitrary block-diagonal M: Tr(ṽ w̃ᵀ M) = w̃ᵀ M ṽ per full-block term.
inline BigFloat constraint_inner(const ConstraintMatrix& a, const BlockDiagMatrix& m,
                                 const std::vector<BlockShape>& shapes) {
  BigFloat acc(0);
  for (const auto& e : a.entries) {
    const DenseMatrix& blk = m.block(e.l);
    const std::size_t base = shapes[e.l].base;
    const std::size_t ro = e.r * base, co = e.s * base;
    for (const auto& t : e.terms) {
      // w̃ᵀ M ṽ with ṽ = v placed at sub-block r, w̃ = w placed at sub-block s
      BigFloat dot(0);
      for (std::size_t i = 0; i < base; ++i) {
        if (t.w[i].is_zero()) continue;
        BigFloat row(0);
        for (std::size_t jj = 0; jj < base; ++jj) row.add_mul(blk(co + i, ro + jj), t.v[jj]);
        dot.add_mul(t.w[i], row);
      }
      acc.add_mul(t.lambda, dot);
      if (e.r != e.s) {
        // mirrored term: ṽᵀ M w̃
        BigFloat dot2(0);
        for (std::size_t i = 0; i < base; ++i) {
          if (t.v[i].is_zero()) continue;
          BigFloat row(0);
          for (std::size_t jj = 0; jj < base; ++jj) row.add_mul(blk(ro + i, co + jj), t.w[jj]);
          dot2.add_mul(t.v[i], row);
        }
        acc.add_mul(t.lambda, dot2);
      }
    }
  }
  return acc;
}

}  // namespace clrs

#endif  // CLRS_LOWRANK_HPP
