#ifndef CLRS_SDP_HPP
#define CLRS_SDP_HPP

// The clustered low-rank semidefinite program.
//
//   primal:  minimize   Σ_j ⟨c^j, x^j⟩
//            subject to Σ_j (B^j)ᵀ x^j = b
//                       X^j = Σ_p x^j_p A^j_p − C^j ⪰ 0
//
//   dual:    maximize   Σ_j ⟨C^j, Y^j⟩ + ⟨b, y⟩
//            subject to ⟨A^j_p, Y^j⟩ + (B^j y)_p = c^j_p,   Y^j ⪰ 0
//
// Clusters share no PSD variables; they couple only through the free vector y.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "clrs/lowrank.hpp"

namespace clrs {

struct Cluster {
  std::vector<BlockShape> shapes;           // L_j block shapes
  BlockDiagMatrix C;                        // objective blocks (dims match shapes)
  std::vector<ConstraintMatrix> constraints;  // A_p, p = 0..P_j-1
  DenseMatrix B;                            // P_j × N coupling to free variables
  std::vector<BigFloat> c;                  // length P_j

  std::size_t num_constraints() const { return constraints.size(); }
  std::size_t psd_dim() const {
    std::size_t n = 0;
    for (const auto& s : shapes) n += s.dim();
    return n;
  }

  BlockDiagMatrix zero_blocks() const {
    std::vector<DenseMatrix> bs;
    bs.reserve(shapes.size());
    for (const auto& s : shapes) bs.emplace_back(s.dim(), s.dim());
    return BlockDiagMatrix(std::move(bs));
  }
};

struct ClusteredSDP {
  std::vector<Cluster> clusters;
  std::vector<BigFloat> b;  // length N (may be empty: no free variables)

  std::size_t num_free() const { return b.size(); }
  std::size_t total_psd_dim() const {
    std::size_t n = 0;
    for (const auto& cl : clusters) n += cl.psd_dim();
    return n;
  }

  void validate() const {
    const std::size_t n_free = b.size();
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      const Cluster& cl = clusters[j];
      const std::string where = "cluster " + std::to_string(j);
      if (cl.constraints.empty()) throw std::invalid_argument(where + ": no constraints");
      if (cl.c.size() != cl.constraints.size())
        throw std::invalid_argument(where + ": c length != constraint count");
      if (cl.B.rows() != cl.constraints.size() || cl.B.cols() != n_free)
        throw std::invalid_argument(where + ": B has wrong shape");
      if (cl.C.block_count() != cl.shapes.size())
        throw std::invalid_argument(where + ": C block count != shape count");
      for (std::size_t l = 0; l < cl.shapes.size(); ++l) {
        if (cl.shapes[l].base == 0 || cl.shapes[l].r_count == 0)
          throw std::invalid_argument(where + ": empty block shape");
        if (cl.C.block(l).rows() != cl.shapes[l].dim() ||
            cl.C.block(l).cols() != cl.shapes[l].dim())
          throw std::invalid_argument(where + ": C block dimension mismatch");
      }
      for (const auto& a : cl.constraints)
        for (const auto& e : a.entries) {
          if (e.l >= cl.shapes.size())
            throw std::invalid_argument(where + ": constraint references missing block");
          const BlockShape& sh = cl.shapes[e.l];
          if (e.r > e.s || e.s >= sh.r_count)
            throw std::invalid_argument(where + ": bad sub-block coordinates");
          for (const auto& t : e.terms)
            if (t.v.size() != sh.base || t.w.size() != sh.base)
              throw std::invalid_argument(where + ": term vector length != base dimension");
        }
    }
  }
};

}  // namespace clrs

#endif  // CLRS_SDP_HPP
