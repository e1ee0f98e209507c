#ifndef CLRS_VERIFY_HPP
#define CLRS_VERIFY_HPP

// Independent solution checking.  Recomputes objectives and residuals with
// plain loops directly from stored solution data, and evaluates the certified
// polynomial identities at fresh (non-sample) points by mapping the solved
// blocks back through the recorded basis transforms.  Nothing here depends on
// solver-internal state: everything derives from the problem data and the
// variable values.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "clrs/bigfloat.hpp"
#include "clrs/dense.hpp"
#include "clrs/lowrank.hpp"
#include "clrs/pmp.hpp"
#include "clrs/sdp.hpp"

namespace clrs {

struct CheckReport {
  BigFloat primal_objective{0};
  BigFloat dual_objective{0};
  BigFloat duality_gap{0};
  BigFloat primal_error{0};    // max-abs primal residual (matrix blocks and free rows)
  BigFloat dual_error{0};      // max-abs dual residual rows
  BigFloat identity_violation{0};  // max |certificate − constraint| at fresh points
  std::size_t identity_points = 0;  // fresh evaluations performed (0 = payload-only)
};

// Recomputes objectives, duality gap, and residual maxima from a variable
// assignment.  Throws std::invalid_argument when shapes do not match the
// problem.
inline CheckReport recompute_measures(const ClusteredSDP& sdp,
                                      const std::vector<std::vector<BigFloat>>& x,
                                      const std::vector<BlockDiagMatrix>& X,
                                      const std::vector<BigFloat>& y,
                                      const std::vector<BlockDiagMatrix>& Y) {
  const std::size_t nj = sdp.clusters.size();
  if (x.size() != nj || X.size() != nj || Y.size() != nj || y.size() != sdp.num_free())
    throw std::invalid_argument("check: solution shape does not match the problem");

  CheckReport rep;
  std::vector<BigFloat> q = sdp.b;
  for (std::size_t j = 0; j < nj; ++j) {
    const Cluster& cl = sdp.clusters[j];
    const std::size_t rows = cl.num_constraints();
    if (x[j].size() != rows)
      throw std::invalid_argument("check: multiplier length mismatch in cluster " +
                                  std::to_string(j));
    if (X[j].block_count() != cl.shapes.size() || Y[j].block_count() != cl.shapes.size())
      throw std::invalid_argument("check: block count mismatch in cluster " + std::to_string(j));
    for (std::size_t l = 0; l < cl.shapes.size(); ++l)
      if (X[j].block(l).rows() != cl.shapes[l].dim() || Y[j].block(l).rows() != cl.shapes[l].dim())
        throw std::invalid_argument("check: block dimension mismatch in cluster " +
                                    std::to_string(j));

    // Objectives.
    for (std::size_t p = 0; p < rows; ++p) rep.primal_objective.add_mul(cl.c[p], x[j][p]);
    rep.dual_objective += frobenius_inner(cl.C, Y[j]);

    // Primal matrix residual  Σ_p x_p A_p − C − X.
    BlockDiagMatrix pm = cl.zero_blocks();
    for (std::size_t p = 0; p < rows; ++p)
      add_scaled_constraint(pm, x[j][p], cl.constraints[p], cl.shapes);
    pm.add_scaled(BigFloat(-1), cl.C);
    pm.add_scaled(BigFloat(-1), X[j]);
    pm.symmetrize();
    rep.primal_error = max(rep.primal_error, pm.max_abs());

    // Dual residual rows  c_p − ⟨A_p, Y⟩ − (B y)_p  and free rows  b − Σ Bᵀ x.
    for (std::size_t p = 0; p < rows; ++p) {
      BigFloat row = cl.c[p] - constraint_inner(cl.constraints[p], Y[j], cl.shapes);
      for (std::size_t i = 0; i < y.size(); ++i) row.sub_mul(cl.B(p, i), y[i]);
      rep.dual_error = max(rep.dual_error, abs(row));
      for (std::size_t i = 0; i < q.size(); ++i) q[i].sub_mul(cl.B(p, i), x[j][p]);
    }
  }
  for (std::size_t i = 0; i < y.size(); ++i) rep.dual_objective.add_mul(sdp.b[i], y[i]);
  for (const auto& qi : q) rep.primal_error = max(rep.primal_error, abs(qi));
  rep.duality_gap = abs(rep.primal_objective - rep.dual_objective) /
                    max(BigFloat(1), abs(rep.primal_objective) + abs(rep.dual_objective));
  return rep;
}

// Values of the recorded orthogonalized basis at an arbitrary point.
inline std::vector<BigFloat> sampled_basis_at(const PolyBasis& symbolic,
                                              const DenseMatrix& transform,
                                              const std::vector<BigFloat>& x) {
  std::vector<BigFloat> pre(symbolic.size());
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] = symbolic.elements[i].eval(x);
  std::vector<BigFloat> out(transform.cols(), BigFloat(0));
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t i = 0; i < pre.size(); ++i) out[k].add_mul(pre[i], transform(i, k));
  return out;
}

namespace detail {

// Deterministic stream for fresh evaluation points.
struct CheckRng {
  std::uint64_t s = 0x9E3779B97F4A7C15ULL;
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  // in (0, 1)
  BigFloat next01() {
    return (BigFloat(static_cast<double>(next() >> 11)) + BigFloat(0.5)) /
           BigFloat(9007199254740992.0);
  }
};

// PSD-variable values from the solved data: mode B reads the vech entries of
// the free vector; mode A reads the dedicated cluster blocks.
inline std::vector<DenseMatrix> psd_variable_values(const PolyMatrixProgram& prog,
                                                    const LoweredProgram& lowered,
                                                    const std::vector<BigFloat>& y,
                                                    const std::vector<BlockDiagMatrix>& Y) {
  std::vector<DenseMatrix> out;
  out.reserve(prog.psd_vars.size());
  for (const auto& pv : prog.psd_vars) out.emplace_back(pv.dim, pv.dim);

  if (!lowered.vech_map.empty()) {
    if (lowered.num_original_free + lowered.vech_map.size() != y.size())
      throw std::invalid_argument("check: vech map does not match the free vector");
    for (std::size_t t = 0; t < lowered.vech_map.size(); ++t) {
      const auto& e = lowered.vech_map[t];
      const BigFloat& v = y[lowered.num_original_free + t];
      out[e.var](e.row, e.col) = v;
      out[e.var](e.col, e.row) = v;
    }
    return out;
  }

  for (std::size_t j = 0; j < lowered.records.size(); ++j) {
    const auto& rec = lowered.records[j];
    for (std::size_t l = 0; l < rec.blocks.size(); ++l) {
      const auto& info = rec.blocks[l];
      if (info.psd_var == SIZE_MAX) continue;
      out[info.psd_var] = Y[j].block(l);
    }
  }
  return out;
}

}  // namespace detail

// Maximum absolute gap between the certificate side (weighted SOS blocks
// evaluated through the recorded basis transform) and the constraint side
// (coefficient polynomials at the solved values) over deterministic fresh
// points inside each constraint's sample bounding box.  The sampled equations
// pin the identity at the lowering degree, so a correct solution keeps this
// at the level of the residuals; a perturbed or mismatched solution does not.
inline BigFloat certified_identity_violation(const PolyMatrixProgram& prog,
                                             const std::vector<LoweringInput>& inputs,
                                             const LoweredProgram& lowered,
                                             const std::vector<BigFloat>& y,
                                             const std::vector<BlockDiagMatrix>& Y,
                                             std::size_t points, std::size_t* evaluated = nullptr) {
  if (inputs.size() != prog.constraints.size())
    throw std::invalid_argument("check: inputs do not match the program");
  std::vector<DenseMatrix> psd = detail::psd_variable_values(prog, lowered, y, Y);

  detail::CheckRng rng;
  BigFloat worst(0);
  std::size_t used = 0;

  for (std::size_t j = 0; j < prog.constraints.size(); ++j) {
    const PolyConstraint& con = prog.constraints[j];
    const LoweringInput& input = inputs[j];

    // Owning cluster and the recorded blocks of this constraint, in order.
    std::size_t cj = SIZE_MAX;
    for (std::size_t g = 0; g < lowered.records.size(); ++g)
      for (std::size_t owned : lowered.records[g].constraints)
        if (owned == j) cj = g;
    if (cj == SIZE_MAX) throw std::invalid_argument("check: constraint missing from records");
    const auto& rec = lowered.records[cj];
    std::vector<std::size_t> block_pos;
    for (std::size_t l = 0; l < rec.blocks.size(); ++l)
      if (rec.blocks[l].constraint == j) block_pos.push_back(l);

    // Weight list {1} ∪ G, as lowered.
    std::vector<Polynomial> weights;
    weights.push_back(Polynomial::constant(con.num_vars, BigFloat(1)));
    for (const auto& g : con.domain) weights.push_back(g);

    // Fresh points inside the sample bounding box.
    const std::size_t nv = con.num_vars;
    std::vector<BigFloat> lo(nv), hi(nv);
    for (std::size_t c = 0; c < nv; ++c) {
      lo[c] = input.samples.points.at(0).at(c);
      hi[c] = lo[c];
    }
    for (const auto& pt : input.samples.points)
      for (std::size_t c = 0; c < nv; ++c) {
        lo[c] = min(lo[c], pt[c]);
        hi[c] = max(hi[c], pt[c]);
      }
    const std::size_t npts = nv == 0 ? 1 : points;

    for (std::size_t k = 0; k < npts; ++k) {
      std::vector<BigFloat> t(nv);
      for (std::size_t c = 0; c < nv; ++c) t[c] = lo[c] + rng.next01() * (hi[c] - lo[c]);

      // Constraint side M(t) = P0 + Σ_v y_v·C_v + Σ ⟨W(t), F⟩·E_{row,col}.
      DenseMatrix m = con.p0.eval(t);
      for (const auto& kv : con.coeff) {
        DenseMatrix cv = kv.second.eval(t);
        for (std::size_t r = 0; r < con.mult; ++r)
          for (std::size_t s = 0; s < con.mult; ++s) m(r, s).add_mul(y.at(kv.first), cv(r, s));
      }
      for (const auto& term : con.psd_terms) {
        DenseMatrix w = term.weight.eval(t);
        m(term.row, term.col) += frobenius_inner(w, psd[term.var]);
      }

      // Certificate side S(t): recorded SOS blocks through the basis transform.
      DenseMatrix sos(con.mult, con.mult);
      std::vector<BigFloat> bvals;
      if (!con.symmetric) bvals = sampled_basis_at(input.symbolic_basis, input.basis_transform, t);
      std::size_t bp = 0;
      for (const auto& g : weights) {
        BigFloat gval = g.eval(t);
        if (con.symmetric) {
          long deg_g = g.degree() < 0 ? 0 : g.degree();
          long budget = (input.space_degree - deg_g) / 2;
          for (const auto& family : input.invariant_blocks) {
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < family.degrees.size(); ++i)
              if (family.degrees[i] <= budget) rows.push_back(i);
            if (rows.empty()) continue;
            if (bp >= block_pos.size() ||
                rec.blocks[block_pos[bp]].basis_size != rows.size())
              throw std::invalid_argument("check: recorded blocks disagree with the program");
            const DenseMatrix& q = Y[cj].block(block_pos[bp]);
            ++bp;
            BigFloat quad(0);
            for (std::size_t col = 0; col < family.d_pi; ++col) {
              std::vector<BigFloat> v(rows.size());
              for (std::size_t i = 0; i < rows.size(); ++i)
                v[i] = family.factors(rows[i], col).eval(t);
              for (std::size_t a = 0; a < v.size(); ++a)
                for (std::size_t b = 0; b < v.size(); ++b) quad.add_mul(v[a] * v[b], q(a, b));
            }
            sos(0, 0).add_mul(gval, quad / BigFloat(static_cast<long>(family.d_pi)));
          }
        } else {
          if (bp >= block_pos.size())
            throw std::invalid_argument("check: recorded blocks disagree with the program");
          const auto& info = rec.blocks[block_pos[bp]];
          const DenseMatrix& q = Y[cj].block(block_pos[bp]);
          ++bp;
          const std::size_t bs = info.basis_size;
          for (std::size_t r = 0; r < con.mult; ++r)
            for (std::size_t s = r; s < con.mult; ++s) {
              BigFloat quad(0);
              for (std::size_t a = 0; a < bs; ++a)
                for (std::size_t b = 0; b < bs; ++b)
                  quad.add_mul(bvals[a] * bvals[b], q(r * bs + a, s * bs + b));
              sos(r, s).add_mul(gval, quad);
            }
        }
      }
      if (bp != block_pos.size())
        throw std::invalid_argument("check: recorded blocks disagree with the program");

      for (std::size_t r = 0; r < con.mult; ++r)
        for (std::size_t s = r; s < con.mult; ++s) worst = max(worst, abs(sos(r, s) - m(r, s)));
      ++used;
    }
  }
  if (evaluated) *evaluated = used;
  return worst;
}

}  // namespace clrs

#endif  // CLRS_VERIFY_HPP
