#ifndef CLRS_PMP_HPP
#define CLRS_PMP_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clrs/dense.hpp"
#include "clrs/errors.hpp"
#include "clrs/lowrank.hpp"
#include "clrs/polynomial.hpp"
#include "clrs/sampling.hpp"
#include "clrs/sdp.hpp"
#include "clrs/symmetry.hpp"

namespace clrs {

// ---- polynomial matrix programs ----------------------------------------------
//
// Canonical maximization form:
//
//   maximize  objective·y + sum_v <psd_objective_v, F_v>  (+ report transform)
//   s.t.      P_0^j(x) + sum_i y_i·C_i^j(x) + sum <W^j_v(x), F_v> is PSD on S(G_j)
//             F_v PSD
//
// Lowering replaces each PSD-on-a-domain constraint by membership in the
// truncated quadratic module of G_j and samples the resulting polynomial
// identity on a minimal unisolvent set.

// Contribution <weight(x), F_var> added to entry (row, col) of a constraint.
struct PsdVarTerm {
  std::size_t var = 0;
  std::size_t row = 0, col = 0;
  PolynomialMatrix weight;       // dim_v × dim_v, symmetric entries
  std::size_t rank_bound = 0;    // structural rank of weight evaluations; 0 = no bound
};

struct PolyConstraint {
  std::size_t num_vars = 0;                    // arity of all polynomials (0 allowed)
  std::size_t mult = 1;                        // m: constraint matrix is m×m
  PolynomialMatrix p0;                         // constant part
  std::map<std::size_t, PolynomialMatrix> coeff;  // free variable -> coefficient matrix
  std::vector<Polynomial> domain;              // G (weights added on top of the implicit 1)
  std::vector<PsdVarTerm> psd_terms;
  bool symmetric = false;                      // lower via invariant blocks (mult must be 1)
};

struct PsdVariable {
  std::size_t dim = 0;
  DenseMatrix objective;  // dim×dim coefficient of <., F> in the maximization
};

struct PolyMatrixProgram {
  std::size_t num_free = 0;
  std::vector<BigFloat> objective;       // length num_free
  std::vector<PsdVariable> psd_vars;
  std::vector<PolyConstraint> constraints;
  // Reported bound = report_constant + report_sign·(optimum of the max form).
  BigFloat report_constant{0};
  BigFloat report_sign{1};
};

// ---- SOS block planning --------------------------------------------------------

struct SOSBlockSpec {
  Polynomial weight;       // g, or the constant 1
  long degree_budget;      // floor((2d - deg g)/2)
  std::size_t basis_size;  // elements of the supplied degree list with degree <= budget
  std::size_t mult;        // m
  std::size_t block_dim;   // basis_size · mult
};

// Plans one SOS block per weight in {1} ∪ domain for total degree 2d: weight g
// gets the basis prefix of degree <= floor((2d - deg g)/2).
inline std::vector<SOSBlockSpec> sos_blocks(const std::vector<Polynomial>& domain, long d,
                                            std::size_t mult,
                                            const std::vector<long>& basis_degrees) {
  if (d < 0) throw std::invalid_argument("sos_blocks: negative degree");
  std::size_t num_vars = domain.empty() ? 0 : domain[0].num_vars();
  std::vector<Polynomial> weights;
  weights.push_back(Polynomial::constant(num_vars, BigFloat(1)));
  for (const auto& g : domain) weights.push_back(g);

  std::vector<SOSBlockSpec> out;
  for (const auto& g : weights) {
    long deg_g = g.degree() < 0 ? 0 : g.degree();
    long budget = (2 * d - deg_g) / 2;
    if (2 * d < deg_g || budget < 0)
      throw InconsistentDegrees("sos_blocks: weight of degree " + std::to_string(deg_g) +
                                " leaves an empty basis at total degree " + std::to_string(2 * d));
    SOSBlockSpec spec;
    spec.weight = g;
    spec.degree_budget = budget;
    spec.basis_size = 0;
    for (long deg : basis_degrees)
      if (deg <= budget) ++spec.basis_size;
    if (spec.basis_size == 0)
      throw InconsistentDegrees("sos_blocks: supplied basis has no element within budget " +
                                std::to_string(budget));
    spec.mult = mult;
    spec.block_dim = spec.basis_size * mult;
    out.push_back(std::move(spec));
  }
  return out;
}

// ---- low-rank decomposition of evaluated matrices ------------------------------

// Greedy full-pivot decomposition of a symmetric matrix into symmetric rank-1
// terms (1×1 pivots on the diagonal, 2×2 block pivots split spectrally), so
// the term count equals the numerical rank.  Throws RankBoundViolated when the
// residual is still above tolerance after max_terms terms (0 = no bound).
inline std::vector<LowRankTerm> rank1_decompose(const DenseMatrix& m, std::size_t max_terms = 0) {
  if (m.rows() != m.cols()) throw std::invalid_argument("rank1_decompose: matrix must be square");
  std::size_t n = m.rows();
  if (max_terms == 0) max_terms = n;
  BigFloat tol = pow2(20 - static_cast<long>(working_precision())) * max(BigFloat(1), m.max_abs());

  DenseMatrix r = m;
  std::vector<LowRankTerm> terms;
  auto column = [&](std::size_t j) {
    std::vector<BigFloat> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = r(i, j);
    return c;
  };
  while (true) {
    BigFloat best(0);
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        BigFloat a = abs(r(i, j));
        if (a > best) {
          best = a;
          bi = i;
          bj = j;
        }
      }
    if (best <= tol) break;
    if (bi == bj) {
      if (terms.size() + 1 > max_terms)
        throw RankBoundViolated("rank1_decompose: residual " + to_string(best) +
                                " above tolerance after " + std::to_string(max_terms) + " terms");
      std::vector<BigFloat> c = column(bi);
      BigFloat pivot = r(bi, bi);
      LowRankTerm term;
      term.lambda = pivot;
      BigFloat inv = BigFloat(1) / pivot;
      term.v.resize(n);
      for (std::size_t i = 0; i < n; ++i) term.v[i] = c[i] * inv;
      term.w = term.v;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) -= term.lambda * term.v[i] * term.v[j];
      terms.push_back(std::move(term));
    } else {
      // Symmetric 2×2 block pivot: subtract C·P⁻¹·Cᵀ with C = [c_i c_j],
      // P = [[r_ii, r_ij], [r_ij, r_jj]].  Full pivoting makes det(P) < 0
      // whenever the off-diagonal strictly dominates, so P is invertible.
      if (terms.size() + 2 > max_terms)
        throw RankBoundViolated("rank1_decompose: residual " + to_string(best) +
                                " above tolerance after " + std::to_string(max_terms) + " terms");
      BigFloat pii = r(bi, bi), pij = r(bi, bj), pjj = r(bj, bj);
      BigFloat det = pii * pjj - pij * pij;
      BigFloat d = pjj / det, e = -pij / det, f = pii / det;  // P⁻¹ = [[d,e],[e,f]]
      // Spectral split of P⁻¹ into two symmetric rank-1 pieces.
      BigFloat tau = (d + f) * BigFloat(0.5);
      BigFloat delta = sqrt((d - f) * (d - f) * BigFloat(0.25) + e * e);
      BigFloat l1 = tau + delta, l2 = tau - delta;
      // Eigenvector for l1: (e, l1 - d) unless degenerate, then (l1 - f, e).
      BigFloat w1x = e, w1y = l1 - d;
      BigFloat norm1 = sqrt(w1x * w1x + w1y * w1y);
      if (norm1.is_zero()) {
        w1x = l1 - f;
        w1y = e;
        norm1 = sqrt(w1x * w1x + w1y * w1y);
      }
      w1x /= norm1;
      w1y /= norm1;
      BigFloat w2x = -w1y, w2y = w1x;  // orthogonal complement
      std::vector<BigFloat> ci = column(bi), cj = column(bj);
      auto emit = [&](const BigFloat& lambda, const BigFloat& ax, const BigFloat& ay) {
        LowRankTerm term;
        term.lambda = lambda;
        term.v.resize(n);
        for (std::size_t i = 0; i < n; ++i) term.v[i] = ci[i] * ax + cj[i] * ay;
        term.w = term.v;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) r(i, j) -= lambda * term.v[i] * term.v[j];
        terms.push_back(std::move(term));
      };
      emit(l1, w1x, w1y);
      emit(l2, w2x, w2y);
    }
  }
  return terms;
}

// ---- lowering ------------------------------------------------------------------

enum class LoweringMode { A, B };

// Per-constraint sampling data prepared by the caller.
struct LoweringInput {
  SampleSet samples;
  long space_degree = 0;  // degree of the sampled polynomial space (2d)
  // Non-symmetric path: values of a degree-graded basis of the sampled space
  // on `samples` (column k = basis element k), typically sample-orthogonal.
  DenseMatrix basis_values;
  std::vector<long> basis_degrees;
  // Provenance for back-transformation and fresh-point identity checks:
  // basis_values(l, k) = symbolic_basis_k'(x_l)·basis_transform(k', k).
  PolyBasis symbolic_basis;
  DenseMatrix basis_transform;
  // Symmetric path (scalar constraints): invariant block family covering
  // degree budget space_degree/2; weight budgets filter it by row degree.
  std::vector<InvariantBlock> invariant_blocks;
};

struct LoweredProgram {
  ClusteredSDP sdp;
  BigFloat report_constant{0};
  BigFloat report_sign{1};
  std::size_t num_original_free = 0;

  // Mode B: free variables beyond num_original_free are vech entries of the
  // PSD variables, in this order.
  struct VechEntry {
    std::size_t var, row, col;
  };
  std::vector<VechEntry> vech_map;

  struct BlockInfo {
    std::size_t constraint = SIZE_MAX;  // owning constraint (SOS blocks)
    std::size_t weight = SIZE_MAX;      // index into {1} ∪ G
    std::size_t irrep = SIZE_MAX;       // symmetric path only
    std::size_t psd_var = SIZE_MAX;     // mode A PSD-variable blocks / mode B links
    std::size_t basis_size = 0;
    std::size_t mult = 1;
    long degree_budget = -1;
  };
  struct ClusterRecord {
    std::vector<std::size_t> constraints;            // PMP constraints in this cluster
    std::vector<BlockInfo> blocks;
    std::vector<std::array<std::size_t, 3>> row_layout;  // (constraint, sample, pair index)
    std::vector<BigFloat> row_scales;                // applied divisor per row
  };
  std::vector<ClusterRecord> records;  // aligned with sdp.clusters
};

namespace detail {

struct WeightPlan {
  Polynomial weight;
  long budget;
  std::size_t basis_size = 0;                         // non-symmetric
  std::vector<std::vector<std::size_t>> irrep_rows;   // symmetric: kept rows per family block
};

inline std::size_t pair_count(std::size_t m) { return m * (m + 1) / 2; }

inline std::pair<std::size_t, std::size_t> pair_from_index(std::size_t m, std::size_t idx) {
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t row_pairs = m - r;
    if (idx < row_pairs) return {r, r + idx};
    idx -= row_pairs;
  }
  throw std::logic_error("pair_from_index: out of range");
}

}  // namespace detail

// Lowers the program to a clustered low-rank SDP.  inputs[j] supplies the
// sample set and basis data for constraint j.  Mode A keeps PSD variables as
// blocks inside the constraint clusters (merging clusters that share one);
// mode B turns their entries into free variables plus rank-1 linking clusters.
inline LoweredProgram lower(const PolyMatrixProgram& program,
                            const std::vector<LoweringInput>& inputs, LoweringMode mode) {
  if (inputs.size() != program.constraints.size())
    throw std::invalid_argument("lower: one LoweringInput per constraint required");
  const std::size_t num_constraints = program.constraints.size();
  const std::size_t num_psd = program.psd_vars.size();

  // ---- effective free variables and objective ----
  LoweredProgram out;
  out.report_constant = program.report_constant;
  out.report_sign = program.report_sign;
  out.num_original_free = program.num_free;
  std::vector<BigFloat> objective = program.objective;
  if (objective.size() != program.num_free)
    throw std::invalid_argument("lower: objective length must equal num_free");

  // Mode B: vech index bookkeeping.
  std::vector<std::size_t> vech_offset(num_psd, 0);
  if (mode == LoweringMode::B) {
    std::size_t next = program.num_free;
    for (std::size_t v = 0; v < num_psd; ++v) {
      vech_offset[v] = next;
      const PsdVariable& pv = program.psd_vars[v];
      for (std::size_t a = 0; a < pv.dim; ++a)
        for (std::size_t b = a; b < pv.dim; ++b) {
          out.vech_map.push_back({v, a, b});
          BigFloat coeff(0);
          if (pv.objective.rows() == pv.dim) {
            coeff = pv.objective(a, b);
            if (a != b) coeff += pv.objective(b, a);  // symmetric pair counts twice
          }
          objective.push_back(coeff);
          ++next;
        }
    }
  }
  const std::size_t num_free = objective.size();

  // ---- cluster grouping ----
  // Mode B: one cluster per constraint plus one linking cluster per PSD
  // variable.  Mode A: constraints sharing a PSD variable merge.
  std::vector<std::vector<std::size_t>> groups;           // constraint indices per cluster
  std::vector<std::vector<std::size_t>> group_psd_vars;   // mode A: PSD blocks per cluster
  if (mode == LoweringMode::B) {
    for (std::size_t j = 0; j < num_constraints; ++j) groups.push_back({j});
    group_psd_vars.assign(num_constraints, {});
  } else {
    std::vector<std::size_t> parent(num_constraints);
    for (std::size_t j = 0; j < num_constraints; ++j) parent[j] = j;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::vector<std::ptrdiff_t> owner(num_psd, -1);
    for (std::size_t j = 0; j < num_constraints; ++j)
      for (const auto& term : program.constraints[j].psd_terms) {
        if (term.var >= num_psd) throw std::invalid_argument("lower: PSD term var out of range");
        if (owner[term.var] < 0)
          owner[term.var] = static_cast<std::ptrdiff_t>(j);
        else
          parent[find(static_cast<std::size_t>(owner[term.var]))] = find(j);
      }
    std::map<std::size_t, std::size_t> root_to_group;
    for (std::size_t j = 0; j < num_constraints; ++j) {
      std::size_t root = find(j);
      auto ins = root_to_group.emplace(root, groups.size());
      if (ins.second) {
        groups.emplace_back();
        group_psd_vars.emplace_back();
      }
      groups[ins.first->second].push_back(j);
    }
    std::vector<bool> placed(num_psd, false);
    for (std::size_t v = 0; v < num_psd; ++v)
      if (owner[v] >= 0) {
        std::size_t g = root_to_group.at(find(static_cast<std::size_t>(owner[v])));
        group_psd_vars[g].push_back(v);
        placed[v] = true;
      }
    // PSD variables appearing in no constraint get their own cluster.
    for (std::size_t v = 0; v < num_psd; ++v)
      if (!placed[v]) {
        groups.emplace_back();
        group_psd_vars.push_back({v});
      }
  }

  // ---- per-constraint weight planning ----
  std::vector<std::vector<detail::WeightPlan>> plans(num_constraints);
  for (std::size_t j = 0; j < num_constraints; ++j) {
    const PolyConstraint& con = program.constraints[j];
    const LoweringInput& input = inputs[j];
    if (con.mult == 0) throw std::invalid_argument("lower: constraint multiplicity 0");
    if (con.symmetric && con.mult != 1)
      throw std::invalid_argument("lower: symmetric lowering supports scalar constraints only");
    if (con.p0.rows() != con.mult || con.p0.cols() != con.mult)
      throw std::invalid_argument("lower: P0 dimension mismatch");
    long d_space = input.space_degree;
    if (d_space < 0 || d_space % 2 != 0)
      throw std::invalid_argument("lower: sampled space degree must be even and nonnegative");
    auto check_degree = [&](const PolynomialMatrix& pm, const char* what) {
      if (pm.degree() > d_space)
        throw InconsistentDegrees(std::string("lower: ") + what + " of constraint " +
                                  std::to_string(j) + " has degree " +
                                  std::to_string(pm.degree()) +
                                  " exceeding the sampled space degree " +
                                  std::to_string(d_space));
    };
    check_degree(con.p0, "P0");
    for (const auto& kv : con.coeff) {
      if (kv.first >= program.num_free)
        throw std::invalid_argument("lower: coefficient refers to unknown free variable");
      if (kv.second.rows() != con.mult || kv.second.cols() != con.mult)
        throw std::invalid_argument("lower: coefficient dimension mismatch");
      check_degree(kv.second, "coefficient");
    }
    for (const auto& term : con.psd_terms) {
      if (term.var >= num_psd) throw std::invalid_argument("lower: PSD term var out of range");
      if (term.weight.rows() != program.psd_vars[term.var].dim ||
          term.weight.cols() != program.psd_vars[term.var].dim)
        throw std::invalid_argument("lower: PSD term weight dimension mismatch");
      if (term.row >= con.mult || term.col >= con.mult || term.row > term.col)
        throw std::invalid_argument("lower: PSD term entry out of range (need row <= col)");
      check_degree(term.weight, "PSD weight");
    }

    std::vector<Polynomial> weights;
    weights.push_back(Polynomial::constant(con.num_vars, BigFloat(1)));
    for (const auto& g : con.domain) weights.push_back(g);

    for (const auto& g : weights) {
      long deg_g = g.degree() < 0 ? 0 : g.degree();
      long budget = (d_space - deg_g) / 2;
      if (deg_g > d_space || budget < 0)
        throw InconsistentDegrees("lower: weight degree " + std::to_string(deg_g) +
                                  " exceeds the sampled space degree " +
                                  std::to_string(d_space));
      detail::WeightPlan plan;
      plan.weight = g;
      plan.budget = budget;
      if (con.symmetric) {
        if (input.invariant_blocks.empty())
          throw std::invalid_argument("lower: symmetric constraint needs invariant blocks");
        for (const auto& family : input.invariant_blocks) {
          std::vector<std::size_t> rows;
          for (std::size_t i = 0; i < family.degrees.size(); ++i)
            if (family.degrees[i] <= budget) rows.push_back(i);
          plan.irrep_rows.push_back(std::move(rows));
        }
      } else {
        if (input.basis_values.rows() != input.samples.size() ||
            input.basis_degrees.size() != input.basis_values.cols())
          throw std::invalid_argument("lower: basis values/degrees inconsistent with samples");
        for (long deg : input.basis_degrees)
          if (deg <= budget) ++plan.basis_size;
        if (plan.basis_size == 0)
          throw InconsistentDegrees("lower: empty SOS basis for a weight of degree " +
                                    std::to_string(deg_g));
      }
      plans[j].push_back(std::move(plan));
    }
  }

  // ---- assemble clusters ----
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    Cluster cluster;
    LoweredProgram::ClusterRecord record;
    record.constraints = groups[gi];

    // Block layout: SOS blocks of each constraint, then (mode A) PSD blocks.
    std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> sos_block_index(
        num_constraints);  // (weight, irrep-or-0) -> block position
    for (std::size_t j : groups[gi]) {
      const PolyConstraint& con = program.constraints[j];
      for (std::size_t w = 0; w < plans[j].size(); ++w) {
        const auto& plan = plans[j][w];
        if (con.symmetric) {
          for (std::size_t f = 0; f < plan.irrep_rows.size(); ++f) {
            if (plan.irrep_rows[f].empty()) continue;
            sos_block_index[j][{w, f}] = cluster.shapes.size();
            cluster.shapes.push_back({plan.irrep_rows[f].size(), 1});
            LoweredProgram::BlockInfo info;
            info.constraint = j;
            info.weight = w;
            info.irrep = inputs[j].invariant_blocks[f].irrep;
            info.basis_size = plan.irrep_rows[f].size();
            info.degree_budget = plan.budget;
            record.blocks.push_back(info);
          }
        } else {
          sos_block_index[j][{w, 0}] = cluster.shapes.size();
          cluster.shapes.push_back({plan.basis_size, con.mult});
          LoweredProgram::BlockInfo info;
          info.constraint = j;
          info.weight = w;
          info.basis_size = plan.basis_size;
          info.mult = con.mult;
          info.degree_budget = plan.budget;
          record.blocks.push_back(info);
        }
      }
    }
    std::map<std::size_t, std::size_t> psd_block_index;  // psd var -> block position
    for (std::size_t v : group_psd_vars[gi]) {
      psd_block_index[v] = cluster.shapes.size();
      cluster.shapes.push_back({program.psd_vars[v].dim, 1});
      LoweredProgram::BlockInfo info;
      info.psd_var = v;
      info.basis_size = program.psd_vars[v].dim;
      record.blocks.push_back(info);
    }

    // Objective matrices C^j: zero except mode-A PSD blocks.
    cluster.C = BlockDiagMatrix();
    for (const auto& shape : cluster.shapes)
      cluster.C.blocks().emplace_back(shape.dim(), shape.dim());
    for (std::size_t v : group_psd_vars[gi]) {
      const PsdVariable& pv = program.psd_vars[v];
      if (pv.objective.rows() == pv.dim) {
        DenseMatrix c = pv.objective;
        c.symmetrize();
        cluster.C.block(psd_block_index.at(v)) = std::move(c);
      }
    }

    // Rows.
    std::size_t total_rows = 0;
    for (std::size_t j : groups[gi])
      total_rows += inputs[j].samples.size() * detail::pair_count(program.constraints[j].mult);
    cluster.B = DenseMatrix(total_rows, num_free);
    cluster.c.assign(total_rows, BigFloat(0));
    cluster.constraints.resize(total_rows);

    std::size_t row = 0;
    for (std::size_t j : groups[gi]) {
      const PolyConstraint& con = program.constraints[j];
      const LoweringInput& input = inputs[j];
      std::size_t pairs = detail::pair_count(con.mult);
      // Evaluate weights once per sample.
      for (std::size_t k = 0; k < input.samples.size(); ++k) {
        const auto& x = input.samples.points[k];
        std::vector<BigFloat> weight_vals;
        for (const auto& plan : plans[j]) weight_vals.push_back(plan.weight.eval(x));
        DenseMatrix p0_val = con.p0.eval(x);
        std::map<std::size_t, DenseMatrix> coeff_vals;
        for (const auto& kv : con.coeff) coeff_vals.emplace(kv.first, kv.second.eval(x));
        std::vector<DenseMatrix> psd_weight_vals;
        for (const auto& term : con.psd_terms) psd_weight_vals.push_back(term.weight.eval(x));

        for (std::size_t pi = 0; pi < pairs; ++pi, ++row) {
          auto [r, s] = detail::pair_from_index(con.mult, pi);
          record.row_layout.push_back({j, k, pi});
          ConstraintMatrix& a = cluster.constraints[row];

          // SOS contributions: +g(x_k)·(b b^T ⊗ E_rs), symmetrized.
          for (std::size_t w = 0; w < plans[j].size(); ++w) {
            const auto& plan = plans[j][w];
            BigFloat lambda_base = weight_vals[w];
            if (lambda_base.is_zero()) continue;
            if (con.symmetric) {
              for (std::size_t f = 0; f < plan.irrep_rows.size(); ++f) {
                const auto& rows_kept = plan.irrep_rows[f];
                if (rows_kept.empty()) continue;
                const InvariantBlock& family = input.invariant_blocks[f];
                SubBlockTerms sub;
                sub.l = sos_block_index[j].at({w, f});
                sub.r = 0;
                sub.s = 0;
                BigFloat lam = lambda_base / BigFloat(static_cast<long>(family.d_pi));
                for (std::size_t col = 0; col < family.d_pi; ++col) {
                  LowRankTerm term;
                  term.lambda = lam;
                  term.v.reserve(rows_kept.size());
                  for (std::size_t i : rows_kept)
                    term.v.push_back(family.factors(i, col).eval(x));
                  term.w = term.v;
                  sub.terms.push_back(std::move(term));
                }
                a.entries.push_back(std::move(sub));
              }
            } else {
              SubBlockTerms sub;
              sub.l = sos_block_index[j].at({w, 0});
              sub.r = r;
              sub.s = s;
              LowRankTerm term;
              term.lambda = r == s ? lambda_base : lambda_base * BigFloat(0.5);
              term.v.reserve(plan.basis_size);
              for (std::size_t col = 0; col < plan.basis_size; ++col)
                term.v.push_back(input.basis_values(k, col));
              term.w = term.v;
              sub.terms.push_back(std::move(term));
              a.entries.push_back(std::move(sub));
            }
          }

          // Free-variable row: (B y)_p picks up -C_i(x_k)[r,s].
          for (const auto& kv : coeff_vals) cluster.B(row, kv.first) = -kv.second(r, s);

          // PSD-variable terms.
          for (std::size_t t = 0; t < con.psd_terms.size(); ++t) {
            const PsdVarTerm& term = con.psd_terms[t];
            if (term.row != r || term.col != s) continue;
            const DenseMatrix& w_val = psd_weight_vals[t];
            if (mode == LoweringMode::B) {
              // <W, F> = sum_a W_aa F_aa + 2·sum_{a<b} W_ab F_ab.
              std::size_t idx = vech_offset[term.var];
              const std::size_t dim = program.psd_vars[term.var].dim;
              for (std::size_t aa = 0; aa < dim; ++aa)
                for (std::size_t bb = aa; bb < dim; ++bb, ++idx) {
                  BigFloat coeff = w_val(aa, bb);
                  if (aa != bb) coeff += w_val(bb, aa);
                  cluster.B(row, idx) -= coeff;
                }
            } else {
              DenseMatrix sym = w_val;
              sym.symmetrize();
              std::vector<LowRankTerm> terms = rank1_decompose(sym, term.rank_bound);
              SubBlockTerms sub;
              sub.l = psd_block_index.at(term.var);
              sub.r = 0;
              sub.s = 0;
              for (auto& lr : terms) {
                lr.lambda.negate();
                sub.terms.push_back(std::move(lr));
              }
              if (!sub.terms.empty()) a.entries.push_back(std::move(sub));
            }
          }

          cluster.c[row] = p0_val(r, s);
        }
      }
    }

    // Row rescaling to max-abs ≈ 1 (recorded, inverted when mapping back).
    record.row_scales.assign(total_rows, BigFloat(1));
    for (std::size_t p = 0; p < total_rows; ++p) {
      BigFloat scale = abs(cluster.c[p]);
      for (std::size_t i = 0; i < num_free; ++i) scale = max(scale, abs(cluster.B(p, i)));
      for (const auto& sub : cluster.constraints[p].entries)
        for (const auto& term : sub.terms) {
          BigFloat vmax(0), wmax(0);
          for (const auto& e : term.v) vmax = max(vmax, abs(e));
          for (const auto& e : term.w) wmax = max(wmax, abs(e));
          scale = max(scale, abs(term.lambda) * vmax * wmax);
        }
      if (scale.is_zero() || !scale.is_finite()) continue;
      BigFloat inv = BigFloat(1) / scale;
      record.row_scales[p] = scale;
      cluster.c[p] *= inv;
      for (std::size_t i = 0; i < num_free; ++i) cluster.B(p, i) *= inv;
      for (auto& sub : cluster.constraints[p].entries)
        for (auto& term : sub.terms) term.lambda *= inv;
    }

    out.sdp.clusters.push_back(std::move(cluster));
    out.records.push_back(std::move(record));
  }

  // Mode B linking clusters: H_v PSD with H_v[a,b] = y_{vech(v,a,b)}.
  if (mode == LoweringMode::B) {
    for (std::size_t v = 0; v < num_psd; ++v) {
      const std::size_t dim = program.psd_vars[v].dim;
      Cluster link;
      link.shapes.push_back({dim, 1});
      link.C.blocks().emplace_back(dim, dim);
      std::size_t rows = detail::pair_count(dim);
      link.B = DenseMatrix(rows, num_free);
      link.c.assign(rows, BigFloat(0));
      link.constraints.resize(rows);
      LoweredProgram::ClusterRecord record;
      std::size_t idx = vech_offset[v];
      std::size_t row = 0;
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a; b < dim; ++b, ++idx, ++row) {
          SubBlockTerms sub;
          sub.l = 0;
          sub.r = 0;
          sub.s = 0;
          auto unit = [&](std::size_t pos) {
            std::vector<BigFloat> u(dim, BigFloat(0));
            u[pos] = BigFloat(1);
            return u;
          };
          if (a == b) {
            sub.terms.push_back({BigFloat(1), unit(a), unit(a)});
          } else {
            sub.terms.push_back({BigFloat(0.5), unit(a), unit(b)});
            sub.terms.push_back({BigFloat(0.5), unit(b), unit(a)});
          }
          link.constraints[row].entries.push_back(std::move(sub));
          link.B(row, idx) = BigFloat(-1);
          record.row_layout.push_back({SIZE_MAX, v, row});
          record.row_scales.push_back(BigFloat(1));
        }
      LoweredProgram::BlockInfo info;
      info.psd_var = v;
      info.basis_size = dim;
      record.blocks.push_back(info);
      out.sdp.clusters.push_back(std::move(link));
      out.records.push_back(std::move(record));
    }
  }

  out.sdp.b = std::move(objective);
  out.sdp.validate();
  return out;
}

}  // namespace clrs

#endif  // CLRS_PMP_HPP
