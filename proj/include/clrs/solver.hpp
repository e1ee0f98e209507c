#ifndef CLRS_SOLVER_HPP
#define CLRS_SOLVER_HPP

// Primal-dual interior-point method for clustered low-rank SDPs.
//
// Each iteration: residuals → per-cluster Schur complements S^j_pq =
// ⟨A_p, X⁻¹ A_q Y⟩ assembled from low-rank pairings → bordered saddle solve
// for (dx, dy) → recover (dX, dY) → Mehrotra predictor/corrector → separate
// primal/dual step lengths from Lanczos bounds.  All cross-block reductions
// run in fixed block order so results are identical for every thread count.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clrs/sdp.hpp"
#include "clrs/steplen.hpp"
#include "clrs/threads.hpp"

namespace clrs {

struct SolverOptions {
  long precision = 256;            // bits (informational here; set globally by the caller)
  BigFloat beta_infeasible{0.3};   // centering strength while infeasible
  BigFloat beta_feasible{0.1};     // centering strength once feasible
  BigFloat gamma{0.9};             // step-length safety factor
  BigFloat gap_tol{std::string("1e-30")};
  BigFloat primal_tol{std::string("1e-30")};
  BigFloat dual_tol{std::string("1e-30")};
  std::size_t max_iterations = 500;
  BigFloat omega = pow2(20);       // initial point X = Y = Ω·I
  std::size_t threads = 1;
};

struct SolverState {
  std::vector<std::vector<BigFloat>> x;  // per cluster, length P_j
  std::vector<BlockDiagMatrix> X;        // per cluster
  std::vector<BigFloat> y;               // length N
  std::vector<BlockDiagMatrix> Y;        // per cluster
  BigFloat mu{0};
};

struct Residuals {
  std::vector<BlockDiagMatrix> P;        // primal matrix residual per cluster
  std::vector<std::vector<BigFloat>> d;  // dual residual per cluster
  std::vector<BigFloat> q;               // free-variable residual, length N
};

struct Direction {
  std::vector<std::vector<BigFloat>> dx;
  std::vector<BlockDiagMatrix> dX;
  std::vector<BigFloat> dy;
  std::vector<BlockDiagMatrix> dY;
};

enum class SolverStatus { Optimal, PrimalDualOptimal, MaxIterations, NumericalFailure };

inline const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Optimal: return "Optimal";
    case SolverStatus::PrimalDualOptimal: return "PrimalDualOptimal";
    case SolverStatus::MaxIterations: return "MaxIterations";
    case SolverStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

struct SolverResult {
  SolverStatus status = SolverStatus::NumericalFailure;
  SolverState state;
  BigFloat primal_objective{0};
  BigFloat dual_objective{0};
  BigFloat duality_gap{0};    // |p−d| / max(1, |p|+|d|)
  BigFloat primal_error{0};   // max-abs over P blocks and q entries
  BigFloat dual_error{0};     // max-abs over d entries
  std::size_t iterations = 0;
  std::string message;
  std::vector<BigFloat> mu_history;  // μ at the top of each iteration
};

// ---------------------------------------------------------------------------
// residuals
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<BigFloat> matvec(const DenseMatrix& m, const std::vector<BigFloat>& v) {
  std::vector<BigFloat> r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigFloat s(0);
    for (std::size_t j = 0; j < m.cols(); ++j) s.add_mul(m(i, j), v[j]);
    r[i] = s;
  }
  return r;
}

inline std::vector<BigFloat> matvec_t(const DenseMatrix& m, const std::vector<BigFloat>& v) {
  std::vector<BigFloat> r(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    BigFloat s(0);
    for (std::size_t i = 0; i < m.rows(); ++i) s.add_mul(m(i, j), v[i]);
    r[j] = s;
  }
  return r;
}

inline BigFloat dot(const std::vector<BigFloat>& a, const std::vector<BigFloat>& b) {
  BigFloat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s.add_mul(a[i], b[i]);
  return s;
}

inline DenseMatrix as_column(const std::vector<BigFloat>& v) {
  DenseMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

inline std::vector<BigFloat> as_vector(const DenseMatrix& m) {
  std::vector<BigFloat> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
  return v;
}

inline BigFloat max_abs(const std::vector<BigFloat>& v) {
  BigFloat m(0);
  for (const auto& e : v) {
    BigFloat a = abs(e);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace detail

inline Residuals residuals(const ClusteredSDP& prob, const SolverState& st) {
  const std::size_t nj = prob.clusters.size();
  Residuals res;
  res.P.resize(nj);
  res.d.resize(nj);
  res.q = prob.b;
  for (std::size_t j = 0; j < nj; ++j) {
    const Cluster& cl = prob.clusters[j];
    // P^j = Σ_p x_p A_p − C − X
    BlockDiagMatrix p = cl.zero_blocks();
    for (std::size_t pi = 0; pi < cl.constraints.size(); ++pi)
      add_scaled_constraint(p, st.x[j][pi], cl.constraints[pi], cl.shapes);
    p.add_scaled(BigFloat(-1), cl.C);
    p.add_scaled(BigFloat(-1), st.X[j]);
    p.symmetrize();
    res.P[j] = std::move(p);

    // d^j_p = c_p − ⟨A_p, Y⟩ − (B y)_p
    std::vector<BigFloat> by = detail::matvec(cl.B, st.y);
    res.d[j].resize(cl.constraints.size());
    for (std::size_t pi = 0; pi < cl.constraints.size(); ++pi)
      res.d[j][pi] = cl.c[pi] - constraint_inner(cl.constraints[pi], st.Y[j], cl.shapes) - by[pi];

    // q −= Bᵀ x^j
    std::vector<BigFloat> btx = detail::matvec_t(cl.B, st.x[j]);
    for (std::size_t i = 0; i < res.q.size(); ++i) res.q[i] -= btx[i];
  }
  return res;
}

// ---------------------------------------------------------------------------
// Schur complement assembly via stacked low-rank pairings
// ---------------------------------------------------------------------------

namespace detail {

// All rank-1 terms of all constraints of one cluster, expanded to full-block
// vectors inside block l (a term at sub-block (r,s) contributes column v at
// offset r·base into V and w at offset s·base into W; for r ≠ s the mirrored
// term (w at s, v at r) is appended too).
struct BlockPairing {
  DenseMatrix V, W;                 // dim(l) × T columns
  std::vector<std::size_t> owner;   // T: constraint index p
  std::vector<BigFloat> lambda;     // T
};

inline std::vector<BlockPairing> build_pairings(const Cluster& cl) {
  const std::size_t nl = cl.shapes.size();
  std::vector<std::size_t> counts(nl, 0);
  for (const auto& a : cl.constraints)
    for (const auto& e : a.entries) counts[e.l] += e.terms.size() * (e.r == e.s ? 1 : 2);
  std::vector<BlockPairing> out(nl);
  for (std::size_t l = 0; l < nl; ++l) {
    out[l].V = DenseMatrix(cl.shapes[l].dim(), counts[l]);
    out[l].W = DenseMatrix(cl.shapes[l].dim(), counts[l]);
    out[l].owner.reserve(counts[l]);
    out[l].lambda.reserve(counts[l]);
  }
  std::vector<std::size_t> cursor(nl, 0);
  for (std::size_t p = 0; p < cl.constraints.size(); ++p)
    for (const auto& e : cl.constraints[p].entries) {
      const std::size_t base = cl.shapes[e.l].base;
      BlockPairing& bp = out[e.l];
      for (const auto& t : e.terms) {
        std::size_t col = cursor[e.l]++;
        for (std::size_t i = 0; i < base; ++i) {
          bp.V(e.r * base + i, col) = t.v[i];
          bp.W(e.s * base + i, col) = t.w[i];
        }
        bp.owner.push_back(p);
        bp.lambda.push_back(t.lambda);
        if (e.r != e.s) {
          col = cursor[e.l]++;
          for (std::size_t i = 0; i < base; ++i) {
            bp.V(e.s * base + i, col) = t.w[i];
            bp.W(e.r * base + i, col) = t.v[i];
          }
          bp.owner.push_back(p);
          bp.lambda.push_back(t.lambda);
        }
      }
    }
  return out;
}

// S contribution of one block: S_pq += Σ_{α∈p,β∈q} λ_α λ_β PX[α,β]·PY[β,α]
// with PX = Wᵀ X⁻¹ V and PY = Wᵀ Y V.
inline DenseMatrix schur_block_contribution(const BlockPairing& bp, const DenseMatrix& x_chol,
                                            const DenseMatrix& y, std::size_t p_count) {
  DenseMatrix s(p_count, p_count);
  const std::size_t t_count = bp.owner.size();
  if (t_count == 0) return s;
  DenseMatrix tmp = solve_triangular(x_chol, bp.V, Side::Left, Transpose::No);
  DenseMatrix xinv_v = solve_triangular(x_chol, tmp, Side::Left, Transpose::Yes);
  DenseMatrix px = matmul(bp.W, xinv_v, Transpose::Yes, Transpose::No);
  DenseMatrix yv = matmul(y, bp.V);
  DenseMatrix py = matmul(bp.W, yv, Transpose::Yes, Transpose::No);
  for (std::size_t a = 0; a < t_count; ++a) {
    const BigFloat la = bp.lambda[a];
    const std::size_t pa = bp.owner[a];
    for (std::size_t bcol = 0; bcol < t_count; ++bcol) {
      BigFloat term = la * bp.lambda[bcol] * px(a, bcol) * py(bcol, a);
      s(pa, bp.owner[bcol]) += term;
    }
  }
  return s;
}

}  // namespace detail

inline std::vector<DenseMatrix> schur_blocks(const ClusteredSDP& prob, const SolverState& st,
                                             const std::vector<BlockDiagMatrix>& x_chol,
                                             std::size_t threads = 1) {
  const std::size_t nj = prob.clusters.size();
  std::vector<DenseMatrix> s(nj);
  // flatten (cluster, block) work items so small clusters don't serialize
  struct Item { std::size_t j, l; };
  std::vector<Item> items;
  std::vector<std::vector<detail::BlockPairing>> pairings(nj);
  for (std::size_t j = 0; j < nj; ++j) {
    pairings[j] = detail::build_pairings(prob.clusters[j]);
    for (std::size_t l = 0; l < prob.clusters[j].shapes.size(); ++l) items.push_back({j, l});
  }
  std::vector<DenseMatrix> partial(items.size());
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const Item& it = items[k];
    partial[k] = detail::schur_block_contribution(
        pairings[it.j][it.l], x_chol[it.j].block(it.l), st.Y[it.j].block(it.l),
        prob.clusters[it.j].num_constraints());
  });
  for (std::size_t j = 0; j < nj; ++j) {
    const std::size_t pj = prob.clusters[j].num_constraints();
    s[j] = DenseMatrix(pj, pj);
  }
  for (std::size_t k = 0; k < items.size(); ++k)
    s[items[k].j].add_scaled(BigFloat(1), partial[k]);
  for (auto& sj : s) sj.symmetrize();
  return s;
}

// ---------------------------------------------------------------------------
// bordered saddle-point system
// ---------------------------------------------------------------------------

struct SaddleSolution {
  std::vector<std::vector<BigFloat>> dx;
  std::vector<BigFloat> dy;
};

namespace detail {

// Cached factorization of [[S, −B], [Bᵀ, 0]].
struct SaddleFactorization {
  std::vector<DenseMatrix> s_chol;  // L_j, lower
  std::vector<DenseMatrix> k;       // K_j = L_j⁻¹ B_j
  DenseMatrix m_chol;               // Cholesky of M = Σ K_jᵀK_j (N > 0 only)
};

inline SaddleFactorization factor_saddle(const std::vector<DenseMatrix>& s_blocks,
                                         const std::vector<DenseMatrix>& b_blocks,
                                         std::size_t n_free, std::size_t threads = 1) {
  SaddleFactorization f;
  const std::size_t nj = s_blocks.size();
  f.s_chol.resize(nj);
  f.k.resize(nj);
  parallel_for(nj, threads, [&](std::size_t j) {
    f.s_chol[j] = cholesky(s_blocks[j]);
    f.k[j] = solve_triangular(f.s_chol[j], b_blocks[j], Side::Left, Transpose::No);
  });
  if (n_free > 0) {
    DenseMatrix m(n_free, n_free);
    for (std::size_t j = 0; j < nj; ++j) {
      DenseMatrix ktk = matmul(f.k[j], f.k[j], Transpose::Yes, Transpose::No);
      m.add_scaled(BigFloat(1), ktk);
    }
    m.symmetrize();
    f.m_chol = cholesky(m);
  }
  return f;
}

inline SaddleSolution solve_saddle_factored(const SaddleFactorization& f,
                                            const std::vector<std::vector<BigFloat>>& rhs_x,
                                            const std::vector<BigFloat>& rhs_q) {
  const std::size_t nj = f.s_chol.size();
  const std::size_t n_free = rhs_q.size();
  std::vector<DenseMatrix> u(nj);
  for (std::size_t j = 0; j < nj; ++j)
    u[j] = solve_triangular(f.s_chol[j], as_column(rhs_x[j]), Side::Left, Transpose::No);

  SaddleSolution sol;
  sol.dy.assign(n_free, BigFloat(0));
  if (n_free > 0) {
    // M dy = q − Σ K_jᵀ u_j
    std::vector<BigFloat> rhs_y = rhs_q;
    for (std::size_t j = 0; j < nj; ++j) {
      std::vector<BigFloat> ktu = matvec_t(f.k[j], as_vector(u[j]));
      for (std::size_t i = 0; i < n_free; ++i) rhs_y[i] -= ktu[i];
    }
    DenseMatrix t = solve_triangular(f.m_chol, as_column(rhs_y), Side::Left, Transpose::No);
    t = solve_triangular(f.m_chol, t, Side::Left, Transpose::Yes);
    sol.dy = as_vector(t);
  }
  sol.dx.resize(nj);
  for (std::size_t j = 0; j < nj; ++j) {
    std::vector<BigFloat> rhs = as_vector(u[j]);
    if (n_free > 0) {
      std::vector<BigFloat> kdy = matvec(f.k[j], sol.dy);
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += kdy[i];
    }
    DenseMatrix t = solve_triangular(f.s_chol[j], as_column(rhs), Side::Left, Transpose::Yes);
    sol.dx[j] = as_vector(t);
  }
  return sol;
}

}  // namespace detail

inline SaddleSolution solve_saddle_system(const std::vector<DenseMatrix>& s_blocks,
                                          const std::vector<DenseMatrix>& b_blocks,
                                          const std::vector<std::vector<BigFloat>>& rhs_x,
                                          const std::vector<BigFloat>& rhs_q,
                                          std::size_t threads = 1) {
  auto f = detail::factor_saddle(s_blocks, b_blocks, rhs_q.size(), threads);
  return detail::solve_saddle_factored(f, rhs_x, rhs_q);
}

// ---------------------------------------------------------------------------
// Newton direction
// ---------------------------------------------------------------------------

namespace detail {

struct IterationCache {
  std::vector<BlockDiagMatrix> x_chol;  // per cluster
  std::vector<BlockDiagMatrix> xy;      // X·Y per cluster
  SaddleFactorization saddle;
  std::vector<DenseMatrix> s_blocks;
};

inline Direction newton_direction_impl(const ClusteredSDP& prob, const SolverState& st,
                                       const Residuals& res, const IterationCache& cache,
                                       const BigFloat& mu_target, const Direction* corrector,
                                       std::size_t threads) {
  const std::size_t nj = prob.clusters.size();
  // right-hand sides
  std::vector<std::vector<BigFloat>> rhs_x(nj);
  struct Item { std::size_t j, l; };
  std::vector<Item> items;
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t l = 0; l < prob.clusters[j].shapes.size(); ++l) items.push_back({j, l});

  // Z^j = X⁻¹((P + X)Y − μ_target·I + dXp·dYp), blockwise
  std::vector<BlockDiagMatrix> z(nj);
  for (std::size_t j = 0; j < nj; ++j) z[j] = prob.clusters[j].zero_blocks();
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const std::size_t j = items[k].j, l = items[k].l;
    const DenseMatrix& xb = st.X[j].block(l);
    const DenseMatrix& yb = st.Y[j].block(l);
    DenseMatrix g = res.P[j].block(l) + xb;  // Σ x_p A_p − C
    DenseMatrix h = matmul(g, yb);
    if (corrector) {
      DenseMatrix cross = matmul(corrector->dX[j].block(l), corrector->dY[j].block(l));
      h.add_scaled(BigFloat(1), cross);
    }
    for (std::size_t i = 0; i < h.rows(); ++i) h(i, i) -= mu_target;
    const DenseMatrix& lx = cache.x_chol[j].block(l);
    DenseMatrix t = solve_triangular(lx, h, Side::Left, Transpose::No);
    z[j].block(l) = solve_triangular(lx, t, Side::Left, Transpose::Yes);
  });

  for (std::size_t j = 0; j < nj; ++j) {
    const Cluster& cl = prob.clusters[j];
    BlockDiagMatrix zmy = z[j];
    zmy.add_scaled(BigFloat(-1), st.Y[j]);
    std::vector<BigFloat> by = matvec(cl.B, st.y);
    rhs_x[j].resize(cl.num_constraints());
    for (std::size_t p = 0; p < cl.num_constraints(); ++p)
      rhs_x[j][p] = -cl.c[p] - constraint_inner(cl.constraints[p], zmy, cl.shapes) + by[p];
  }

  SaddleSolution sol = solve_saddle_factored(cache.saddle, rhs_x, res.q);

  Direction dir;
  dir.dx = std::move(sol.dx);
  dir.dy = std::move(sol.dy);
  dir.dX.resize(nj);
  dir.dY.resize(nj);
  for (std::size_t j = 0; j < nj; ++j) {
    const Cluster& cl = prob.clusters[j];
    // dX = P + Σ_p dx_p A_p
    BlockDiagMatrix dxm = res.P[j];
    for (std::size_t p = 0; p < cl.num_constraints(); ++p)
      add_scaled_constraint(dxm, dir.dx[j][p], cl.constraints[p], cl.shapes);
    dxm.symmetrize();
    dir.dX[j] = std::move(dxm);
    dir.dY[j] = cl.zero_blocks();
  }
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const std::size_t j = items[k].j, l = items[k].l;
    // dY = X⁻¹(μ_target·I − X·Y − dX·Y − dXp·dYp), then exact symmetrization
    DenseMatrix r = matmul(dir.dX[j].block(l), st.Y[j].block(l));
    r.add_scaled(BigFloat(1), cache.xy[j].block(l));
    if (corrector) {
      DenseMatrix cross = matmul(corrector->dX[j].block(l), corrector->dY[j].block(l));
      r.add_scaled(BigFloat(1), cross);
    }
    r.scale(BigFloat(-1));
    for (std::size_t i = 0; i < r.rows(); ++i) r(i, i) += mu_target;
    const DenseMatrix& lx = cache.x_chol[j].block(l);
    DenseMatrix t = solve_triangular(lx, r, Side::Left, Transpose::No);
    DenseMatrix dy = solve_triangular(lx, t, Side::Left, Transpose::Yes);
    dy.symmetrize();
    dir.dY[j].block(l) = std::move(dy);
  });
  return dir;
}

inline IterationCache build_iteration_cache(const ClusteredSDP& prob, const SolverState& st,
                                            std::size_t threads) {
  IterationCache cache;
  const std::size_t nj = prob.clusters.size();
  cache.x_chol.resize(nj);
  cache.xy.resize(nj);
  struct Item { std::size_t j, l; };
  std::vector<Item> items;
  for (std::size_t j = 0; j < nj; ++j) {
    cache.x_chol[j] = prob.clusters[j].zero_blocks();
    cache.xy[j] = prob.clusters[j].zero_blocks();
    for (std::size_t l = 0; l < prob.clusters[j].shapes.size(); ++l) items.push_back({j, l});
  }
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const std::size_t j = items[k].j, l = items[k].l;
    cache.x_chol[j].block(l) = cholesky(st.X[j].block(l));
    cache.xy[j].block(l) = matmul(st.X[j].block(l), st.Y[j].block(l));
  });
  cache.s_blocks = schur_blocks(prob, st, cache.x_chol, threads);
  std::vector<DenseMatrix> b_blocks;
  b_blocks.reserve(nj);
  for (const auto& cl : prob.clusters) b_blocks.push_back(cl.B);
  cache.saddle = factor_saddle(cache.s_blocks, b_blocks, prob.num_free(), threads);
  return cache;
}

}  // namespace detail

inline Direction newton_direction(const ClusteredSDP& prob, const SolverState& st,
                                  const BigFloat& mu_target, const Direction* corrector = nullptr,
                                  std::size_t threads = 1) {
  Residuals res = residuals(prob, st);
  detail::IterationCache cache = detail::build_iteration_cache(prob, st, threads);
  return detail::newton_direction_impl(prob, st, res, cache, mu_target, corrector, threads);
}

// ---------------------------------------------------------------------------
// main loop
// ---------------------------------------------------------------------------

namespace detail {

inline BigFloat inner_xy(const SolverState& st) {
  BigFloat s(0);
  for (std::size_t j = 0; j < st.X.size(); ++j) s += frobenius_inner(st.X[j], st.Y[j]);
  return s;
}

// ⟨X+dX, Y+dY⟩ without forming the updated matrices
inline BigFloat inner_xy_shifted(const SolverState& st, const Direction& dir) {
  BigFloat s(0);
  for (std::size_t j = 0; j < st.X.size(); ++j) {
    for (std::size_t l = 0; l < st.X[j].block_count(); ++l) {
      const DenseMatrix& x = st.X[j].block(l);
      const DenseMatrix& y = st.Y[j].block(l);
      const DenseMatrix& dx = dir.dX[j].block(l);
      const DenseMatrix& dy = dir.dY[j].block(l);
      s += frobenius_inner(x, y) + frobenius_inner(x, dy) + frobenius_inner(dx, y) +
           frobenius_inner(dx, dy);
    }
  }
  return s;
}

}  // namespace detail

inline SolverResult solve(const ClusteredSDP& prob, const SolverOptions& opt) {
  prob.validate();
  const std::size_t nj = prob.clusters.size();
  const std::size_t n_free = prob.num_free();
  const BigFloat total_dim(static_cast<long>(prob.total_psd_dim()));

  SolverResult result;
  SolverState st;
  st.x.resize(nj);
  st.X.resize(nj);
  st.Y.resize(nj);
  st.y.assign(n_free, BigFloat(0));
  for (std::size_t j = 0; j < nj; ++j) {
    const Cluster& cl = prob.clusters[j];
    st.x[j].assign(cl.num_constraints(), BigFloat(0));
    st.X[j] = cl.zero_blocks();
    st.Y[j] = cl.zero_blocks();
    for (std::size_t l = 0; l < cl.shapes.size(); ++l)
      for (std::size_t i = 0; i < cl.shapes[l].dim(); ++i) {
        st.X[j].block(l)(i, i) = opt.omega;
        st.Y[j].block(l)(i, i) = opt.omega;
      }
  }
  st.mu = detail::inner_xy(st) / total_dim;

  auto finish = [&](SolverStatus status, std::size_t iters, const std::string& msg) {
    result.status = status;
    result.state = std::move(st);
    result.iterations = iters;
    result.message = msg;
    return result;
  };

  auto record_measures = [&](const Residuals& res) {
    BigFloat primal_err(0);
    for (const auto& p : res.P) {
      BigFloat m = p.max_abs();
      if (m > primal_err) primal_err = m;
    }
    BigFloat qmax = detail::max_abs(res.q);
    if (qmax > primal_err) primal_err = qmax;
    BigFloat dual_err(0);
    for (const auto& dj : res.d) {
      BigFloat m = detail::max_abs(dj);
      if (m > dual_err) dual_err = m;
    }
    BigFloat pobj(0), dobj(0);
    for (std::size_t j = 0; j < nj; ++j) {
      pobj += detail::dot(prob.clusters[j].c, st.x[j]);
      dobj += frobenius_inner(prob.clusters[j].C, st.Y[j]);
    }
    dobj += detail::dot(prob.b, st.y);
    result.primal_objective = pobj;
    result.dual_objective = dobj;
    result.duality_gap = abs(pobj - dobj) / max(BigFloat(1), abs(pobj) + abs(dobj));
    result.primal_error = primal_err;
    result.dual_error = dual_err;
  };

  for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
    result.mu_history.push_back(st.mu);
    Residuals res = residuals(prob, st);
    record_measures(res);
    const BigFloat& gap = result.duality_gap;

    const bool primal_ok = result.primal_error <= opt.primal_tol;
    const bool dual_ok = result.dual_error <= opt.dual_tol;
    if (primal_ok && dual_ok && gap <= opt.gap_tol)
      return finish(SolverStatus::Optimal, iter, "converged");
    if (primal_ok && dual_ok && st.mu * BigFloat(100) <= opt.gap_tol)
      return finish(SolverStatus::PrimalDualOptimal, iter,
                    "complementarity exhausted before the gap measure converged");
    if (!st.mu.is_finite() || !result.primal_objective.is_finite() ||
        !result.dual_objective.is_finite())
      return finish(SolverStatus::NumericalFailure, iter, "non-finite iterate");

    try {
      detail::IterationCache cache = detail::build_iteration_cache(prob, st, opt.threads);

      // predictor
      const bool feasible = primal_ok && dual_ok;
      BigFloat mu_pred = feasible ? BigFloat(0) : opt.beta_infeasible * st.mu;
      Direction pred =
          detail::newton_direction_impl(prob, st, res, cache, mu_pred, nullptr, opt.threads);

      // corrector with Mehrotra cross term: r measures how much complementarity
      // the predictor step keeps.  r < 1 means progress, so aim low (r²·μ);
      // r ≥ 1 means the blocked step would grow ⟨X,Y⟩, so recenter at r·μ —
      // without this escape the iterate can pin X against the cone boundary
      // while Y inflates, and the run stalls.
      BigFloat mu_corr(0);
      if (st.mu > BigFloat(0)) {
        BigFloat r = detail::inner_xy_shifted(st, pred) / (st.mu * total_dim);
        BigFloat beta_c = r < BigFloat(1) ? r * r : r;
        BigFloat beta_floor = feasible ? opt.beta_feasible : opt.beta_infeasible;
        if (beta_c < beta_floor) beta_c = beta_floor;
        if (feasible && beta_c > BigFloat(1)) beta_c = BigFloat(1);
        mu_corr = beta_c * st.mu;
      }
      Direction dir =
          detail::newton_direction_impl(prob, st, res, cache, mu_corr, &pred, opt.threads);

      // step lengths: primal from X blocks, dual from Y blocks
      BigFloat sp = positive_infinity(), sd = positive_infinity();
      for (std::size_t j = 0; j < nj; ++j) {
        BigFloat s1 = max_feasible_step(st.X[j], dir.dX[j], cache.x_chol[j]);
        if (s1 < sp) sp = s1;
        BlockDiagMatrix y_chol = cholesky(st.Y[j]);
        BigFloat s2 = max_feasible_step(st.Y[j], dir.dY[j], y_chol);
        if (s2 < sd) sd = s2;
      }
      BigFloat alpha_p = sp.is_finite() ? min(opt.gamma * sp, BigFloat(1)) : BigFloat(1);
      BigFloat alpha_d = sd.is_finite() ? min(opt.gamma * sd, BigFloat(1)) : BigFloat(1);

      for (std::size_t j = 0; j < nj; ++j) {
        for (std::size_t p = 0; p < st.x[j].size(); ++p) st.x[j][p].add_mul(alpha_p, dir.dx[j][p]);
        st.X[j].add_scaled(alpha_p, dir.dX[j]);
        st.Y[j].add_scaled(alpha_d, dir.dY[j]);
      }
      for (std::size_t i = 0; i < n_free; ++i) st.y[i].add_mul(alpha_d, dir.dy[i]);
      st.mu = detail::inner_xy(st) / total_dim;
    } catch (const std::exception& e) {
      return finish(SolverStatus::NumericalFailure, iter, e.what());
    }
    result.iterations = iter + 1;
  }
  record_measures(residuals(prob, st));
  return finish(SolverStatus::MaxIterations, opt.max_iterations, "iteration limit reached");
}

}  // namespace clrs

#endif  // CLRS_SOLVER_HPP
