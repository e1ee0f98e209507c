#ifndef CLRS_MODELS_HPP
#define CLRS_MODELS_HPP

// Generators for the two shipped applications: the three-point bound on
// kissing numbers and the linear-programming bound on binary sphere packing
// densities.  Each generator emits a polynomial matrix program in the
// canonical maximization form together with per-constraint sampling inputs,
// ready for lower().

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clrs/bigfloat.hpp"
#include "clrs/dense.hpp"
#include "clrs/errors.hpp"
#include "clrs/pmp.hpp"
#include "clrs/polynomial.hpp"
#include "clrs/sampling.hpp"
#include "clrs/symmetry.hpp"

namespace clrs {

// ---- classical orthogonal polynomial families -----------------------------------

// Gegenbauer (ultraspherical) polynomial of degree k with parameter n/2 - 1,
// rescaled so its value at 1 equals 1.  These are the positive-definite zonal
// kernels of the unit sphere in R^n.
inline Polynomial gegenbauer(long n, long k) {
  if (n < 3) throw std::invalid_argument("gegenbauer: dimension must be at least 3");
  if (k < 0) throw std::invalid_argument("gegenbauer: negative degree");
  BigFloat two_lambda = BigFloat(n) - BigFloat(2);
  Polynomial t = Polynomial::variable(1, 0);
  Polynomial prev = Polynomial::constant(1, BigFloat(1));
  if (k == 0) return prev;
  Polynomial cur = t * two_lambda;
  for (long j = 2; j <= k; ++j) {
    // j·C_j = 2t(j + λ - 1)·C_{j-1} - (j + 2λ - 2)·C_{j-2}
    BigFloat a = BigFloat(2 * j - 2) + two_lambda;
    BigFloat b = BigFloat(j - 2) + two_lambda;
    Polynomial next = (t * cur * a - prev * b) * (BigFloat(1) / BigFloat(j));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur * (BigFloat(1) / cur.eval({BigFloat(1)}));
}

// Generalized Laguerre polynomial L_k^alpha by the standard three-term
// recurrence: L_0 = 1, L_1 = 1 + alpha - x,
// (k+1)·L_{k+1} = (2k + 1 + alpha - x)·L_k - (k + alpha)·L_{k-1}.
inline Polynomial laguerre(const BigFloat& alpha, long k) {
  if (k < 0) throw std::invalid_argument("laguerre: negative degree");
  Polynomial x = Polynomial::variable(1, 0);
  Polynomial prev = Polynomial::constant(1, BigFloat(1));
  if (k == 0) return prev;
  Polynomial cur = Polynomial::constant(1, BigFloat(1) + alpha) - x;
  for (long j = 1; j < k; ++j) {
    Polynomial next = ((Polynomial::constant(1, BigFloat(2 * j + 1) + alpha) - x) * cur -
                       prev * (BigFloat(j) + alpha)) *
                      (BigFloat(1) / BigFloat(j + 1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// ---- kernel matrices for the three-point bound -----------------------------------

// In variables (u, v, t), with c_m the coefficients of the degree-k Gegenbauer
// polynomial (whose parity makes every exponent (k - m)/2 below an integer):
//
//   S_k = Σ_m c_m (t - uv)^m ((1-u²)(1-v²))^{(k-m)/2},
//   Y_k(u,v,t)_{ij} = uⁱ vʲ S_k,   0 ≤ i, j ≤ d - k.
//
// The symmetrization averages Y_k over all six argument permutations; its
// entries are invariant polynomials and every evaluation is a symmetric
// matrix of rank at most 3 (column span {(uⁱ), (vⁱ), (tⁱ)}).
struct YknPair {
  PolynomialMatrix y;    // Y_k
  PolynomialMatrix sym;  // average of Y_k over the six argument permutations
};

inline YknPair ykn_matrix(long n, long k, long d) {
  if (k < 0 || k > d) throw std::invalid_argument("ykn_matrix: need 0 <= k <= d");
  Polynomial p = gegenbauer(n, k);
  std::size_t dim = static_cast<std::size_t>(d - k + 1);
  Polynomial u = Polynomial::variable(3, 0);
  Polynomial v = Polynomial::variable(3, 1);
  Polynomial t = Polynomial::variable(3, 2);
  Polynomial t_minus_uv = t - u * v;
  Polynomial one = Polynomial::constant(3, BigFloat(1));
  Polynomial disc = (one - u * u) * (one - v * v);

  Polynomial s(3);
  for (const auto& term : p.terms()) {
    long m = static_cast<long>(term.first[0]);
    if ((k - m) % 2 != 0) throw std::logic_error("ykn_matrix: kernel family lost its parity");
    s += pow(t_minus_uv, static_cast<unsigned>(m)) *
         pow(disc, static_cast<unsigned>((k - m) / 2)) * term.second;
  }

  YknPair out;
  out.y = PolynomialMatrix(dim, dim, 3);
  out.sym = PolynomialMatrix(dim, dim, 3);
  GroupAction s3 = coordinate_permutation_action(3);
  BigFloat inv_order = BigFloat(1) / BigFloat(static_cast<long>(s3.size()));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Polynomial entry =
          pow(u, static_cast<unsigned>(i)) * pow(v, static_cast<unsigned>(j)) * s;
      Polynomial avg(3);
      for (const auto& theta : s3.elements) avg += apply_group_element(entry, theta);
      avg *= inv_order;
      out.y(i, j) = std::move(entry);
      out.sym(i, j) = std::move(avg);
    }
  return out;
}

namespace detail {

// p(x, x, 1) as a univariate polynomial.
inline Polynomial restrict_to_diagonal(const Polynomial& p) {
  Polynomial x = Polynomial::variable(1, 0);
  return p.substitute({x, x, Polynomial::constant(1, BigFloat(1))});
}

// Elementary symmetric functions of three polynomials, appended in degree
// order but only while they fit inside the sampled space.
inline void push_elementary_symmetric(std::vector<Polynomial>& dst,
                                      const std::array<Polynomial, 3>& g, long max_degree) {
  std::array<Polynomial, 3> e = {g[0] + g[1] + g[2],
                                 g[0] * g[1] + g[0] * g[2] + g[1] * g[2],
                                 g[0] * g[1] * g[2]};
  for (auto& p : e)
    if (p.degree() <= max_degree) dst.push_back(std::move(p));
}

// Sample-orthogonal basis data for the degree-`space_degree` univariate space
// on Chebyshev points of [a, b].
inline LoweringInput interval_input(long space_degree, const BigFloat& a, const BigFloat& b) {
  LoweringInput input;
  input.space_degree = space_degree;
  input.samples =
      univariate_samples(chebyshev_points(static_cast<std::size_t>(space_degree) + 1, a, b));
  PolyBasis basis = chebyshev_basis(space_degree, a, b);
  DenseMatrix v = vandermonde(basis, input.samples);
  OrthogonalBasis ortho = orthogonal_sampled_basis(v, basis.degrees);
  input.basis_values = ortho.q;
  input.basis_degrees = basis.degrees;
  input.symbolic_basis = std::move(basis);
  input.basis_transform = ortho.transform;
  return input;
}

// Sampling data for a degree-0 constraint: one point, the constant basis.
inline LoweringInput constant_input() {
  LoweringInput input;
  input.space_degree = 0;
  input.samples.points.push_back({BigFloat(0)});
  input.basis_values = DenseMatrix::identity(1);
  input.basis_degrees = {0};
  input.symbolic_basis = monomial_basis(1, 0);
  input.basis_transform = DenseMatrix::identity(1);
  return input;
}

// Vandermonde of the power products e₁^a e₂^b e₃^c of the elementary symmetric
// polynomials with a + 2b + 3c <= max_degree — a basis of the invariant
// polynomials — evaluated from per-point generator values.
inline DenseMatrix invariant_power_vandermonde(const SampleSet& s, long max_degree,
                                               std::size_t* basis_size = nullptr) {
  std::vector<std::array<unsigned, 3>> exps;
  for (long c3 = 0; 3 * c3 <= max_degree; ++c3)
    for (long b2 = 0; 2 * b2 + 3 * c3 <= max_degree; ++b2)
      for (long a1 = 0; a1 + 2 * b2 + 3 * c3 <= max_degree; ++a1)
        exps.push_back({static_cast<unsigned>(a1), static_cast<unsigned>(b2),
                        static_cast<unsigned>(c3)});
  if (basis_size != nullptr) *basis_size = exps.size();

  DenseMatrix v(s.size(), exps.size());
  for (std::size_t l = 0; l < s.size(); ++l) {
    const auto& pt = s.points[l];
    std::array<BigFloat, 3> gen = {pt[0] + pt[1] + pt[2],
                                   pt[0] * pt[1] + pt[0] * pt[2] + pt[1] * pt[2],
                                   pt[0] * pt[1] * pt[2]};
    std::array<std::vector<BigFloat>, 3> powers;
    for (std::size_t i = 0; i < 3; ++i) powers[i].push_back(BigFloat(1));
    for (std::size_t k = 0; k < exps.size(); ++k) {
      BigFloat val(1);
      for (std::size_t i = 0; i < 3; ++i) {
        while (powers[i].size() <= exps[k][i]) powers[i].push_back(powers[i].back() * gen[i]);
        val *= powers[i][exps[k][i]];
      }
      v(l, k) = val;
    }
  }
  return v;
}

// Invariant unisolvent samples for the trivariate constraint: orbit
// representatives of an invariant simplex grid inside the box [-1, c]³,
// filtered to the Gram-positivity region 1 + 2uvt - u² - v² - t² >= -2⁻⁴⁰,
// then cut down to one point per invariant basis element by a Fekete pass on
// the invariant Vandermonde.  The simplex vertices are Gram-feasible, so for
// c >= 0 the convexity of the feasible region keeps the whole grid.
inline SampleSet invariant_box_samples(const BigFloat& c, long space_degree,
                                       const Polynomial& det_poly, const GroupAction& action) {
  BigFloat z = min(BigFloat(0), c);
  std::vector<std::vector<BigFloat>> verts = {
      {BigFloat(-1), z, z}, {z, BigFloat(-1), z}, {z, z, BigFloat(-1)}, {c, c, c}};
  BigFloat det_floor = BigFloat(0) - pow2(-40);
  std::string last_error = "no candidate grid tried";
  for (long param = space_degree + 2; param <= space_degree + 8; param += 2) {
    SampleSet grid = simplex_invariant_grid(verts, param);
    SampleSet reps = orbit_representatives(grid, action);
    SampleSet kept;
    for (auto& pt : reps.points)
      if (det_poly.eval(pt) >= det_floor) kept.points.push_back(std::move(pt));
    std::size_t target = 0;
    DenseMatrix v = invariant_power_vandermonde(kept, space_degree, &target);
    if (kept.size() < target) {
      last_error = "only " + std::to_string(kept.size()) + " candidates for " +
                   std::to_string(target) + " basis elements";
      continue;
    }
    try {
      RefinedBasis refined = refine_basis(v, 2);
      std::vector<std::size_t> rows = approximate_fekete(refined.v, target);
      SampleSet out;
      out.points.reserve(target);
      for (std::size_t r : rows) out.points.push_back(kept.points[r]);
      return out;
    } catch (const RankDeficient& e) {
      last_error = e.what();
    }
  }
  throw RankDeficient("invariant_box_samples: no unisolvent invariant sample set up to grid "
                      "parameter " +
                      std::to_string(space_degree + 8) + " (" + last_error + ")");
}

}  // namespace detail

// ---- kissing number model ---------------------------------------------------------

struct KissingModelSpec {
  long n = 3;               // sphere dimension
  long d = 2;               // half-degree: kernel matrix blocks F_0..F_d
  BigFloat cos_theta{0.5};  // cap cosine; 1/2 bounds the kissing number
  LoweringMode mode = LoweringMode::B;
};

struct KissingModel {
  PolyMatrixProgram program;
  std::vector<LoweringInput> inputs;  // aligned with program.constraints
};

// Three-point bound: minimize 1 + Σ_k a_k + <Y̅_0(1,1,1), F_0> subject to
//   Σ_k a_k P_k(u) + 3 Σ_k <Y̅_k(u,u,1), F_k> <= -1   on [-1, cos θ],
//   Σ_k <Y̅_k(u,v,t), F_k> <= 0                        on the cap-triple region,
//   a_k >= 0 (1×1 blocks, k = 0..2d),  F_k ⪰ 0 (size d-k+1, k = 0..d),
// where the cap-triple region is the box [-1, cos θ]³ cut by the Gram
// condition 1 + 2uvt - u² - v² - t² >= 0.  Emitted in the canonical
// maximization form, so the reported bound is 1 - optimum.
inline KissingModel kissing_model(const KissingModelSpec& spec) {
  if (spec.n < 3) throw std::invalid_argument("kissing_model: dimension must be at least 3");
  if (spec.d < 1) throw std::invalid_argument("kissing_model: half-degree must be at least 1");
  if (!(spec.cos_theta > BigFloat(-1)) || !(spec.cos_theta < BigFloat(1)))
    throw std::invalid_argument("kissing_model: cap cosine must lie in (-1, 1)");

  const long n = spec.n;
  const long d = spec.d;
  const long space = 2 * d;
  const BigFloat c = spec.cos_theta;

  KissingModel out;
  PolyMatrixProgram& prog = out.program;
  prog.report_constant = BigFloat(1);
  prog.report_sign = BigFloat(-1);

  for (long k = 0; k <= 2 * d; ++k) {
    PsdVariable a;
    a.dim = 1;
    a.objective = DenseMatrix(1, 1);
    a.objective(0, 0) = BigFloat(-1);
    prog.psd_vars.push_back(std::move(a));
  }

  const std::size_t f_base = static_cast<std::size_t>(2 * d + 1);
  std::vector<YknPair> kernels;
  kernels.reserve(static_cast<std::size_t>(d + 1));
  for (long k = 0; k <= d; ++k) {
    kernels.push_back(ykn_matrix(n, k, d));
    PsdVariable f;
    f.dim = static_cast<std::size_t>(d - k + 1);
    if (k == 0) {
      DenseMatrix j0 = kernels[0].sym.eval({BigFloat(1), BigFloat(1), BigFloat(1)});
      f.objective = DenseMatrix(f.dim, f.dim);
      for (std::size_t i = 0; i < f.dim; ++i)
        for (std::size_t jj = 0; jj < f.dim; ++jj) f.objective(i, jj) = -j0(i, jj);
    }
    prog.psd_vars.push_back(std::move(f));
  }

  // Cap interval constraint.
  {
    PolyConstraint con;
    con.num_vars = 1;
    con.mult = 1;
    con.p0 = PolynomialMatrix(1, 1, 1);
    con.p0(0, 0) = Polynomial::constant(1, BigFloat(-1));
    for (long k = 0; k <= 2 * d; ++k) {
      PsdVarTerm term;
      term.var = static_cast<std::size_t>(k);
      term.weight = PolynomialMatrix(1, 1, 1);
      term.weight(0, 0) = gegenbauer(n, k) * BigFloat(-1);
      con.psd_terms.push_back(std::move(term));
    }
    for (long k = 0; k <= d; ++k) {
      std::size_t dim = static_cast<std::size_t>(d - k + 1);
      PsdVarTerm term;
      term.var = f_base + static_cast<std::size_t>(k);
      term.weight = PolynomialMatrix(dim, dim, 1);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          term.weight(i, j) =
              detail::restrict_to_diagonal(kernels[static_cast<std::size_t>(k)].sym(i, j)) *
              BigFloat(-3);
      con.psd_terms.push_back(std::move(term));
    }
    Polynomial uvar = Polynomial::variable(1, 0);
    con.domain.push_back((Polynomial::constant(1, BigFloat(1)) + uvar) *
                         (Polynomial::constant(1, c) - uvar));
    prog.constraints.push_back(std::move(con));
    out.inputs.push_back(detail::interval_input(space, BigFloat(-1), c));
  }

  // Cap-triple constraint, invariant under permuting (u, v, t).
  {
    Polynomial u = Polynomial::variable(3, 0);
    Polynomial v = Polynomial::variable(3, 1);
    Polynomial t = Polynomial::variable(3, 2);
    Polynomial one = Polynomial::constant(3, BigFloat(1));
    Polynomial cc = Polynomial::constant(3, c);
    Polynomial det_poly =
        one + (u * v * t) * BigFloat(2) - u * u - v * v - t * t;

    PolyConstraint con;
    con.num_vars = 3;
    con.mult = 1;
    con.symmetric = true;
    con.p0 = PolynomialMatrix(1, 1, 3);
    for (long k = 0; k <= d; ++k) {
      std::size_t dim = static_cast<std::size_t>(d - k + 1);
      PsdVarTerm term;
      term.var = f_base + static_cast<std::size_t>(k);
      term.weight = PolynomialMatrix(dim, dim, 3);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          term.weight(i, j) = kernels[static_cast<std::size_t>(k)].sym(i, j) * BigFloat(-1);
      con.psd_terms.push_back(std::move(term));
    }
    detail::push_elementary_symmetric(con.domain, {cc - u, cc - v, cc - t}, space);
    detail::push_elementary_symmetric(con.domain, {one + u, one + v, one + t}, space);
    if (det_poly.degree() <= space) con.domain.push_back(det_poly);
    prog.constraints.push_back(std::move(con));

    GroupAction s3 = coordinate_permutation_action(3);
    LoweringInput input;
    input.space_degree = space;
    input.samples = detail::invariant_box_samples(c, space, det_poly, s3);
    input.invariant_blocks = build_E_pi(symmetry_adapted_basis(s3, symmetric_group_irreps(s3), d), d);
    out.inputs.push_back(std::move(input));
  }

  return out;
}

// ---- binary sphere packing model ---------------------------------------------------

struct PackingModelSpec {
  long n = 2;                   // ambient dimension
  std::vector<BigFloat> radii;  // one entry per sphere size, all positive
  long degree = 31;             // top polynomial term: variables A^(0)..A^(degree)
  BigFloat scale{1};            // radius rescaling applied before building
};

struct PackingModel {
  PolyMatrixProgram program;
  std::vector<LoweringInput> inputs;  // aligned with program.constraints
  DenseMatrix gram;                   // W_rs = sqrt(vol B(s·R_r))·sqrt(vol B(s·R_s))
  BigFloat truncation;                // right end of the sampling intervals
};

// Volume of the n-dimensional ball of radius R: π^{n/2} Rⁿ / Γ(n/2 + 1).
inline BigFloat ball_volume(long n, const BigFloat& radius) {
  if (n < 1) throw std::invalid_argument("ball_volume: dimension must be positive");
  if (!(radius > BigFloat(0)))
    throw std::invalid_argument("ball_volume: radius must be positive");
  BigFloat pi_power = pow_ui(sqrt(const_pi()), static_cast<unsigned long>(n));
  BigFloat g = gamma_function(BigFloat(n) * BigFloat(0.5) + BigFloat(1));
  return pi_power * pow_ui(radius, static_cast<unsigned long>(n)) / g;
}

namespace detail {

// Index of the (r, s) entry, r <= s, in the row-major upper triangle.
inline std::size_t upper_pair_index(std::size_t m, std::size_t r, std::size_t s) {
  return r * m - r * (r - 1) / 2 + (s - r);
}

}  // namespace detail

// Density bound for packings of spheres with the given radii: free symmetric
// matrices A^(0)..A^(d) and a free scalar M with
//   A^(0) - W ⪰ 0,
//   Σ_k A^(k) x^k ⪰ 0           on x >= 0,
//   -Σ_k A^(k)_{rs} ℓ_k(x) >= 0  on x >= (s·(R_r + R_s))²,  for every r <= s,
//   M - Σ_k A^(k)_{rr} ℓ_k(0) >= 0                          for every r,
// where ℓ_k(x) = (k!/π^k)·L_k^{n/2-1}(πx) and W is the Gram matrix of the
// ball-volume square roots.  Minimizing M is emitted as maximizing -M, so the
// reported bound is -optimum.  Half-lines are truncated to [·, T] for
// sampling only; the enforced identities are degree-exact, so the bound does
// not depend on T.
inline PackingModel packing_model(const PackingModelSpec& spec) {
  const long n = spec.n;
  const std::size_t m = spec.radii.size();
  if (n < 1) throw std::invalid_argument("packing_model: dimension must be positive");
  if (m == 0) throw std::invalid_argument("packing_model: at least one radius required");
  for (const auto& r : spec.radii)
    if (!(r > BigFloat(0))) throw std::invalid_argument("packing_model: radii must be positive");
  if (!(spec.scale > BigFloat(0)))
    throw std::invalid_argument("packing_model: scale must be positive");
  if (spec.degree < 0) throw std::invalid_argument("packing_model: negative degree");

  const long d = spec.degree;                // highest polynomial term A^(0)..A^(d)
  const long space = 2 * ((d + 1) / 2);      // smallest even degree covering d
  const std::size_t pairs = m * (m + 1) / 2;
  const std::size_t num_terms = static_cast<std::size_t>(d + 1);
  const std::size_t m_index = num_terms * pairs;
  auto vech = [&](long k, std::size_t r, std::size_t s) {
    return static_cast<std::size_t>(k) * pairs + detail::upper_pair_index(m, r, s);
  };

  PackingModel out;
  PolyMatrixProgram& prog = out.program;
  prog.num_free = m_index + 1;
  prog.objective.assign(prog.num_free, BigFloat(0));
  prog.objective[m_index] = BigFloat(-1);
  prog.report_constant = BigFloat(0);
  prog.report_sign = BigFloat(-1);

  std::vector<BigFloat> rho, w;
  BigFloat max_rho2(0);
  for (const auto& r : spec.radii) {
    BigFloat scaled = spec.scale * r;
    rho.push_back(scaled);
    w.push_back(sqrt(ball_volume(n, scaled)));
    max_rho2 = max(max_rho2, scaled * scaled);
  }
  out.gram = DenseMatrix(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) out.gram(r, s) = w[r] * w[s];
  // Sampling window: past the largest Laguerre oscillation (roots of L_d(πx)
  // reach ≈ (4d+2)/π) and well past the largest touching distance.  The window
  // only places samples; the enforced identities are degree-exact, so the
  // feasible set does not depend on it.
  {
    BigFloat osc = BigFloat(4 * d + 6) / const_pi();
    out.truncation = max(osc, BigFloat(8) * max_rho2);
  }

  // ℓ_k(x) = (k!/π^k)·L_k^{n/2-1}(πx); leading coefficient (-1)^k.
  const BigFloat alpha = BigFloat(n) * BigFloat(0.5) - BigFloat(1);
  const BigFloat pi = const_pi();
  Polynomial x1 = Polynomial::variable(1, 0);
  std::vector<Polynomial> ell;
  for (long k = 0; k <= d; ++k) {
    Polynomial lk = laguerre(alpha, k).substitute({x1 * pi});
    ell.push_back(lk * (factorial(static_cast<unsigned long>(k)) /
                        pow_ui(pi, static_cast<unsigned long>(k))));
  }

  // The free variable for the k-th term stores T^k·A^(k): both x^k and ℓ_k
  // grow like T^k over the sampled intervals, so this diagonal change of
  // variables keeps every sampled coefficient column O(1).  The feasible set
  // and the reported bound are unchanged.
  std::vector<BigFloat> term_scale;
  {
    BigFloat inv_t = BigFloat(1) / out.truncation;
    for (long k = 0; k <= d; ++k) term_scale.push_back(pow_ui(inv_t, static_cast<unsigned long>(k)));
  }

  // A^(0) - W ⪰ 0.
  {
    PolyConstraint con;
    con.num_vars = 1;
    con.mult = m;
    con.p0 = PolynomialMatrix(m, m, 1);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = 0; s < m; ++s)
        con.p0(r, s) = Polynomial::constant(1, -out.gram(r, s));
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = r; s < m; ++s) {
        PolynomialMatrix cm(m, m, 1);
        cm(r, s) = Polynomial::constant(1, BigFloat(1));
        cm(s, r) = cm(r, s);
        con.coeff[vech(0, r, s)] = std::move(cm);
      }
    prog.constraints.push_back(std::move(con));
    out.inputs.push_back(detail::constant_input());
  }

  // Σ_k A^(k) x^k ⪰ 0 on the half-line.
  {
    PolyConstraint con;
    con.num_vars = 1;
    con.mult = m;
    con.p0 = PolynomialMatrix(m, m, 1);
    for (long k = 0; k <= d; ++k) {
      Polynomial mono =
          pow(x1, static_cast<unsigned>(k)) * term_scale[static_cast<std::size_t>(k)];
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = r; s < m; ++s) {
          PolynomialMatrix cm(m, m, 1);
          cm(r, s) = mono;
          cm(s, r) = mono;
          con.coeff[vech(k, r, s)] = std::move(cm);
        }
    }
    if (x1.degree() <= space) con.domain.push_back(x1);
    prog.constraints.push_back(std::move(con));
    out.inputs.push_back(detail::interval_input(space, BigFloat(0), out.truncation));
  }

  // Off-center decay: -Σ_k A^(k)_{rs} ℓ_k(x) >= 0 beyond the touching distance.
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = r; s < m; ++s) {
      BigFloat sum = rho[r] + rho[s];
      BigFloat cut = sum * sum;
      PolyConstraint con;
      con.num_vars = 1;
      con.mult = 1;
      con.p0 = PolynomialMatrix(1, 1, 1);
      for (long k = 0; k <= d; ++k) {
        PolynomialMatrix cm(1, 1, 1);
        cm(0, 0) = ell[static_cast<std::size_t>(k)] * (-term_scale[static_cast<std::size_t>(k)]);
        con.coeff[vech(k, r, s)] = std::move(cm);
      }
      Polynomial shifted = x1 - Polynomial::constant(1, cut);
      if (shifted.degree() <= space) con.domain.push_back(shifted);
      prog.constraints.push_back(std::move(con));
      out.inputs.push_back(detail::interval_input(space, cut, out.truncation));
    }

  // Center values: M - Σ_k A^(k)_{rr} ℓ_k(0) >= 0.
  for (std::size_t r = 0; r < m; ++r) {
    PolyConstraint con;
    con.num_vars = 1;
    con.mult = 1;
    con.p0 = PolynomialMatrix(1, 1, 1);
    {
      PolynomialMatrix cm(1, 1, 1);
      cm(0, 0) = Polynomial::constant(1, BigFloat(1));
      con.coeff[m_index] = std::move(cm);
    }
    for (long k = 0; k <= d; ++k) {
      PolynomialMatrix cm(1, 1, 1);
      cm(0, 0) = Polynomial::constant(1, -ell[static_cast<std::size_t>(k)].eval({BigFloat(0)}) *
                                             term_scale[static_cast<std::size_t>(k)]);
      con.coeff[vech(k, r, r)] = std::move(cm);
    }
    prog.constraints.push_back(std::move(con));
    out.inputs.push_back(detail::constant_input());
  }

  return out;
}

// Reported bound for a lowered model: the report transform applied to a solved
// objective value of the maximization form.
inline BigFloat reported_bound(const LoweredProgram& lowered, const BigFloat& objective) {
  return lowered.report_constant + lowered.report_sign * objective;
}

}  // namespace clrs

#endif  // CLRS_MODELS_HPP
