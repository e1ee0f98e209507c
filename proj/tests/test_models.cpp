#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "clrs/models.hpp"
#include "clrs/pmp.hpp"
#include "clrs/solver.hpp"
#include "helpers.hpp"

using clrs::BigFloat;
using clrs::DenseMatrix;
using clrs::KissingModel;
using clrs::KissingModelSpec;
using clrs::LoweredProgram;
using clrs::LoweringMode;
using clrs::PackingModel;
using clrs::PackingModelSpec;
using clrs::Polynomial;
using clrs::PolynomialMatrix;
using clrs::SolverStatus;
using clrs::YknPair;
using clrs_tests::Rng;

namespace {

BigFloat bits_tol(long k) { return clrs::pow2(k - static_cast<long>(clrs::working_precision())); }

// Univariate polynomial from low-to-high coefficients.
Polynomial upoly(const std::vector<double>& coeffs) {
  Polynomial p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    p.add_term({static_cast<unsigned>(k)}, BigFloat(coeffs[k]));
  }
  return p;
}

BigFloat max_coeff_diff(const Polynomial& a, const Polynomial& b) {
  Polynomial d = a - b;
  return d.max_abs_coefficient();
}

// Exact moment of a univariate polynomial against the weight x^alpha e^{-x}
// on [0, inf): each monomial x^p integrates to Gamma(alpha + p + 1).
BigFloat weighted_moment(const Polynomial& q, const BigFloat& alpha) {
  BigFloat total(0);
  for (const auto& term : q.terms())
    total += term.second *
             clrs::gamma_function(alpha + BigFloat(static_cast<long>(term.first[0])) + BigFloat(1));
  return total;
}

// Dimension of the permutation-invariant trivariate polynomials of degree <= D.
std::size_t invariant_dimension(long D) {
  std::size_t count = 0;
  for (long c = 0; 3 * c <= D; ++c)
    for (long b = 0; 2 * b + 3 * c <= D; ++b)
      for (long a = 0; a + 2 * b + 3 * c <= D; ++a) ++count;
  return count;
}

clrs::SolverOptions solve_options() {
  clrs::SolverOptions opt;
  opt.max_iterations = 300;
  return opt;
}

// Lower, solve, and report the bound of a kissing model.
BigFloat kissing_bound(const KissingModelSpec& spec, SolverStatus* status = nullptr) {
  KissingModel model = clrs::kissing_model(spec);
  LoweredProgram lowered = clrs::lower(model.program, model.inputs, spec.mode);
  clrs::SolverResult res = clrs::solve(lowered.sdp, solve_options());
  if (status != nullptr) *status = res.status;
  return clrs::reported_bound(lowered, res.dual_objective);
}

bool converged(SolverStatus s) {
  return s == SolverStatus::Optimal || s == SolverStatus::PrimalDualOptimal;
}

}  // namespace

TEST_CASE("gegenbauer polynomials hit the classical low-degree forms", "[models]") {
  CHECK(max_coeff_diff(clrs::gegenbauer(5, 0), upoly({1})) <= bits_tol(8));
  CHECK(max_coeff_diff(clrs::gegenbauer(5, 1), upoly({0, 1})) <= bits_tol(8));
  CHECK(max_coeff_diff(clrs::gegenbauer(3, 2), upoly({-0.5, 0, 1.5})) <= bits_tol(8));

  for (long n : {3L, 4L, 8L})
    for (long k = 0; k <= 8; ++k) {
      BigFloat at_one = clrs::gegenbauer(n, k).eval({BigFloat(1)});
      CHECK(clrs::abs(at_one - BigFloat(1)) <= bits_tol(16));
    }
}

TEST_CASE("laguerre polynomials satisfy the seeds and stay orthogonal", "[models]") {
  BigFloat alpha(1.5);
  CHECK(max_coeff_diff(clrs::laguerre(alpha, 0), upoly({1})) <= bits_tol(8));
  CHECK(max_coeff_diff(clrs::laguerre(alpha, 1), upoly({2.5, -1})) <= bits_tol(8));
  // L_2 = x²/2 - (α+2)x + (α+1)(α+2)/2.
  CHECK(max_coeff_diff(clrs::laguerre(alpha, 2), upoly({4.375, -3.5, 0.5})) <= bits_tol(16));

  // Exact gamma-function moments: <L_j, L_k> vanishes for j != k and equals
  // Gamma(k + α + 1)/k! on the diagonal.
  for (double a : {0.0, 3.0}) {
    BigFloat av(a);
    for (long j = 0; j <= 4; ++j)
      for (long k = j; k <= 4; ++k) {
        Polynomial prod = clrs::laguerre(av, j) * clrs::laguerre(av, k);
        BigFloat moment = weighted_moment(prod, av);
        BigFloat scale = clrs::gamma_function(av + BigFloat(j + k) + BigFloat(1));
        if (j == k) {
          BigFloat expected = clrs::gamma_function(BigFloat(k) + av + BigFloat(1)) /
                              clrs::factorial(static_cast<unsigned long>(k));
          CHECK(clrs::abs(moment - expected) <= bits_tol(32) * scale);
        } else {
          CHECK(clrs::abs(moment) <= bits_tol(32) * scale);
        }
      }
  }
}

TEST_CASE("kernel matrices take the factored form and symmetrize", "[models]") {
  Polynomial u = Polynomial::variable(3, 0);
  Polynomial v = Polynomial::variable(3, 1);
  Polynomial t = Polynomial::variable(3, 2);

  // Degree zero: entries are plain monomials.
  YknPair y0 = clrs::ykn_matrix(3, 0, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Polynomial expected =
          clrs::pow(u, static_cast<unsigned>(i)) * clrs::pow(v, static_cast<unsigned>(j));
      CHECK(max_coeff_diff(y0.y(i, j), expected) <= bits_tol(8));
    }

  // Degree one in dimension three: the kernel factor is t - uv.
  YknPair y1 = clrs::ykn_matrix(3, 1, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Polynomial expected = clrs::pow(u, static_cast<unsigned>(i)) *
                            clrs::pow(v, static_cast<unsigned>(j)) * (t - u * v);
      CHECK(max_coeff_diff(y1.y(i, j), expected) <= bits_tol(8));
    }

  // The symmetrized degree-zero kernel at (1,1,1) is the all-ones matrix.
  DenseMatrix ones = y0.sym.eval({BigFloat(1), BigFloat(1), BigFloat(1)});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(clrs::abs(ones(i, j) - BigFloat(1)) <= bits_tol(16));
}

TEST_CASE("symmetrized kernels are invariant, symmetric, and rank three", "[models]") {
  YknPair pair = clrs::ykn_matrix(4, 2, 4);
  std::vector<BigFloat> p = {BigFloat(0.1), BigFloat(-0.3), BigFloat(0.25)};
  DenseMatrix base = pair.sym.eval(p);

  // Invariance under every permutation of the three arguments.
  std::vector<std::vector<BigFloat>> images = {
      {p[0], p[1], p[2]}, {p[0], p[2], p[1]}, {p[1], p[0], p[2]},
      {p[1], p[2], p[0]}, {p[2], p[0], p[1]}, {p[2], p[1], p[0]}};
  for (const auto& q : images) {
    DenseMatrix m = pair.sym.eval(q);
    CHECK(clrs_tests::max_abs_diff(m, base) <= bits_tol(24));
  }
  CHECK(clrs_tests::max_abs_diff(base, base.transposed()) <= bits_tol(24));

  // Numerical rank of an evaluation is at most three, at any block size.
  YknPair big = clrs::ykn_matrix(3, 2, 6);
  DenseMatrix m = big.sym.eval({BigFloat(0.1), BigFloat(0.3), BigFloat(0.2)});
  m.symmetrize();
  std::vector<clrs::LowRankTerm> terms = clrs::rank1_decompose(m);
  CHECK(terms.size() <= 3);
  DenseMatrix rebuilt(m.rows(), m.rows());
  for (const auto& term : terms)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.rows(); ++j)
        rebuilt(i, j) += term.lambda * term.v[i] * term.w[j];
  CHECK(clrs_tests::max_abs_diff(rebuilt, m) <= bits_tol(32));
}

TEST_CASE("symmetrized kernels restrict to the closed diagonal forms", "[models]") {
  BigFloat u0(0.37);
  // k = 0: 3·sym(u,u,1)_{ij} = u^{i+j} + u^i + u^j.
  YknPair y0 = clrs::ykn_matrix(3, 0, 4);
  for (std::size_t i = 0; i <= 4; ++i)
    for (std::size_t j = 0; j <= 4; ++j) {
      BigFloat got = y0.sym(i, j).eval({u0, u0, BigFloat(1)}) * BigFloat(3);
      BigFloat expected = clrs::pow_ui(u0, i + j) + clrs::pow_ui(u0, i) + clrs::pow_ui(u0, j);
      CHECK(clrs::abs(got - expected) <= bits_tol(24));
    }
  // k >= 1: 3·sym(u,u,1)_{ij} = u^{i+j} (1 - u²)^k.
  YknPair y2 = clrs::ykn_matrix(3, 2, 4);
  BigFloat disc = (BigFloat(1) - u0 * u0) * (BigFloat(1) - u0 * u0);
  for (std::size_t i = 0; i <= 2; ++i)
    for (std::size_t j = 0; j <= 2; ++j) {
      BigFloat got = y2.sym(i, j).eval({u0, u0, BigFloat(1)}) * BigFloat(3);
      CHECK(clrs::abs(got - clrs::pow_ui(u0, i + j) * disc) <= bits_tol(24));
    }
}

TEST_CASE("kissing model lays out cap constraints and invariant samples", "[models]") {
  KissingModelSpec spec;
  spec.n = 3;
  spec.d = 2;
  KissingModel model = clrs::kissing_model(spec);

  REQUIRE(model.program.psd_vars.size() == 8);  // a_0..a_4 and F_0..F_2
  REQUIRE(model.program.constraints.size() == 2);
  REQUIRE(model.inputs.size() == 2);
  CHECK(model.program.num_free == 0);
  for (long k = 0; k <= 4; ++k) {
    CHECK(model.program.psd_vars[static_cast<std::size_t>(k)].dim == 1);
    CHECK(model.program.psd_vars[static_cast<std::size_t>(k)].objective(0, 0) == BigFloat(-1));
  }
  CHECK(model.program.psd_vars[5].dim == 3);
  CHECK(model.program.psd_vars[6].dim == 2);
  CHECK(model.program.psd_vars[7].dim == 1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(clrs::abs(model.program.psd_vars[5].objective(i, j) + BigFloat(1)) <= bits_tol(16));
  CHECK(model.program.report_constant == BigFloat(1));
  CHECK(model.program.report_sign == BigFloat(-1));

  // Cap interval data: degree-4 space on five Chebyshev points.
  const auto& cap = model.program.constraints[0];
  CHECK(cap.num_vars == 1);
  CHECK_FALSE(cap.symmetric);
  CHECK(cap.psd_terms.size() == 8);
  CHECK(cap.domain.size() == 1);
  CHECK(model.inputs[0].space_degree == 4);
  CHECK(model.inputs[0].samples.size() == 5);
  CHECK(model.inputs[0].basis_values.rows() == 5);
  CHECK(model.inputs[0].basis_values.cols() == 5);

  // The univariate kernel weights are the diagonal restrictions (times -3).
  BigFloat u0(0.21);
  for (long k = 0; k <= 2; ++k) {
    YknPair pair = clrs::ykn_matrix(3, k, 2);
    const auto& term = cap.psd_terms[static_cast<std::size_t>(5 + k)];
    CHECK(term.var == static_cast<std::size_t>(5 + k));
    for (std::size_t i = 0; i < term.weight.rows(); ++i)
      for (std::size_t j = 0; j < term.weight.cols(); ++j) {
        BigFloat got = term.weight(i, j).eval({u0});
        BigFloat expected = pair.sym(i, j).eval({u0, u0, BigFloat(1)}) * BigFloat(-3);
        CHECK(clrs::abs(got - expected) <= bits_tol(24));
      }
  }

  // Cap-triple data: invariant, one sample per invariant basis element, all
  // samples inside the region.
  const auto& triple = model.program.constraints[1];
  CHECK(triple.symmetric);
  CHECK(triple.num_vars == 3);
  CHECK(triple.psd_terms.size() == 3);
  CHECK(triple.domain.size() == 7);
  CHECK(model.inputs[1].space_degree == 4);
  REQUIRE_FALSE(model.inputs[1].invariant_blocks.empty());
  CHECK(model.inputs[1].samples.size() == invariant_dimension(4));
  BigFloat det_floor = BigFloat(0) - clrs::pow2(-40);
  for (const auto& pt : model.inputs[1].samples.points) {
    REQUIRE(pt.size() == 3);
    BigFloat det = BigFloat(1) + BigFloat(2) * pt[0] * pt[1] * pt[2] - pt[0] * pt[0] -
                   pt[1] * pt[1] - pt[2] * pt[2];
    CHECK(det >= det_floor);
    for (const auto& coord : pt) {
      CHECK(coord >= BigFloat(-1) - bits_tol(16));
      CHECK(coord <= BigFloat(0.5) + bits_tol(16));
    }
  }
}

TEST_CASE("kissing bound at half-degree three is a valid upper bound", "[models]") {
  KissingModelSpec spec;
  spec.n = 3;
  spec.d = 3;
  SolverStatus status = SolverStatus::NumericalFailure;
  BigFloat bound = kissing_bound(spec, &status);
  REQUIRE(converged(status));
  CHECK(bound >= BigFloat(12));
  CHECK(bound <= BigFloat(40));
}

TEST_CASE("kissing lowering modes agree and the bound shrinks with degree", "[models]") {
  KissingModelSpec spec;
  spec.n = 3;
  spec.d = 2;

  SolverStatus status_b = SolverStatus::NumericalFailure;
  BigFloat bound_b = kissing_bound(spec, &status_b);
  REQUIRE(converged(status_b));

  spec.mode = LoweringMode::A;
  SolverStatus status_a = SolverStatus::NumericalFailure;
  BigFloat bound_a = kissing_bound(spec, &status_a);
  REQUIRE(converged(status_a));
  CHECK(clrs::abs(bound_a - bound_b) <= BigFloat(std::string("1e-15")));

  KissingModelSpec next;
  next.n = 3;
  next.d = 3;
  SolverStatus status_next = SolverStatus::NumericalFailure;
  BigFloat bound_next = kissing_bound(next, &status_next);
  REQUIRE(converged(status_next));
  CHECK(bound_next <= bound_b + BigFloat(std::string("1e-12")));
}

TEST_CASE("ball volumes match the closed forms", "[models]") {
  BigFloat r(0.7);
  BigFloat pi = clrs::const_pi();
  CHECK(clrs::abs(clrs::ball_volume(1, r) - BigFloat(2) * r) <= bits_tol(16));
  CHECK(clrs::abs(clrs::ball_volume(2, r) - pi * r * r) <= bits_tol(16));
  BigFloat v3 = pi * r * r * r * BigFloat(4) / BigFloat(3);
  CHECK(clrs::abs(clrs::ball_volume(3, r) - v3) <= bits_tol(16));
}

TEST_CASE("packing gram matrix is the volume gram and positive semidefinite", "[models]") {
  PackingModelSpec spec;
  spec.n = 2;
  spec.radii = {BigFloat(0.1)};
  spec.degree = 3;
  spec.scale = BigFloat(1.35);
  PackingModel single = clrs::packing_model(spec);
  BigFloat expected = clrs::ball_volume(2, BigFloat(1.35) * BigFloat(0.1));
  CHECK(clrs::abs(single.gram(0, 0) - expected) <= bits_tol(24) * expected);

  spec.radii = {BigFloat(0.1), BigFloat(1)};
  PackingModel pairm = clrs::packing_model(spec);
  const DenseMatrix& w = pairm.gram;
  CHECK(clrs::abs(w(0, 1) - w(1, 0)) <= bits_tol(16));
  // Rank-one Gram: the off-diagonal squares to the product of the diagonal.
  CHECK(clrs::abs(w(0, 1) * w(0, 1) - w(0, 0) * w(1, 1)) <=
        bits_tol(32) * w(0, 0) * w(1, 1));
  // Positive semidefinite up to roundoff: a tiny ridge makes it factorable.
  DenseMatrix ridged = w;
  BigFloat ridge = clrs::pow2(-120) * (BigFloat(1) + w.max_abs());
  for (std::size_t i = 0; i < 2; ++i) ridged(i, i) += ridge;
  CHECK_NOTHROW(clrs::cholesky(ridged));
}

TEST_CASE("packing model lays out the constraint family", "[models]") {
  PackingModelSpec spec;
  spec.n = 2;
  spec.radii = {BigFloat(0.1), BigFloat(1)};
  spec.degree = 5;  // terms A^(0)..A^(5)
  PackingModel model = clrs::packing_model(spec);

  REQUIRE(model.program.num_free == 19);  // 6 terms × 3 entries + the bound variable
  REQUIRE(model.program.constraints.size() == 7);
  REQUIRE(model.inputs.size() == 7);
  CHECK(model.program.psd_vars.empty());
  CHECK(model.program.objective[18] == BigFloat(-1));
  CHECK(model.program.report_sign == BigFloat(-1));

  // Matrix constraints: the constant block and the half-line block.
  CHECK(model.program.constraints[0].mult == 2);
  CHECK(model.inputs[0].space_degree == 0);
  CHECK(model.program.constraints[1].mult == 2);
  CHECK(model.inputs[1].space_degree == 6);
  CHECK(model.inputs[1].samples.size() == 7);
  for (const auto& pt : model.inputs[1].samples.points) {
    CHECK(pt[0] >= BigFloat(0));
    CHECK(pt[0] <= model.truncation);
  }

  // Off-center decay constraints start at the touching distances.
  std::vector<BigFloat> cuts = {BigFloat(0.04), BigFloat(1.21), BigFloat(4)};
  for (std::size_t p = 0; p < 3; ++p) {
    const auto& input = model.inputs[2 + p];
    CHECK(model.program.constraints[2 + p].mult == 1);
    for (const auto& pt : input.samples.points) {
      CHECK(pt[0] >= cuts[p] - bits_tol(16));
      CHECK(pt[0] <= model.truncation);
    }
    CHECK(cuts[p] < model.truncation);
  }

  // Decay coefficients are the negated scaled Laguerre polynomials; the k-th
  // term variable carries a T^k normalization so its columns divide by T^k.
  BigFloat pi = clrs::const_pi();
  BigFloat x0(0.8);
  for (long k = 0; k <= 2; ++k) {
    const auto& cm = model.program.constraints[2].coeff.at(static_cast<std::size_t>(k) * 3);
    BigFloat expected = clrs::laguerre(BigFloat(0), k).eval({pi * x0}) *
                        clrs::factorial(static_cast<unsigned long>(k)) /
                        clrs::pow_ui(pi, static_cast<unsigned long>(k)) /
                        clrs::pow_ui(model.truncation, static_cast<unsigned long>(k));
    CHECK(clrs::abs(cm(0, 0).eval({x0}) + expected) <= bits_tol(32));
  }

  // Half-line coefficients are the matching normalized monomials (x/T)^k.
  {
    const auto& cm = model.program.constraints[1].coeff.at(6);  // k = 2, entry (0,0)
    BigFloat ratio = x0 / model.truncation;
    CHECK(clrs::abs(cm(0, 0).eval({x0}) - ratio * ratio) <= bits_tol(32));
  }

  // Center-value constraints pair the bound variable with the diagonal terms.
  const auto& center = model.program.constraints[5];
  CHECK(center.coeff.at(18)(0, 0).eval({BigFloat(0)}) == BigFloat(1));
  CHECK(clrs::abs(center.coeff.at(0)(0, 0).eval({BigFloat(0)}) + BigFloat(1)) <= bits_tol(16));
}

TEST_CASE("packing bounds are valid and tighten with degree", "[models]") {
  clrs_tests::PrecisionGuard guard(384);

  PackingModelSpec spec;
  spec.n = 2;
  spec.radii = {BigFloat(1) / BigFloat(10), BigFloat(1)};
  spec.scale = BigFloat(1.35);

  clrs::SolverOptions opt;
  opt.precision = 384;
  opt.max_iterations = 300;
  opt.gap_tol = BigFloat(std::string("1e-12"));

  auto bound_at = [&](long degree) {
    spec.degree = degree;
    PackingModel model = clrs::packing_model(spec);
    LoweredProgram lowered = clrs::lower(model.program, model.inputs, LoweringMode::B);
    clrs::SolverResult res = clrs::solve(lowered.sdp, opt);
    INFO("degree " << degree << ": " << res.message);
    REQUIRE(converged(res.status));
    return clrs::reported_bound(lowered, res.dual_objective);
  };

  BigFloat b13 = bound_at(13);
  BigFloat b15 = bound_at(15);

  // Any converged bound dominates the known hexagonal-packing density floor.
  CHECK(b13 >= BigFloat(0.906));
  CHECK(b13 <= BigFloat(5));
  // Extending the coefficient family can only tighten the bound.
  CHECK(b15 <= b13 + BigFloat(std::string("1e-9")));
}

// The degree-31 coefficient variables make the free-variable system a
// monomial Vandermonde, so the solve needs more headroom than the default
// 256 bits; 768 bits converges with a comfortable margin.
TEST_CASE("packing bound reproduces the planar two-radius values", "[models][.heavy]") {
  clrs_tests::PrecisionGuard guard(768);

  PackingModelSpec spec;
  spec.n = 2;
  spec.radii = {BigFloat(1) / BigFloat(10), BigFloat(1)};
  spec.degree = 31;

  clrs::SolverOptions opt;
  opt.precision = 768;
  opt.max_iterations = 300;
  opt.gap_tol = BigFloat(std::string("1e-12"));
  opt.primal_tol = BigFloat(std::string("1e-30"));
  opt.dual_tol = BigFloat(std::string("1e-30"));

  spec.scale = BigFloat(1.35);
  PackingModel scaled = clrs::packing_model(spec);
  LoweredProgram lowered = clrs::lower(scaled.program, scaled.inputs, LoweringMode::B);
  clrs::SolverResult res = clrs::solve(lowered.sdp, opt);
  INFO(res.message);
  REQUIRE(converged(res.status));
  BigFloat bound = clrs::reported_bound(lowered, res.dual_objective);
  CHECK(clrs::abs(bound - BigFloat(0.9697)) <= BigFloat(std::string("5e-3")));

  spec.scale = BigFloat(1);
  PackingModel plain = clrs::packing_model(spec);
  LoweredProgram lowered_plain = clrs::lower(plain.program, plain.inputs, LoweringMode::B);
  clrs::SolverResult res_plain = clrs::solve(lowered_plain.sdp, opt);
  INFO(res_plain.message);
  REQUIRE(converged(res_plain.status));
  BigFloat bound_plain = clrs::reported_bound(lowered_plain, res_plain.dual_objective);
  CHECK(clrs::abs(bound_plain - BigFloat(1.155)) <= BigFloat(std::string("5e-3")));
}
