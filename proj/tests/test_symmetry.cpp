// Symmetry-adapted bases, invariant block matrices, invariant semialgebraic
// descriptions, and invariant unisolvent sample sets.

#include <algorithm>
#include <cstddef>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "clrs/sampling.hpp"
#include "clrs/symmetry.hpp"
#include "helpers.hpp"

using clrs::BigFloat;
using clrs::DenseMatrix;
using clrs::GroupAction;
using clrs::IrrepTable;
using clrs::Polynomial;
using clrs::SampleSet;
using clrs::SymAdaptedBasis;
using clrs::Unisolvence;
using clrs_tests::Rng;

namespace {

const BigFloat kTol = clrs::pow2(20 - 256);

std::vector<BigFloat> random_point(Rng& rng, std::size_t n) {
  std::vector<BigFloat> x;
  for (std::size_t i = 0; i < n; ++i) x.emplace_back(rng.next_unit());
  return x;
}

GroupAction trivial_action(std::size_t n) {
  GroupAction a;
  a.elements.push_back(DenseMatrix::identity(n));
  return a;
}

IrrepTable trivial_irreps() {
  IrrepTable t;
  clrs::Irrep triv;
  triv.matrices.push_back(DenseMatrix::identity(1));
  t.irreps.push_back(std::move(triv));
  return t;
}

// Dihedral group of the equilateral triangle centered at the origin: the
// linear realization of permuting its three vertices.
GroupAction triangle_action() {
  BigFloat c = BigFloat(-1) / BigFloat(2);           // cos(120°)
  BigFloat s = sqrt(BigFloat(3)) / BigFloat(2);      // sin(120°)
  auto mat = [](const BigFloat& a, const BigFloat& b, const BigFloat& cc, const BigFloat& d) {
    DenseMatrix m(2, 2);
    m(0, 0) = a; m(0, 1) = b; m(1, 0) = cc; m(1, 1) = d;
    return m;
  };
  GroupAction g;
  g.elements.push_back(DenseMatrix::identity(2));
  g.elements.push_back(mat(c, -s, s, c));                      // rotation 120°
  g.elements.push_back(mat(c, s, -s, c));                      // rotation 240°
  g.elements.push_back(mat(BigFloat(1), BigFloat(0), BigFloat(0), BigFloat(-1)));  // mirror
  g.elements.push_back(matmul(g.elements[1], g.elements[3]));
  g.elements.push_back(matmul(g.elements[2], g.elements[3]));
  return g;
}

}  // namespace

TEST_CASE("group actions validate: orthogonality, identity, closure", "[symmetry]") {
  GroupAction s3 = clrs::coordinate_permutation_action(3);
  REQUIRE(s3.size() == 6);
  CHECK_NOTHROW(s3.validate());
  CHECK_NOTHROW(clrs::dihedral4_action().validate());
  CHECK_NOTHROW(triangle_action().validate());

  GroupAction broken = s3;
  broken.elements.pop_back();  // drop one transposition: no longer closed
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  GroupAction scaled = s3;
  scaled.elements[1].scale(BigFloat(2));
  CHECK_THROWS_AS(scaled.validate(), std::invalid_argument);

  // Non-orthogonal irrep matrices are rejected.
  IrrepTable bad = clrs::symmetric_group_irreps(s3);
  bad.irreps[2].matrices[1].scale(BigFloat(3));
  CHECK_THROWS_AS(clrs::validate_irreps(s3, bad), clrs::NonOrthogonalIrrep);
}

TEST_CASE("coordinate swap splits polynomials into symmetric and antisymmetric parts",
          "[symmetry]") {
  GroupAction s2 = clrs::coordinate_permutation_action(2);
  IrrepTable irreps = clrs::symmetric_group_irreps(s2);
  SymAdaptedBasis basis = clrs::symmetry_adapted_basis(s2, irreps, 1);

  REQUIRE(basis.components.size() == 2);
  const auto& triv = basis.components[0];
  const auto& sign = basis.components[1];
  REQUIRE(triv.copies() == 2);  // {1, x+y}
  REQUIRE(sign.copies() == 1);  // {x-y}
  CHECK(triv.degrees == std::vector<long>{0, 1});
  CHECK(sign.degrees == std::vector<long>{1});

  const DenseMatrix& swap = s2.elements[1];
  for (const auto& copy : triv.elements)
    CHECK((clrs::apply_group_element(copy[0], swap) - copy[0]).max_abs_coefficient() <= kTol);
  for (const auto& copy : sign.elements)
    CHECK((clrs::apply_group_element(copy[0], swap) + copy[0]).max_abs_coefficient() <= kTol);
}

TEST_CASE("trivial group reproduces the monomial basis", "[symmetry]") {
  SymAdaptedBasis basis = clrs::symmetry_adapted_basis(trivial_action(2), trivial_irreps(), 3);
  REQUIRE(basis.components.size() == 1);
  const auto& comp = basis.components[0];
  clrs::PolyBasis monos = clrs::monomial_basis(2, 3);
  REQUIRE(comp.copies() == monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i) {
    CHECK(comp.degrees[i] == monos.degrees[i]);
    CHECK((comp.elements[i][0] - monos.elements[i]).max_abs_coefficient() <= kTol);
  }
}

TEST_CASE("symmetry adapted bases count the full space dimension", "[symmetry]") {
  GroupAction d4 = clrs::dihedral4_action();
  IrrepTable d4_irreps = clrs::dihedral4_irreps(d4);
  SymAdaptedBasis basis = clrs::symmetry_adapted_basis(d4, d4_irreps, 6);

  CHECK(basis.element_count(3) == 10);  // dim R[x,y]_{<=3}
  CHECK(basis.element_count(6) == 28);  // dim R[x,y]_{<=6}

  // The invariant (trivial-irrep) component at degree <= 6 has dimension 6.
  std::size_t invariant_dim = 0;
  for (const auto& comp : basis.components)
    if (comp.irrep == 0)
      invariant_dim += static_cast<std::size_t>(
          std::count_if(comp.degrees.begin(), comp.degrees.end(), [](long d) { return d <= 6; }));
  CHECK(invariant_dim == 6);

  GroupAction s3 = clrs::coordinate_permutation_action(3);
  SymAdaptedBasis s3_basis =
      clrs::symmetry_adapted_basis(s3, clrs::symmetric_group_irreps(s3), 4);
  CHECK(s3_basis.element_count(4) == 35);  // dim R[u,v,t]_{<=4}
  CHECK(s3_basis.element_count(2) == 10);
}

TEST_CASE("symmetry adapted basis elements transform equivariantly", "[symmetry]") {
  Rng rng(71);
  GroupAction s3 = clrs::coordinate_permutation_action(3);
  IrrepTable irreps = clrs::symmetric_group_irreps(s3);
  SymAdaptedBasis basis = clrs::symmetry_adapted_basis(s3, irreps, 3);

  for (const auto& comp : basis.components) {
    const clrs::Irrep& pi = irreps.irreps[comp.irrep];
    for (std::size_t g = 0; g < s3.size(); ++g) {
      for (const auto& copy : comp.elements) {
        for (std::size_t j = 0; j < comp.dim; ++j) {
          // L(γ)e_{i,j} = Σ_k π(γ)_{k,j} e_{i,k}
          Polynomial lhs = clrs::apply_group_element(copy[j], s3.elements[g]);
          Polynomial rhs(3);
          for (std::size_t k = 0; k < comp.dim; ++k)
            rhs += copy[k] * pi.matrices[g](k, j);
          for (int trial = 0; trial < 20; ++trial) {
            auto x = random_point(rng, 3);
            CHECK(clrs::abs(lhs.eval(x) - rhs.eval(x)) <= kTol);
          }
        }
      }
    }
  }
}

TEST_CASE("isotypic projections are idempotent", "[symmetry]") {
  GroupAction d4 = clrs::dihedral4_action();
  IrrepTable irreps = clrs::dihedral4_irreps(d4);
  clrs::PolyBasis monos = clrs::monomial_basis(2, 4);
  for (const auto& irrep : irreps.irreps) {
    for (std::size_t k = 0; k < monos.size(); ++k) {
      Polynomial once = clrs::isotypic_projection(monos.elements[k], d4, irrep, 0, 0);
      Polynomial twice = clrs::isotypic_projection(once, d4, irrep, 0, 0);
      CHECK((twice - once).max_abs_coefficient() <= kTol);
    }
  }
}

TEST_CASE("invariant blocks are invariant, PSD, and factor with rank d_pi", "[symmetry]") {
  Rng rng(72);
  GroupAction s3 = clrs::coordinate_permutation_action(3);
  IrrepTable irreps = clrs::symmetric_group_irreps(s3);
  SymAdaptedBasis basis = clrs::symmetry_adapted_basis(s3, irreps, 2);
  auto family = clrs::build_E_pi(basis, 2);
  REQUIRE(family.size() >= 2);

  BigFloat ridge = clrs::pow2(-99);  // ~1e-30
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_point(rng, 3);
    for (const auto& block : family) {
      DenseMatrix e = block.e.eval(x);

      // Invariance under a nontrivial group element.
      const DenseMatrix& theta = s3.elements[1 + trial % 5];
      std::vector<BigFloat> gx(3, BigFloat(0));
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) gx[r].add_mul(theta(r, c), x[c]);
      CHECK(clrs_tests::max_abs_diff(block.e.eval(gx), e) <= kTol);

      // E = (1/d_pi)·F·F^T at every point.
      DenseMatrix f = block.factors.eval(x);
      DenseMatrix ff = matmul(f, f, clrs::Transpose::No, clrs::Transpose::Yes);
      ff.scale(BigFloat(1) / BigFloat(static_cast<long>(block.d_pi)));
      CHECK(clrs_tests::max_abs_diff(ff, e) <= kTol);

      // PSD up to a 1e-30 ridge.
      for (std::size_t i = 0; i < e.rows(); ++i) e(i, i) += ridge;
      e.symmetrize();
      CHECK_NOTHROW(clrs::cholesky(e));
    }
  }

  // Trivial group: E is the rank-1 outer product of the monomial basis.
  SymAdaptedBasis plain = clrs::symmetry_adapted_basis(trivial_action(2), trivial_irreps(), 1);
  auto rank1 = clrs::build_E_pi(plain, 1);
  REQUIRE(rank1.size() == 1);
  CHECK(rank1[0].d_pi == 1);
  auto x = random_point(rng, 2);
  DenseMatrix e = rank1[0].e.eval(x);
  std::vector<BigFloat> b = {BigFloat(1), x[0], x[1]};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(clrs::abs(e(i, j) - b[i] * b[j]) <= kTol);
}

TEST_CASE("invariant generators describe the same semialgebraic set", "[symmetry]") {
  // Two-element group x -> -x: orbit of g = x is {x, -x}.
  GroupAction flip;
  flip.elements.push_back(DenseMatrix::identity(1));
  DenseMatrix neg(1, 1);
  neg(0, 0) = BigFloat(-1);
  flip.elements.push_back(neg);
  Polynomial x1 = Polynomial::variable(1, 0);
  auto gens = clrs::invariant_generators(x1, flip);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].is_zero());                                    // x + (-x)
  CHECK((gens[1] + x1 * x1).max_abs_coefficient() <= kTol);    // x·(-x) = -x²

  // Trivial group returns {g}.
  auto single = clrs::invariant_generators(x1, trivial_action(1));
  REQUIRE(single.size() == 1);
  CHECK((single[0] - x1).max_abs_coefficient() <= kTol);

  // Dihedral square symmetry, g = x - c: S(orbit) and S(invariants) agree on
  // a large random sample away from the boundary.
  GroupAction d4 = clrs::dihedral4_action();
  Polynomial g = Polynomial::variable(2, 0) - Polynomial::constant(2, BigFloat(0.5));
  auto inv = clrs::invariant_generators(g, d4);
  REQUIRE(inv.size() == 8);
  for (const auto& p : inv)
    for (const auto& theta : d4.elements)
      CHECK((clrs::apply_group_element(p, theta) - p).max_abs_coefficient() <=
            clrs::pow2(30 - 256));

  // Membership comparison in double precision (the polynomials have modest
  // coefficients; boundary-ambiguous points are skipped).
  auto orbit_value = [&](double px, double py) {
    double m = 1e300;
    for (const auto& theta : d4.elements) {
      double qx = theta(0, 0).to_double() * px + theta(0, 1).to_double() * py;
      m = std::min(m, qx - 0.5);
    }
    return m;
  };
  Rng rng(73);
  int checked = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    double px = 2.0 * rng.next_unit(), py = 2.0 * rng.next_unit();
    double orbit_min = orbit_value(px, py);
    double inv_min = 1e300;
    for (const auto& p : inv) {
      double v = p.eval({BigFloat(px), BigFloat(py)}).to_double();
      inv_min = std::min(inv_min, v);
    }
    if (std::abs(orbit_min) < 1e-9 || std::abs(inv_min) < 1e-9) continue;
    ++checked;
    CHECK((orbit_min >= 0.0) == (inv_min >= 0.0));
  }
  CHECK(checked > 90000);
}

TEST_CASE("orbit representatives pick one point per orbit", "[symmetry]") {
  GroupAction s2 = clrs::coordinate_permutation_action(2);
  SampleSet s;
  s.points = {{BigFloat(0), BigFloat(1)}, {BigFloat(1), BigFloat(0)}, {BigFloat(2), BigFloat(2)}};
  SampleSet reps = clrs::orbit_representatives(s, s2);
  REQUIRE(reps.size() == 2);
  CHECK(reps.points[0][0] == BigFloat(0));
  CHECK(reps.points[0][1] == BigFloat(1));
  CHECK(reps.points[1][0] == BigFloat(2));

  SampleSet unchanged = clrs::orbit_representatives(s, trivial_action(2));
  CHECK(unchanged.size() == 3);

  SampleSet open_set;
  open_set.points = {{BigFloat(0), BigFloat(1)}};
  CHECK_THROWS_AS(clrs::orbit_representatives(open_set, s2), clrs::NotInvariant);
}

TEST_CASE("simplex grids are invariant minimal unisolvent sets", "[symmetry]") {
  // 1-D: {0, 1/3, 2/3, 1}.
  SampleSet line = clrs::simplex_invariant_grid({{BigFloat(0)}, {BigFloat(1)}}, 3);
  REQUIRE(line.size() == 4);
  CHECK(clrs::check_unisolvent(clrs::monomial_basis(1, 3), line) == Unisolvence::Minimal);

  // Equilateral triangle centered at the origin, d = 2: 6 points.
  BigFloat h = sqrt(BigFloat(3)) / BigFloat(2);
  std::vector<std::vector<BigFloat>> tri = {
      {BigFloat(1), BigFloat(0)},
      {BigFloat(-0.5), h},
      {BigFloat(-0.5), -h}};
  SampleSet grid2 = clrs::simplex_invariant_grid(tri, 2);
  REQUIRE(grid2.size() == 6);
  CHECK(clrs::check_unisolvent(clrs::monomial_basis(2, 2), grid2) == Unisolvence::Minimal);

  // The grid is invariant under the triangle's dihedral action, and the orbit
  // representatives form a minimal unisolvent set for the invariant subspace.
  GroupAction tri_action = triangle_action();
  SampleSet reps = clrs::orbit_representatives(grid2, tri_action);
  IrrepTable tri_irreps = clrs::symmetric_group_irreps(clrs::coordinate_permutation_action(3));
  // Invariant basis of degree <= 2 for the planar action via its trivial
  // component.
  IrrepTable planar;
  planar.irreps.resize(3);
  // Build irreps of the planar action aligned with tri_action: trivial, sign
  // (determinant), and the faithful 2-D action itself.
  for (const auto& theta : tri_action.elements) {
    planar.irreps[0].matrices.push_back(DenseMatrix::identity(1));
    DenseMatrix det(1, 1);
    det(0, 0) = theta(0, 0) * theta(1, 1) - theta(0, 1) * theta(1, 0);
    planar.irreps[1].matrices.push_back(det);
    planar.irreps[2].matrices.push_back(theta);
  }
  SymAdaptedBasis planar_basis = clrs::symmetry_adapted_basis(tri_action, planar, 2);
  std::vector<Polynomial> invariant;
  for (const auto& comp : planar_basis.components)
    if (comp.irrep == 0)
      for (const auto& copy : comp.elements) invariant.push_back(copy[0]);
  REQUIRE(invariant.size() == reps.size());  // dim of invariant degree-<=2 space = #orbits
  clrs::PolyBasis inv_basis;
  for (auto& p : invariant) {
    inv_basis.degrees.push_back(p.degree() < 0 ? 0 : p.degree());
    inv_basis.elements.push_back(std::move(p));
  }
  CHECK(clrs::check_unisolvent(inv_basis, reps) == Unisolvence::Minimal);

  // Tetrahedron, d = 4: C(7,3) = 35 points, minimal unisolvent.
  std::vector<std::vector<BigFloat>> tet = {
      {BigFloat(0), BigFloat(0), BigFloat(0)},
      {BigFloat(1), BigFloat(0), BigFloat(0)},
      {BigFloat(0), BigFloat(1), BigFloat(0)},
      {BigFloat(0), BigFloat(0), BigFloat(1)}};
  SampleSet grid4 = clrs::simplex_invariant_grid(tet, 4);
  REQUIRE(grid4.size() == 35);
  CHECK(clrs::check_unisolvent(clrs::monomial_basis(3, 4), grid4) == Unisolvence::Minimal);

  // Degenerate vertices are rejected.
  CHECK_THROWS_AS(clrs::simplex_invariant_grid(
                      {{BigFloat(0), BigFloat(0)}, {BigFloat(1), BigFloat(1)},
                       {BigFloat(2), BigFloat(2)}},
                      2),
                  std::invalid_argument);
}

TEST_CASE("28-point dihedral configurations are never unisolvent at degree 6", "[symmetry]") {
  auto check_fixture = [](const clrs::D4Fixture& fx) {
    REQUIRE(fx.points.size() == 28);
    CHECK(fx.witness.degree() == 6);
    CHECK_FALSE(fx.witness.is_zero());

    // The point set is closed under the action and splits into 6 orbits.
    SampleSet reps = clrs::orbit_representatives(fx.points, fx.action);
    CHECK(reps.size() == 6);

    // The witness annihilates every point ...
    BigFloat scale = fx.witness.max_abs_coefficient();
    for (const auto& pt : fx.points.points)
      CHECK(clrs::abs(fx.witness.eval(pt)) <= clrs::pow2(30 - 256) * scale);

    // ... so the full degree-6 Vandermonde (28 columns) is rank deficient.
    CHECK(clrs::check_unisolvent(clrs::monomial_basis(2, 6), fx.points) ==
          Unisolvence::NotUnisolvent);
  };

  check_fixture(clrs::d4_nonexistence_fixture());
  check_fixture(clrs::d4_nonexistence_fixture(
      {BigFloat(0.17), BigFloat(0.42), BigFloat(0.66), BigFloat(0.9), BigFloat(1.2)},
      {true, false, true, false, true}, BigFloat(0.25), BigFloat(0.95)));
  check_fixture(clrs::d4_nonexistence_fixture(
      {BigFloat(1), BigFloat(2), BigFloat(3), BigFloat(4), BigFloat(5)},
      {false, false, false, false, false}, BigFloat(1), BigFloat(3)));
}
