#ifndef CLRS_POLYNOMIAL_HPP
#define CLRS_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clrs/bigfloat.hpp"
#include "clrs/dense.hpp"

namespace clrs {

// Sparse multivariate polynomial over BigFloat.  Terms are keyed by exponent
// vectors of fixed length num_vars(); the map's lexicographic key order makes
// every traversal (arithmetic, evaluation, degree scans) deterministic.
// num_vars() == 0 is legal and describes constants evaluated at the empty
// point — degree-0 scalar constraints use that one-dimensional space.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, BigFloat>;

  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const BigFloat& value) {
    Polynomial p(num_vars);
    if (!value.is_zero()) p.terms_.emplace(Exponents(num_vars, 0), value);
    return p;
  }

  static Polynomial variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw std::invalid_argument("Polynomial::variable: index out of range");
    Polynomial p(num_vars);
    Exponents e(num_vars, 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), BigFloat(1));
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Total degree; -1 for the zero polynomial.
  long degree() const {
    long deg = -1;
    for (const auto& term : terms_) {
      long d = 0;
      for (unsigned k : term.first) d += static_cast<long>(k);
      deg = std::max(deg, d);
    }
    return deg;
  }

  BigFloat coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigFloat(0) : it->second;
  }

  void add_term(const Exponents& e, const BigFloat& c) {
    if (e.size() != num_vars_)
      throw std::invalid_argument("Polynomial::add_term: exponent arity mismatch");
    if (c.is_zero()) return;
    auto ins = terms_.emplace(e, c);
    if (!ins.second) {
      ins.first->second += c;
      if (ins.first->second.is_zero()) terms_.erase(ins.first);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& term : o.terms_) add_term(term.first, term.second);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& term : o.terms_) add_term(term.first, -term.second);
    return *this;
  }

  Polynomial& operator*=(const BigFloat& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& term : terms_) term.second *= s;
    }
    return *this;
  }

  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& term : a.terms_) term.second.negate();
    return a;
  }
  friend Polynomial operator*(Polynomial a, const BigFloat& s) { a *= s; return a; }
  friend Polynomial operator*(const BigFloat& s, Polynomial a) { a *= s; return a; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b);
    Polynomial r(a.num_vars_);
    Exponents e(a.num_vars_);
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        for (std::size_t i = 0; i < a.num_vars_; ++i) e[i] = ta.first[i] + tb.first[i];
        r.add_term(e, ta.second * tb.second);
      }
    }
    return r;
  }

  BigFloat eval(const std::vector<BigFloat>& x) const {
    if (x.size() != num_vars_) throw std::invalid_argument("Polynomial::eval: point arity mismatch");
    // Per-variable power tables keep the cost linear in term count.
    std::vector<unsigned> max_exp(num_vars_, 0);
    for (const auto& term : terms_)
      for (std::size_t i = 0; i < num_vars_; ++i) max_exp[i] = std::max(max_exp[i], term.first[i]);
    std::vector<std::vector<BigFloat>> powers(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      powers[i].reserve(max_exp[i] + 1);
      powers[i].push_back(BigFloat(1));
      for (unsigned k = 1; k <= max_exp[i]; ++k) powers[i].push_back(powers[i].back() * x[i]);
    }
    BigFloat acc(0);
    for (const auto& term : terms_) {
      BigFloat t = term.second;
      for (std::size_t i = 0; i < num_vars_; ++i)
        if (term.first[i] > 0) t *= powers[i][term.first[i]];
      acc += t;
    }
    return acc;
  }

  // p(s_0, ..., s_{n-1}) for polynomial substitutions s_i sharing one arity.
  // Covers linear changes of variables (group actions) and generator
  // compositions alike.
  Polynomial substitute(const std::vector<Polynomial>& subs) const {
    if (subs.size() != num_vars_)
      throw std::invalid_argument("Polynomial::substitute: substitution arity mismatch");
    std::size_t out_vars = num_vars_ == 0 ? 0 : subs[0].num_vars();
    for (const auto& s : subs)
      if (s.num_vars() != out_vars)
        throw std::invalid_argument("Polynomial::substitute: mixed substitution arities");
    // Incremental power chains per variable, grown on demand.
    std::vector<std::vector<Polynomial>> powers(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i)
      powers[i].push_back(Polynomial::constant(out_vars, BigFloat(1)));
    Polynomial r(out_vars);
    for (const auto& term : terms_) {
      Polynomial t = Polynomial::constant(out_vars, term.second);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        unsigned e = term.first[i];
        while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * subs[i]);
        if (e > 0) t *= powers[i][e];
      }
      r += t;
    }
    return r;
  }

  BigFloat max_abs_coefficient() const {
    BigFloat m(0);
    for (const auto& term : terms_) m = max(m, abs(term.second));
    return m;
  }

 private:
  void check_arity(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_)
      throw std::invalid_argument("Polynomial: operand arity mismatch");
  }

  std::size_t num_vars_;
  TermMap terms_;
};

inline Polynomial pow(const Polynomial& a, unsigned e) {
  Polynomial r = Polynomial::constant(a.num_vars(), BigFloat(1));
  Polynomial base = a;
  while (e > 0) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return r;
}

// Exponent vectors of total degree <= d in graded lexicographic order
// (degree ascending, then lexicographic), the basis order used everywhere:
// it keeps degree lists nondecreasing.
inline std::vector<Polynomial::Exponents> exponents_up_to_degree(std::size_t num_vars, long d) {
  std::vector<Polynomial::Exponents> out;
  if (d < 0) return out;
  if (num_vars == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<unsigned> e(num_vars, 0);
  for (long deg = 0; deg <= d; ++deg) {
    // Enumerate compositions of deg into num_vars parts, lexicographically.
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rem) {
      if (i + 1 == num_vars) {
        e[i] = static_cast<unsigned>(rem);
        out.push_back(e);
        return;
      }
      for (long k = rem; k >= 0; --k) {
        e[i] = static_cast<unsigned>(k);
        rec(i + 1, rem - k);
      }
    };
    rec(0, deg);
  }
  return out;
}

struct PolyBasis {
  std::vector<Polynomial> elements;
  std::vector<long> degrees;  // nondecreasing

  std::size_t size() const { return elements.size(); }
};

// Dense matrix with polynomial entries (all sharing one variable arity).
class PolynomialMatrix {
 public:
  PolynomialMatrix() = default;
  PolynomialMatrix(std::size_t rows, std::size_t cols, std::size_t num_vars)
      : rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(num_vars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  long degree() const {
    long d = -1;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
  }

  DenseMatrix eval(const std::vector<BigFloat>& x) const {
    DenseMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(x);
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> entries_;
};

inline PolyBasis monomial_basis(std::size_t num_vars, long max_degree) {
  PolyBasis b;
  for (const auto& e : exponents_up_to_degree(num_vars, max_degree)) {
    Polynomial p(num_vars);
    p.add_term(e, BigFloat(1));
    long deg = 0;
    for (unsigned k : e) deg += static_cast<long>(k);
    b.elements.push_back(std::move(p));
    b.degrees.push_back(deg);
  }
  return b;
}

// Products prod_i g_i^{e_i} of the given generators with weighted total degree
// sum_i deg(g_i)·e_i <= max_degree, in graded order of the weighted degree.
// This is the standard basis for invariant rings with algebraically
// independent generators (elementary symmetric polynomials and the like).
inline PolyBasis generator_power_basis(const std::vector<Polynomial>& generators, long max_degree) {
  if (generators.empty()) throw std::invalid_argument("generator_power_basis: no generators");
  std::size_t num_vars = generators[0].num_vars();
  std::vector<long> weights;
  for (const auto& g : generators) {
    if (g.num_vars() != num_vars)
      throw std::invalid_argument("generator_power_basis: mixed generator arities");
    long d = g.degree();
    if (d <= 0) throw std::invalid_argument("generator_power_basis: generators must be nonconstant");
    weights.push_back(d);
  }
  // Collect exponent tuples with weighted degree <= max_degree.
  std::vector<std::pair<long, std::vector<unsigned>>> tuples;
  std::vector<unsigned> e(generators.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long used) {
    if (i == generators.size()) {
      tuples.emplace_back(used, e);
      return;
    }
    for (long k = 0; used + k * weights[i] <= max_degree; ++k) {
      e[i] = static_cast<unsigned>(k);
      rec(i + 1, used + k * weights[i]);
    }
    e[i] = 0;
  };
  rec(0, 0);
  std::stable_sort(tuples.begin(), tuples.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  PolyBasis b;
  for (const auto& t : tuples) {
    Polynomial p = Polynomial::constant(num_vars, BigFloat(1));
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (t.second[i] > 0) p *= pow(generators[i], t.second[i]);
    b.elements.push_back(std::move(p));
    b.degrees.push_back(t.first);
  }
  return b;
}

// Chebyshev polynomials T_0..T_max_degree composed with the affine map taking
// [a, b] to [-1, 1]; bounded by 1 on [a, b], so double-precision Vandermonde
// passes cannot overflow no matter the degree.
inline PolyBasis chebyshev_basis(long max_degree, const BigFloat& a, const BigFloat& b) {
  if (!(a < b)) throw std::invalid_argument("chebyshev_basis: empty interval");
  BigFloat width = b - a;
  Polynomial x = Polynomial::variable(1, 0);
  Polynomial u = (x * BigFloat(2) - Polynomial::constant(1, a + b)) * (BigFloat(1) / width);
  PolyBasis out;
  Polynomial t_prev = Polynomial::constant(1, BigFloat(1));
  out.elements.push_back(t_prev);
  out.degrees.push_back(0);
  if (max_degree == 0) return out;
  Polynomial t_cur = u;
  out.elements.push_back(t_cur);
  out.degrees.push_back(1);
  for (long k = 2; k <= max_degree; ++k) {
    Polynomial t_next = u * t_cur * BigFloat(2) - t_prev;
    out.elements.push_back(t_next);
    out.degrees.push_back(k);
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return out;
}

}  // namespace clrs

#endif  // CLRS_POLYNOMIAL_HPP
