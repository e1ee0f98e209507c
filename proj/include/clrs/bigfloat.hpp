#ifndef CLRS_BIGFLOAT_HPP
#define CLRS_BIGFLOAT_HPP

// Arbitrary-precision floating point scalar backed by MPFR.
//
// All values carry the global working precision that is in effect when they
// are created (set_working_precision / working_precision).  The precision is
// a per-run parameter: it is set once at startup (CLI --precision) before any
// computation and never changed mid-solve, so plain relaxed atomics suffice.
// Every operation rounds to nearest at the working precision, which makes
// results bit-reproducible across runs and thread counts.

#include <mpfr.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

namespace clrs {

namespace detail {
inline std::atomic<long>& precision_slot() {
  static std::atomic<long> prec{256};
  return prec;
}
}  // namespace detail

inline void set_working_precision(long bits) {
  if (bits < 64) throw std::invalid_argument("working precision must be >= 64 bits");
  detail::precision_slot().store(bits, std::memory_order_relaxed);
}

inline long working_precision() {
  return detail::precision_slot().load(std::memory_order_relaxed);
}

class BigFloat {
 public:
  BigFloat() {
    mpfr_init2(v_, working_precision());
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double d) {
    mpfr_init2(v_, working_precision());
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  BigFloat(int i) {
    mpfr_init2(v_, working_precision());
    mpfr_set_si(v_, i, MPFR_RNDN);
  }
  BigFloat(long i) {
    mpfr_init2(v_, working_precision());
    mpfr_set_si(v_, i, MPFR_RNDN);
  }
  explicit BigFloat(const std::string& s) {
    mpfr_init2(v_, working_precision());
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("BigFloat: cannot parse '" + s + "'");
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  // ---- in-place arithmetic ------------------------------------------------
  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  // this += a*b with a single rounding; the workhorse of all dense kernels.
  void add_mul(const BigFloat& a, const BigFloat& b) { mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN); }
  // this -= a*b with a single rounding.
  void sub_mul(const BigFloat& a, const BigFloat& b) { mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN); mpfr_neg(v_, v_, MPFR_RNDN); }

  void negate() { mpfr_neg(v_, v_, MPFR_RNDN); }
  void set_zero() { mpfr_set_zero(v_, 1); }

  // ---- queries -------------------------------------------------------------
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_negative() const { return mpfr_sgn(v_) < 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r; mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r;
  }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

 private:
  mpfr_t v_;
};

// ---- free functions ---------------------------------------------------------

inline BigFloat abs(const BigFloat& a) {
  BigFloat r; mpfr_abs(r.raw(), a.raw(), MPFR_RNDN); return r;
}
inline BigFloat sqrt(const BigFloat& a) {
  BigFloat r; mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN); return r;
}
inline BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }
inline BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }

// Exact power of two (used for tolerances written as 2^(k - p)).
inline BigFloat pow2(long e) {
  BigFloat r(1);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

inline BigFloat pow_ui(const BigFloat& a, unsigned long k) {
  BigFloat r; mpfr_pow_ui(r.raw(), a.raw(), k, MPFR_RNDN); return r;
}

inline BigFloat const_pi() {
  BigFloat r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r;
}

inline BigFloat cos(const BigFloat& a) {
  BigFloat r; mpfr_cos(r.raw(), a.raw(), MPFR_RNDN); return r;
}
inline BigFloat sin(const BigFloat& a) {
  BigFloat r; mpfr_sin(r.raw(), a.raw(), MPFR_RNDN); return r;
}
inline BigFloat exp(const BigFloat& a) {
  BigFloat r; mpfr_exp(r.raw(), a.raw(), MPFR_RNDN); return r;
}

inline BigFloat positive_infinity() {
  BigFloat r; mpfr_set_inf(r.raw(), 1); return r;
}

inline BigFloat gamma_function(const BigFloat& x) {
  BigFloat r; mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN); return r;
}

inline BigFloat factorial(unsigned long k) {
  BigFloat r; mpfr_fac_ui(r.raw(), k, MPFR_RNDN); return r;
}

// Deterministic decimal rendering with enough digits to be faithful at the
// value's precision: parsing the string back recovers the exact same bits, and
// re-rendering gives the identical string (bundle round-trip contract).
inline std::string to_string(const BigFloat& a) {
  if (!a.is_finite()) return mpfr_nan_p(a.raw()) ? "nan" : (a.sign() > 0 ? "inf" : "-inf");
  if (a.is_zero()) return "0";
  long prec = mpfr_get_prec(a.raw());
  size_t digits = static_cast<size_t>(std::ceil(prec * 0.30103)) + 3;
  mpfr_exp_t exp = 0;
  char* s = mpfr_get_str(nullptr, &exp, 10, digits, a.raw(), MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant = mant.substr(1);
  }
  // mant is "dddd..." representing 0.dddd * 10^exp; normalize to d.ddd e(exp-1).
  std::string out = sign + mant.substr(0, 1) + "." + mant.substr(1) + "e" +
                    std::to_string(static_cast<long>(exp) - 1);
  return out;
}

inline BigFloat from_string(const std::string& s) { return BigFloat(s); }

}  // namespace clrs

#endif  // CLRS_BIGFLOAT_HPP
