#pragma once

// Arbitrary-precision real scalar on top of MPFR. Precision is an explicit
// per-value attribute; mixed-precision arithmetic rounds to the smaller
// operand precision. Non-finite values are construction errors, not values.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace iterasym {

// Bits needed so that `digits` significant decimal digits survive a
// round-trip, plus guard bits for iteration round-off.
inline mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
}

class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec = 64) {
    check_prec(prec);
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }

  BigReal(double x, mpfr_prec_t prec) {
    check_prec(prec);
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
    ensure_finite();
  }

  BigReal(int x, mpfr_prec_t prec) : BigReal(static_cast<long>(x), prec) {}

  BigReal(long x, mpfr_prec_t prec) {
    check_prec(prec);
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }

  BigReal(const std::string& s, mpfr_prec_t prec) {
    check_prec(prec);
    mpfr_init2(v_, prec);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw std::invalid_argument("BigReal: unparseable decimal string: " + s);
    }
    ensure_finite();
  }

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }

  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }

  ~BigReal() { mpfr_clear(v_); }

  // Exact rational constructor; num/den at the given precision.
  static BigReal ratio(long num, long den, mpfr_prec_t prec) {
    if (den == 0) throw std::domain_error("BigReal::ratio: zero denominator");
    BigReal r(prec);
    mpfr_set_si(r.v_, num, MPFR_RNDN);
    mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Round to a (usually smaller) precision.
  BigReal at_precision(mpfr_prec_t prec) const {
    check_prec(prec);
    BigReal r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  // Decimal exponent e with |x| in [10^(e), 10^(e+1)); only valid for x != 0.
  long dec_exponent() const {
    if (is_zero()) throw std::domain_error("dec_exponent of zero");
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, 2, v_, MPFR_RNDZ);
    mpfr_free_str(s);
    return static_cast<long>(e) - 1;
  }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    return binop(a, b, mpfr_add);
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    return binop(a, b, mpfr_sub);
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    return binop(a, b, mpfr_mul);
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    if (b.is_zero()) throw std::domain_error("BigReal: division by zero");
    return binop(a, b, mpfr_div);
  }
  friend BigReal operator-(const BigReal& a) {
    BigReal r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& b) { return *this = *this + b; }
  BigReal& operator-=(const BigReal& b) { return *this = *this - b; }
  BigReal& operator*=(const BigReal& b) { return *this = *this * b; }
  BigReal& operator/=(const BigReal& b) { return *this = *this / b; }

  friend BigReal operator*(const BigReal& a, long b) {
    BigReal r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(const BigReal& a, long b) {
    if (b == 0) throw std::domain_error("BigReal: division by zero");
    BigReal r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_) == 0;
  }
  friend bool operator!=(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_) != 0;
  }
  friend bool operator<(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_) < 0;
  }
  friend bool operator>(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_) > 0;
  }
  friend bool operator<=(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_) <= 0;
  }
  friend bool operator>=(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_) >= 0;
  }

  friend BigReal abs(const BigReal& a) {
    BigReal r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal sqrt(const BigReal& a) {
    if (a.sign() < 0) throw std::domain_error("BigReal: sqrt of negative");
    return unop(a, mpfr_sqrt);
  }
  friend BigReal ln(const BigReal& a) {
    if (a.sign() <= 0) throw std::domain_error("BigReal: ln of non-positive");
    return unop(a, mpfr_log);
  }
  friend BigReal log1p(const BigReal& a) {
    BigReal r = unop(a, mpfr_log1p);
    r.ensure_finite();
    return r;
  }
  friend BigReal exp(const BigReal& a) {
    BigReal r = unop(a, mpfr_exp);
    r.ensure_finite();
    return r;
  }
  friend BigReal cos(const BigReal& a) { return unop(a, mpfr_cos); }
  friend BigReal sin(const BigReal& a) { return unop(a, mpfr_sin); }

  friend BigReal pow_int(const BigReal& a, long n) {
    BigReal r(a.precision());
    mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
    r.ensure_finite();
    return r;
  }

  // 2^e at the value's precision.
  static BigReal pow2(long e, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_ui_2exp(r.v_, 1, static_cast<mpfr_exp_t>(e), MPFR_RNDN);
    return r;
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  mpfr_t v_;

  static void check_prec(mpfr_prec_t prec) {
    if (prec < 2) throw std::invalid_argument("BigReal: precision < 2 bits");
  }

  void ensure_finite() const {
    if (!mpfr_number_p(v_))
      throw std::domain_error("BigReal: non-finite value");
  }

  using mpfr_binop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using mpfr_unop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  static BigReal binop(const BigReal& a, const BigReal& b, mpfr_binop op) {
    BigReal r(std::min(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.ensure_finite();
    return r;
  }

  static BigReal unop(const BigReal& a, mpfr_unop op) {
    BigReal r(a.precision());
    op(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
};

// Decimal string with `digits` significant digits, round-to-nearest.
// Plain notation unless the decimal exponent exceeds 40 in magnitude.
inline std::string format_decimal(const BigReal& x, int digits) {
  if (digits < 1) throw std::invalid_argument("format_decimal: digits < 1");
  if (x.is_zero()) {
    std::string s = "0";
    if (digits > 1) s += "." + std::string(digits - 1, '0');
    return s;
  }
  mpfr_exp_t e;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits),
                           x.raw(), MPFR_RNDN);
  std::string ds(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (ds[0] == '-') {
    sign = "-";
    ds.erase(0, 1);
  }
  long exp10 = static_cast<long>(e) - 1;  // value = 0.ds * 10^e
  if (std::labs(exp10) > 40) {
    std::string m(1, ds[0]);
    if (ds.size() > 1) m += "." + ds.substr(1);
    return sign + m + "e" + std::to_string(exp10);
  }
  if (e <= 0) {
    return sign + "0." + std::string(static_cast<size_t>(-e), '0') + ds;
  }
  if (static_cast<size_t>(e) >= ds.size()) {
    return sign + ds + std::string(static_cast<size_t>(e) - ds.size(), '0');
  }
  return sign + ds.substr(0, static_cast<size_t>(e)) + "." +
         ds.substr(static_cast<size_t>(e));
}

inline BigReal parse_decimal(const std::string& s, mpfr_prec_t prec) {
  return BigReal(s, prec);
}

// Count of leading significant decimal digits on which x and y agree;
// 0 on sign or magnitude mismatch.
inline int digits_agreement(const BigReal& x, const BigReal& y) {
  mpfr_prec_t p = std::min(x.precision(), y.precision());
  int cap = static_cast<int>(std::floor(p * 0.3010299956639812));
  if (cap < 1) cap = 1;
  if (x.is_zero() && y.is_zero()) return cap;
  if (x.is_zero() || y.is_zero()) return 0;
  if (x.sign() != y.sign()) return 0;
  if (x == y) return cap;
  mpfr_exp_t ex, ey;
  char* rx = mpfr_get_str(nullptr, &ex, 10, static_cast<size_t>(cap), x.raw(),
                          MPFR_RNDZ);
  char* ry = mpfr_get_str(nullptr, &ey, 10, static_cast<size_t>(cap), y.raw(),
                          MPFR_RNDZ);
  std::string sx(rx), sy(ry);
  mpfr_free_str(rx);
  mpfr_free_str(ry);
  if (sx[0] == '-') sx.erase(0, 1);
  if (sy[0] == '-') sy.erase(0, 1);
  int n = 0;
  if (ex == ey) {
    size_t m = std::min(sx.size(), sy.size());
    while (static_cast<size_t>(n) < m && sx[n] == sy[n]) ++n;
  }
  // A digit-string carry (0.99995 vs 1.0000) hides agreement the values
  // still have; take the value-based count as a floor.
  BigReal diff = abs(x - y);
  if (!diff.is_zero()) {
    long agree = x.dec_exponent() + 1 - diff.dec_exponent();
    // conservative by one digit: a 10^-d difference guarantees only d-1
    // shared leading digits
    n = std::max(n, static_cast<int>(agree) - 1);
  }
  return std::max(0, std::min(n, cap));
}

}  // namespace iterasym
