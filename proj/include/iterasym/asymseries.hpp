#pragma once

// Algebra of asymptotic series over the basis ln(k)^j * k^(-h/2), with
// coefficients polynomial in a free constant C. Decaying series live on
// positive half-exponents; reciprocals produce growth series whose halves
// index may be <= 0.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "iterasym/bigreal.hpp"
#include "iterasym/powerseries.hpp"

namespace iterasym {

// Polynomial in the free constant C with BigReal coefficients.
// Trailing exact zeros are trimmed; the zero polynomial has an empty list.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<BigReal> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  static CPoly constant(BigReal v) {
    return CPoly(std::vector<BigReal>{std::move(v)});
  }
  // The monomial C itself.
  static CPoly symbol_c(mpfr_prec_t prec) {
    return CPoly({BigReal(prec), BigReal(1L, prec)});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<BigReal>& coeffs() const { return c_; }

  BigReal coeff(int d) const {
    if (d < 0 || d >= static_cast<int>(c_.size()))
      return BigReal(c_.empty() ? mpfr_prec_t(64) : c_[0].precision());
    return c_[static_cast<size_t>(d)];
  }

  BigReal eval(const BigReal& cval) const {
    BigReal r(cval.precision());
    for (int i = degree(); i >= 0; --i) r = r * cval + c_[static_cast<size_t>(i)];
    return r;
  }

  friend CPoly operator+(const CPoly& a, const CPoly& b) {
    std::vector<BigReal> r;
    size_t n = std::max(a.c_.size(), b.c_.size());
    r.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (i < a.c_.size() && i < b.c_.size())
        r.push_back(a.c_[i] + b.c_[i]);
      else if (i < a.c_.size())
        r.push_back(a.c_[i]);
      else
        r.push_back(b.c_[i]);
    }
    return CPoly(std::move(r));
  }

  friend CPoly operator-(const CPoly& a, const CPoly& b) { return a + (-b); }

  friend CPoly operator-(const CPoly& a) {
    std::vector<BigReal> r;
    r.reserve(a.c_.size());
    for (const auto& x : a.c_) r.push_back(-x);
    return CPoly(std::move(r));
  }

  friend CPoly operator*(const CPoly& a, const CPoly& b) {
    if (a.is_zero() || b.is_zero()) return CPoly();
    mpfr_prec_t p = std::min(a.c_[0].precision(), b.c_[0].precision());
    std::vector<BigReal> r(a.c_.size() + b.c_.size() - 1, BigReal(p));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return CPoly(std::move(r));
  }

  friend CPoly operator*(const CPoly& a, const BigReal& s) {
    std::vector<BigReal> r;
    r.reserve(a.c_.size());
    for (const auto& x : a.c_) r.push_back(x * s);
    return CPoly(std::move(r));
  }

  friend CPoly operator/(const CPoly& a, const BigReal& s) {
    std::vector<BigReal> r;
    r.reserve(a.c_.size());
    for (const auto& x : a.c_) r.push_back(x / s);
    return CPoly(std::move(r));
  }

  // max |coefficient|
  BigReal max_abs() const {
    BigReal m(c_.empty() ? mpfr_prec_t(64) : c_[0].precision());
    for (const auto& x : c_)
      if (abs(x) > m) m = abs(x);
    return m;
  }

 private:
  std::vector<BigReal> c_;
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
};

// Term key: halves index h (decay k^(-h/2); h <= 0 means growth) and the
// power of ln(k).
using TermKey = std::pair<int, int>;

inline int logpow_cap(int halves) { return (halves - 1) / 2; }

class AsymSeries {
 public:
  explicit AsymSeries(int cutoff_halves) : cutoff_(cutoff_halves) {}

  int cutoff_halves() const { return cutoff_; }
  const std::map<TermKey, CPoly>& terms() const { return t_; }
  bool empty() const { return t_.empty(); }

  CPoly coeff(int halves, int logpow) const {
    auto it = t_.find({halves, logpow});
    return it == t_.end() ? CPoly() : it->second;
  }

  void set(int halves, int logpow, CPoly c) {
    if (halves > cutoff_) return;
    if (logpow < 0) throw std::invalid_argument("AsymSeries: logpow < 0");
    if (c.is_zero())
      t_.erase({halves, logpow});
    else
      t_[{halves, logpow}] = std::move(c);
  }

  void add(int halves, int logpow, const CPoly& c) {
    if (halves > cutoff_ || c.is_zero()) return;
    set(halves, logpow, coeff(halves, logpow) + c);
  }

  AsymSeries with_cutoff(int cutoff) const {
    AsymSeries r(cutoff);
    for (const auto& [k, c] : t_)
      if (k.first <= cutoff) r.t_[k] = c;
    return r;
  }

  // Smallest halves index present (most slowly decaying / fastest growing).
  int leading_halves() const {
    if (t_.empty()) throw std::domain_error("AsymSeries: empty series");
    return t_.begin()->first.first;
  }

  mpfr_prec_t precision() const {
    for (const auto& [k, c] : t_)
      if (!c.is_zero()) return c.coeffs()[0].precision();
    return 64;
  }

  // Asserts the term inventory cap j <= floor((h-1)/2) on decaying series.
  void check_logpow_caps() const {
    for (const auto& [k, c] : t_) {
      (void)c;
      if (k.first >= 1 && k.second > logpow_cap(k.first))
        throw std::logic_error("AsymSeries: logpow cap violated at h=" +
                               std::to_string(k.first) +
                               " j=" + std::to_string(k.second));
    }
  }

  friend AsymSeries operator+(const AsymSeries& a, const AsymSeries& b) {
    AsymSeries r = a.with_cutoff(std::min(a.cutoff_, b.cutoff_));
    for (const auto& [k, c] : b.t_) r.add(k.first, k.second, c);
    return r;
  }

  friend AsymSeries operator-(const AsymSeries& a, const AsymSeries& b) {
    AsymSeries r = a.with_cutoff(std::min(a.cutoff_, b.cutoff_));
    for (const auto& [k, c] : b.t_) r.add(k.first, k.second, -c);
    return r;
  }

  friend AsymSeries operator*(const AsymSeries& a, const AsymSeries& b) {
    AsymSeries r(std::min(a.cutoff_, b.cutoff_));
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) {
        int h = ka.first + kb.first;
        if (h > r.cutoff_) continue;
        r.add(h, ka.second + kb.second, ca * cb);
      }
    return r;
  }

  friend AsymSeries operator*(const AsymSeries& a, const CPoly& s) {
    AsymSeries r(a.cutoff_);
    for (const auto& [k, c] : a.t_) r.add(k.first, k.second, c * s);
    return r;
  }

  BigReal max_abs_coeff() const {
    BigReal m(precision());
    for (const auto& [k, c] : t_) {
      (void)k;
      BigReal a = c.max_abs();
      if (a > m) m = a;
    }
    return m;
  }

 private:
  int cutoff_;
  std::map<TermKey, CPoly> t_;
};

namespace detail {

// Coefficients of (1+t)^(-h/2), n = 0..nmax.
inline std::vector<BigReal> binom_neg_half(int halves, int nmax,
                                           mpfr_prec_t prec) {
  std::vector<BigReal> b;
  b.reserve(static_cast<size_t>(nmax) + 1);
  b.push_back(BigReal(1L, prec));
  BigReal e = BigReal(-halves, prec) / 2L;
  for (int n = 1; n <= nmax; ++n)
    b.push_back(b.back() * (e - BigReal(n - 1, prec)) / static_cast<long>(n));
  return b;
}

// Powers of L(t) = ln(1+t) = sum (-1)^(m+1) t^m / m, truncated at nmax.
inline std::vector<std::vector<BigReal>> log_shift_powers(int pmax, int nmax,
                                                          mpfr_prec_t prec) {
  std::vector<std::vector<BigReal>> pw;
  pw.emplace_back(1, BigReal(1L, prec));  // L^0 = 1
  std::vector<BigReal> L(static_cast<size_t>(nmax) + 1, BigReal(prec));
  for (int m = 1; m <= nmax; ++m)
    L[static_cast<size_t>(m)] =
        BigReal(m % 2 == 1 ? 1L : -1L, prec) / static_cast<long>(m);
  for (int p = 1; p <= pmax; ++p) {
    std::vector<BigReal> r(static_cast<size_t>(nmax) + 1, BigReal(prec));
    const auto& prev = pw.back();
    for (size_t i = 0; i < prev.size(); ++i) {
      if (prev[i].is_zero()) continue;
      for (size_t m = 1; i + m < r.size(); ++m)
        r[i + m] += prev[i] * L[m];
    }
    pw.push_back(std::move(r));
  }
  return pw;
}

}  // namespace detail

// The series for s evaluated at k+1, re-expanded in the ln(k), k^(-1/2)
// basis at k, truncated at cutoff_halves. Linear in each coefficient.
inline AsymSeries shift_reexpand(const AsymSeries& s, int cutoff_halves) {
  if (!s.empty() && cutoff_halves < s.leading_halves())
    throw std::invalid_argument(
        "shift_reexpand: cutoff below the leading term");
  AsymSeries r(cutoff_halves);
  if (s.empty()) return r;
  mpfr_prec_t prec = s.precision();
  for (const auto& [key, cp] : s.terms()) {
    auto [h, j] = key;
    int nmax = (cutoff_halves - h) / 2;
    if (nmax < 0) continue;
    auto A = detail::binom_neg_half(h, nmax, prec);
    auto Lp = detail::log_shift_powers(j, nmax, prec);
    // (ln k + L)^j = sum_i binom(j,i) ln(k)^i L^(j-i)
    BigReal binom(1L, prec);
    for (int i = j; i >= 0; --i) {
      const auto& lp = Lp[static_cast<size_t>(j - i)];
      for (int m = 0; m <= nmax && m < static_cast<int>(lp.size()); ++m) {
        if (lp[static_cast<size_t>(m)].is_zero()) continue;
        for (int n = 0; m + n <= nmax; ++n) {
          BigReal w = binom * lp[static_cast<size_t>(m)] *
                      A[static_cast<size_t>(n)];
          r.add(h + 2 * (m + n), i, cp * w);
        }
      }
      // binom(j, i-1) = binom(j, i) * i / (j - i + 1)
      if (i > 0)
        binom = binom * static_cast<long>(i) / static_cast<long>(j - i + 1);
    }
  }
  return r;
}

// local_map(s), truncated at cutoff_halves. Requires a zero constant term in
// the map and a leading h=1 term in s.
inline AsymSeries substitute_into_map(const PowerSeries& local_map,
                                      const AsymSeries& s,
                                      int cutoff_halves) {
  if (!local_map[0].is_zero())
    throw std::invalid_argument(
        "substitute_into_map: map constant term must be zero");
  if (s.empty() || s.leading_halves() != 1)
    throw std::invalid_argument(
        "substitute_into_map: series must lead with k^(-1/2)");
  AsymSeries r(cutoff_halves);
  AsymSeries base = s.with_cutoff(cutoff_halves);
  AsymSeries power = base;
  int max_pow = std::min(local_map.trunc_degree(), cutoff_halves);
  for (int n = 1; n <= max_pow; ++n) {
    if (n > 1) power = power * base;
    if (!local_map[n].is_zero())
      r = r + power * CPoly::constant(local_map[n]);
  }
  return r;
}

// Numeric value of the series at index k with C substituted. Terms are
// summed from largest to smallest magnitude with guard bits.
inline BigReal asym_eval(const AsymSeries& s, long k, const BigReal& c_value) {
  if (k < 2) throw std::invalid_argument("asym_eval: k must be >= 2");
  mpfr_prec_t wp = std::max(s.precision(), c_value.precision()) + 64;
  BigReal kk(k, wp);
  BigReal lk = ln(kk);
  BigReal sqrt_k = sqrt(kk);
  BigReal cv = c_value.at_precision(wp);
  std::vector<BigReal> vals;
  for (const auto& [key, cp] : s.terms()) {
    auto [h, j] = key;
    BigReal v = cp.eval(cv);
    if (j > 0) v = v * pow_int(lk, j);
    v = v / pow_int(sqrt_k, h);
    vals.push_back(std::move(v));
  }
  std::sort(vals.begin(), vals.end(), [](const BigReal& a, const BigReal& b) {
    return abs(a) > abs(b);
  });
  BigReal sum(wp);
  for (const auto& v : vals) sum += v;
  return sum.at_precision(std::min(s.precision(), c_value.precision()));
}

// 1/s as a growth series with leading term k^(+1/2). The decaying tail is
// kept through cutoff_halves - 1 half-steps below the leading term.
inline AsymSeries asym_reciprocal(const AsymSeries& s) {
  if (s.empty() || s.leading_halves() != 1)
    throw std::invalid_argument(
        "asym_reciprocal: series must lead with k^(-1/2)");
  CPoly lead = s.coeff(1, 0);
  if (lead.degree() != 0)
    throw std::invalid_argument(
        "asym_reciprocal: leading coefficient must be a nonzero constant");
  BigReal q1 = lead.coeff(0);
  int rel_cut = s.cutoff_halves() - 1;
  // s = q1 k^(-1/2) (1 + T), T with halves >= 1 relative to the lead
  AsymSeries T(rel_cut);
  for (const auto& [key, cp] : s.terms()) {
    auto [h, j] = key;
    if (h == 1 && j == 0) continue;
    T.add(h - 1, j, cp / q1);
  }
  // (1 + T)^(-1) = sum (-T)^n
  AsymSeries inv(rel_cut);
  inv.add(0, 0, CPoly::constant(BigReal(1L, q1.precision())));
  AsymSeries pw(rel_cut);
  pw.add(0, 0, CPoly::constant(BigReal(1L, q1.precision())));
  for (int n = 1; n <= rel_cut && !T.empty(); ++n) {
    pw = pw * T;
    if (pw.empty()) break;
    inv = inv + (n % 2 == 1 ? AsymSeries(rel_cut) - pw : pw);
  }
  AsymSeries r(rel_cut - 1);
  for (const auto& [key, cp] : inv.terms())
    r.add(key.first - 1, key.second, cp / q1);
  return r;
}

}  // namespace iterasym
