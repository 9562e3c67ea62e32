#pragma once

// Truncated formal power series: arithmetic, composition, reversion,
// elementary transcendental series, and local Taylor models of recurrence
// maps at their fixed points (single-step, double-step, both branches).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iterasym/bigreal.hpp"

namespace iterasym {

class PowerSeries {
 public:
  PowerSeries(std::vector<BigReal> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
      throw std::invalid_argument("PowerSeries: empty coefficient list");
    mpfr_prec_t p = coeffs_[0].precision();
    for (const auto& c : coeffs_) p = std::min(p, c.precision());
    for (auto& c : coeffs_) c = c.at_precision(p);
  }

  static PowerSeries zero(int degree, mpfr_prec_t prec) {
    return PowerSeries(
        std::vector<BigReal>(static_cast<size_t>(degree) + 1, BigReal(prec)));
  }

  // The identity series x, truncated at `degree`.
  static PowerSeries identity(int degree, mpfr_prec_t prec) {
    PowerSeries s = zero(degree, prec);
    s.coeffs_[1] = BigReal(1L, prec);
    return s;
  }

  int trunc_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  mpfr_prec_t precision() const { return coeffs_[0].precision(); }
  const BigReal& operator[](int n) const {
    return coeffs_.at(static_cast<size_t>(n));
  }
  BigReal& at(int n) { return coeffs_.at(static_cast<size_t>(n)); }
  const std::vector<BigReal>& coeffs() const { return coeffs_; }

  PowerSeries truncated(int degree) const {
    if (degree >= trunc_degree()) return *this;
    return PowerSeries(std::vector<BigReal>(
        coeffs_.begin(), coeffs_.begin() + degree + 1));
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.trunc_degree(), b.trunc_degree());
    std::vector<BigReal> c;
    c.reserve(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c.push_back(a[i] + b[i]);
    return PowerSeries(std::move(c));
  }

  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.trunc_degree(), b.trunc_degree());
    std::vector<BigReal> c;
    c.reserve(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c.push_back(a[i] - b[i]);
    return PowerSeries(std::move(c));
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.trunc_degree(), b.trunc_degree());
    mpfr_prec_t p = std::min(a.precision(), b.precision());
    std::vector<BigReal> c(static_cast<size_t>(n) + 1, BigReal(p));
    for (int i = 0; i <= std::min(n, a.trunc_degree()); ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; i + j <= n && j <= b.trunc_degree(); ++j)
        c[static_cast<size_t>(i + j)] += a[i] * b[j];
    }
    return PowerSeries(std::move(c));
  }

  friend PowerSeries operator*(const PowerSeries& a, const BigReal& s) {
    std::vector<BigReal> c;
    c.reserve(a.coeffs_.size());
    for (const auto& x : a.coeffs_) c.push_back(x * s);
    return PowerSeries(std::move(c));
  }

  friend PowerSeries operator-(const PowerSeries& a) {
    return a * BigReal(-1L, a.precision());
  }

  // outer(inner); inner must have zero constant term.
  PowerSeries compose(const PowerSeries& inner) const {
    if (!inner[0].is_zero())
      throw std::invalid_argument(
          "PowerSeries::compose: inner constant term must be zero");
    int n = std::min(trunc_degree(), inner.trunc_degree());
    mpfr_prec_t p = std::min(precision(), inner.precision());
    PowerSeries in = inner.truncated(n);
    PowerSeries r = zero(n, p);
    for (int i = std::min(n, trunc_degree()); i >= 0; --i) {
      r = r * in;
      r.at(0) += coeffs_[static_cast<size_t>(i)];
    }
    return r;
  }

  // 1 / this; requires a nonzero constant term.
  PowerSeries reciprocal() const {
    if (coeffs_[0].is_zero())
      throw std::invalid_argument(
          "PowerSeries::reciprocal: zero constant term");
    int n = trunc_degree();
    mpfr_prec_t p = precision();
    std::vector<BigReal> r(static_cast<size_t>(n) + 1, BigReal(p));
    r[0] = BigReal(1L, p) / coeffs_[0];
    for (int k = 1; k <= n; ++k) {
      BigReal acc(p);
      for (int i = 1; i <= k; ++i)
        acc += coeffs_[static_cast<size_t>(i)] * r[static_cast<size_t>(k - i)];
      r[static_cast<size_t>(k)] = -acc / coeffs_[0];
    }
    return PowerSeries(std::move(r));
  }

  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
    return a * b.reciprocal();
  }

  // Horner evaluation at a scalar.
  BigReal eval(const BigReal& x) const {
    mpfr_prec_t p = std::min(precision(), x.precision());
    BigReal r(p);
    for (int i = trunc_degree(); i >= 0; --i)
      r = r * x + coeffs_[static_cast<size_t>(i)];
    return r;
  }

 private:
  std::vector<BigReal> coeffs_;
};

// Compositional inverse: t with s(t(x)) = x through the truncation degree.
// Requires zero constant term and nonzero linear coefficient.
inline PowerSeries ps_reversion(const PowerSeries& s) {
  if (!s[0].is_zero())
    throw std::invalid_argument("ps_reversion: nonzero constant term");
  if (s[1].is_zero())
    throw std::invalid_argument("ps_reversion: zero linear coefficient");
  int n = s.trunc_degree();
  mpfr_prec_t p = s.precision();
  PowerSeries t = PowerSeries::zero(n, p);
  t.at(1) = BigReal(1L, p) / s[1];
  // Coefficient of x^m in s(t) depends linearly on t_m with slope s_1.
  for (int m = 2; m <= n; ++m) {
    BigReal c = s.truncated(m).compose(t.truncated(m))[m];
    t.at(m) = -c / s[1];
  }
  return t;
}

// x -> -s(-x): flips the sign of every even-degree coefficient.
inline PowerSeries kindred_transform(const PowerSeries& s) {
  if (!s[0].is_zero())
    throw std::invalid_argument("kindred_transform: nonzero constant term");
  std::vector<BigReal> c;
  c.reserve(static_cast<size_t>(s.trunc_degree()) + 1);
  for (int i = 0; i <= s.trunc_degree(); ++i)
    c.push_back(i % 2 == 0 ? -s[i] : s[i]);
  return PowerSeries(std::move(c));
}

enum class ElementaryKind { log1p, cos, exp };

// Taylor series of the elementary function applied to `inner`, through the
// inner truncation degree. log1p requires a zero inner constant term; cos and
// exp evaluate their constant part through the scalar library.
inline PowerSeries ps_elementary(ElementaryKind kind,
                                 const PowerSeries& inner) {
  int n = inner.trunc_degree();
  mpfr_prec_t p = inner.precision();
  BigReal one(1L, p);
  if (kind == ElementaryKind::log1p) {
    if (!inner[0].is_zero())
      throw std::invalid_argument("ps_elementary: log1p needs zero constant");
    PowerSeries merc = PowerSeries::zero(n, p);
    for (int m = 1; m <= n; ++m)
      merc.at(m) = BigReal(m % 2 == 1 ? 1L : -1L, p) / static_cast<long>(m);
    return merc.compose(inner);
  }
  BigReal c = inner[0];
  PowerSeries z = inner;
  z.at(0) = BigReal(p);
  if (kind == ElementaryKind::exp) {
    PowerSeries e = PowerSeries::zero(n, p);
    BigReal f = one;
    for (int m = 0; m <= n; ++m) {
      e.at(m) = f;
      f = f / static_cast<long>(m + 1);
    }
    return e.compose(z) * exp(c);
  }
  // cos(c + z) = cos(c) cos(z) - sin(c) sin(z)
  PowerSeries cz = PowerSeries::zero(n, p);
  PowerSeries sz = PowerSeries::zero(n, p);
  BigReal f = one;
  for (int m = 0; m <= n; ++m) {
    BigReal term = f * ((m / 2) % 2 == 0 ? 1L : -1L);
    if (m % 2 == 0)
      cz.at(m) = term;
    else
      sz.at(m) = term;
    f = f / static_cast<long>(m + 1);
  }
  return cz.compose(z) * cos(c) - sz.compose(z) * sin(c);
}

namespace detail {

// Unique real root of cos(x) = x, by safeguarded Newton on [0.7, 0.75].
inline BigReal solve_dottie(mpfr_prec_t prec) {
  mpfr_prec_t wp = prec + 32;
  BigReal lo(0.7, wp), hi(0.75, wp), x(0.739, wp);
  BigReal tol = BigReal::pow2(-(static_cast<long>(prec) - 8), wp);
  for (int it = 0; it < 200; ++it) {
    BigReal r = cos(x) - x;
    if (abs(r) < tol) break;
    if (r.sign() > 0)
      lo = x;  // cos x - x decreasing: root above x
    else
      hi = x;
    BigReal step = r / (sin(x) + BigReal(1L, wp));
    BigReal nx = x + step;
    if (nx <= lo || nx >= hi) nx = (lo + hi) / 2L;
    x = nx;
  }
  return x.at_precision(prec);
}

}  // namespace detail

enum class MapKind { polynomial, logistic, cos_once, popa_g, popa_g_ell };
enum class Orientation { none, above, below };

// Description of a one-dimensional recurrence map plus fixed-point and
// branch metadata. Polynomial maps are given about 0 and are their own
// branch coordinates.
struct MapSpec {
  MapKind kind = MapKind::polynomial;
  std::vector<BigReal> poly;  // polynomial kind only, ascending degree
  std::optional<BigReal> lambda;
  int ell = 2;  // popa_g_ell only
  bool double_step = false;
  Orientation orientation = Orientation::none;

  static MapSpec polynomial_map(std::vector<BigReal> coeffs) {
    MapSpec m;
    m.kind = MapKind::polynomial;
    m.poly = std::move(coeffs);
    return m;
  }
  static MapSpec logistic(BigReal lam, bool dbl = false,
                          Orientation o = Orientation::none) {
    MapSpec m;
    m.kind = MapKind::logistic;
    m.lambda = std::move(lam);
    m.double_step = dbl;
    m.orientation = o;
    return m;
  }
  static MapSpec cosine(bool dbl = false, Orientation o = Orientation::none) {
    MapSpec m;
    m.kind = MapKind::cos_once;
    m.double_step = dbl;
    m.orientation = o;
    return m;
  }
  static MapSpec popa() {
    MapSpec m;
    m.kind = MapKind::popa_g;
    return m;
  }
  static MapSpec popa_ell(int ell) {
    if (ell < 2) throw std::invalid_argument("popa_ell: ell must be >= 2");
    MapSpec m;
    m.kind = MapKind::popa_g_ell;
    m.ell = ell;
    return m;
  }

  void validate() const {
    if (orientation != Orientation::none && !double_step)
      throw std::invalid_argument(
          "MapSpec: orientation requires double_step");
    if (kind == MapKind::logistic && !lambda)
      throw std::invalid_argument("MapSpec: logistic needs lambda");
    if (kind == MapKind::polynomial && poly.size() < 2)
      throw std::invalid_argument("MapSpec: polynomial needs coefficients");
  }

  BigReal fixed_point(mpfr_prec_t prec) const {
    switch (kind) {
      case MapKind::logistic:
        return (lambda->at_precision(prec) - BigReal(1L, prec)) /
               lambda->at_precision(prec);
      case MapKind::cos_once:
        return detail::solve_dottie(prec);
      default:
        return BigReal(prec);  // 0
    }
  }

  std::string describe() const {
    std::string s;
    switch (kind) {
      case MapKind::polynomial: {
        s = "poly:";
        for (size_t i = 0; i < poly.size(); ++i)
          s += (i ? "," : "") + format_decimal(poly[i], 17);
        break;
      }
      case MapKind::logistic:
        s = "logistic:" + format_decimal(*lambda, 17);
        break;
      case MapKind::cos_once:
        s = "cos";
        break;
      case MapKind::popa_g:
        s = "popa";
        break;
      case MapKind::popa_g_ell:
        s = "popa_ell:" + std::to_string(ell);
        break;
    }
    if (double_step) s += ":double";
    if (orientation == Orientation::above) s += ":above";
    if (orientation == Orientation::below) s += ":below";
    return s;
  }
};

// One application of the map in its original coordinates.
inline BigReal map_apply(const MapSpec& m, const BigReal& x) {
  mpfr_prec_t p = x.precision();
  switch (m.kind) {
    case MapKind::polynomial: {
      BigReal r(p);
      for (int i = static_cast<int>(m.poly.size()) - 1; i >= 0; --i)
        r = r * x + m.poly[static_cast<size_t>(i)].at_precision(p);
      return r;
    }
    case MapKind::logistic:
      return m.lambda->at_precision(p) * x * (BigReal(1L, p) - x);
    case MapKind::cos_once:
      return cos(x);
    case MapKind::popa_g:
      return x / (BigReal(1L, p) + x * log1p(x));
    case MapKind::popa_g_ell:
      return x / (BigReal(1L, p) + pow_int(x, m.ell) * log1p(x));
  }
  throw std::logic_error("map_apply: unreachable");
}

// One application of the configured local map in branch coordinates s >= 0.
// above: f(f(mu+s)) - mu; below: mu - f(f(mu-s)); single step: f(mu+s) - mu.
inline BigReal branch_apply(const MapSpec& m, const BigReal& s) {
  m.validate();
  mpfr_prec_t p = s.precision();
  BigReal mu = m.fixed_point(p);
  if (!m.double_step) return map_apply(m, mu + s) - mu;
  if (m.orientation == Orientation::below)
    return mu - map_apply(m, map_apply(m, mu - s));
  return map_apply(m, map_apply(m, mu + s)) - mu;
}

// Single-step local Taylor model f(mu+s) - mu in s, through `degree`.
inline PowerSeries single_step_series(const MapSpec& m, int degree,
                                      mpfr_prec_t prec) {
  BigReal one(1L, prec);
  switch (m.kind) {
    case MapKind::polynomial: {
      PowerSeries s = PowerSeries::zero(degree, prec);
      for (int i = 0;
           i <= degree && i < static_cast<int>(m.poly.size()); ++i)
        s.at(i) = m.poly[static_cast<size_t>(i)].at_precision(prec);
      if (!s[0].is_zero())
        throw std::invalid_argument(
            "single_step_series: polynomial map must fix 0");
      return s;
    }
    case MapKind::logistic: {
      // l(mu+s) - mu = (2-lambda) s - lambda s^2 exactly
      BigReal lam = m.lambda->at_precision(prec);
      PowerSeries s = PowerSeries::zero(degree, prec);
      s.at(1) = BigReal(2L, prec) - lam;
      if (degree >= 2) s.at(2) = -lam;
      return s;
    }
    case MapKind::cos_once: {
      BigReal theta = detail::solve_dottie(prec);
      PowerSeries inner = PowerSeries::identity(degree, prec);
      inner.at(0) = theta;
      PowerSeries s = ps_elementary(ElementaryKind::cos, inner);
      s.at(0) -= theta;
      return s;
    }
    case MapKind::popa_g:
    case MapKind::popa_g_ell: {
      int gap = (m.kind == MapKind::popa_g) ? 1 : m.ell;
      PowerSeries y = PowerSeries::identity(degree, prec);
      PowerSeries ygap = y;
      for (int i = 1; i < gap; ++i) ygap = ygap * y;
      PowerSeries denom =
          ygap * ps_elementary(ElementaryKind::log1p, y);
      denom.at(0) += one;
      return y / denom;
    }
  }
  throw std::logic_error("single_step_series: unreachable");
}

// Local Taylor model of the map in the branch coordinate, with the constant
// term clamped to exact zero (residue above 2^-(prec-16) is an error: it
// means the fixed point is wrong, not round-off).
inline PowerSeries taylor_at_fixed_point(const MapSpec& m, int degree,
                                         mpfr_prec_t prec) {
  m.validate();
  if (degree < 1)
    throw std::invalid_argument("taylor_at_fixed_point: degree < 1");
  mpfr_prec_t wp = prec + 32;
  PowerSeries f = single_step_series(m, degree, wp);
  BigReal clamp_tol = BigReal::pow2(-(static_cast<long>(prec) - 16), wp);
  if (abs(f[0]) > clamp_tol)
    throw std::runtime_error(
        "taylor_at_fixed_point: fixed-point residue exceeds clamp threshold");
  f.at(0) = BigReal(wp);
  PowerSeries local = f;
  if (m.double_step) {
    local = f.compose(f);
    if (m.orientation == Orientation::below)
      local = kindred_transform(local);
  }
  std::vector<BigReal> out;
  out.reserve(static_cast<size_t>(degree) + 1);
  for (int i = 0; i <= degree; ++i) out.push_back(local[i].at_precision(prec));
  return PowerSeries(std::move(out));
}

}  // namespace iterasym
