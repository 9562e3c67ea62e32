#pragma once

// Geometric-rate machinery: Dottie's number, the remainder function
// F(x) = (f(x) - rho x) / x^2 with its removable singularity at 0,
// empirical sup-|F| scans, and the convergent infinite product for
// lim u_k / rho^k.

#include <stdexcept>
#include <vector>

#include "iterasym/bigreal.hpp"
#include "iterasym/powerseries.hpp"

namespace iterasym {

struct RateResult {
  BigReal rho;
  BigReal limit;
  long partial_products = 0;
  BigReal tail_bound;
};

struct BoundReport {
  BigReal sup_estimate;
  BigReal argmax_location;
  long samples = 0;
  BigReal interval_end;
};

inline BigReal dottie(mpfr_prec_t prec) {
  if (prec < 64) throw std::invalid_argument("dottie: precision < 64 bits");
  return detail::solve_dottie(prec);
}

namespace detail {

// A local map resolved to branch coordinates with cached fixed point and
// degree-2 Taylor data, so repeated evaluation avoids re-resolving.
class BranchMap {
 public:
  BranchMap(const MapSpec& spec, mpfr_prec_t prec)
      : spec_(spec),
        mu_(spec.fixed_point(prec)),
        taylor_(taylor_at_fixed_point(spec, 2, prec)) {
    spec_.validate();
    rho_ = taylor_[1];
    if (rho_.sign() <= 0 || rho_ >= BigReal(1L, prec))
      throw std::domain_error("BranchMap: need rho = f'(0) in (0,1)");
  }

  const BigReal& rho() const { return rho_; }
  const BigReal& half_second_derivative() const { return taylor_[2]; }

  BigReal eval(const BigReal& s) const {
    mpfr_prec_t p = s.precision();
    BigReal mu = mu_.at_precision(p);
    if (!spec_.double_step) return map_apply(spec_, mu + s) - mu;
    if (spec_.orientation == Orientation::below)
      return mu - map_apply(spec_, map_apply(spec_, mu - s));
    return map_apply(spec_, map_apply(spec_, mu + s)) - mu;
  }

 private:
  MapSpec spec_;
  BigReal mu_;
  PowerSeries taylor_;
  BigReal rho_;
};

}  // namespace detail

// F(x) = (f(x) - rho x)/x^2 for x > 0; at x = 0 the continuous extension
// f''(0)/2 taken from the degree-2 Taylor coefficient.
inline BigReal remainder_function(const MapSpec& spec, const BigReal& x,
                                  mpfr_prec_t prec) {
  if (x.sign() < 0)
    throw std::domain_error("remainder_function: x must be >= 0");
  detail::BranchMap bm(spec, prec);
  if (x.is_zero()) return bm.half_second_derivative();
  BigReal xx = x.at_precision(prec);
  return (bm.eval(xx) - bm.rho() * xx) / (xx * xx);
}

// Empirical sup of |F| on [0, X]: uniform grid plus golden-section
// refinement around the three largest samples. A check, not a proof.
inline BoundReport bound_scan(const MapSpec& spec, const BigReal& X,
                              long samples, mpfr_prec_t prec) {
  if (samples < 1000) throw std::invalid_argument("bound_scan: samples < 1000");
  if (X.sign() <= 0) throw std::invalid_argument("bound_scan: X must be > 0");
  detail::BranchMap bm(spec, prec);
  BigReal rho = bm.rho();
  auto absF = [&](const BigReal& x) {
    if (x.is_zero()) return abs(bm.half_second_derivative());
    return abs((bm.eval(x) - rho * x) / (x * x));
  };
  std::vector<BigReal> vals;
  vals.reserve(static_cast<size_t>(samples) + 1);
  BigReal step = X.at_precision(prec) / samples;
  for (long i = 0; i <= samples; ++i) vals.push_back(absF(step * i));

  // indices of the three largest samples
  std::vector<long> top;
  for (int pass = 0; pass < 3; ++pass) {
    long best = -1;
    for (long i = 0; i <= samples; ++i) {
      bool taken = false;
      for (long t : top) taken = taken || t == i;
      if (taken) continue;
      if (best < 0 || vals[static_cast<size_t>(i)] >
                          vals[static_cast<size_t>(best)])
        best = i;
    }
    top.push_back(best);
  }

  BigReal sup = vals[static_cast<size_t>(top[0])];
  BigReal arg = step * top[0];
  BigReal inv_phi = (sqrt(BigReal(5L, prec)) - BigReal(1L, prec)) / 2L;
  for (long t : top) {
    BigReal lo = step * std::max(0L, t - 1);
    BigReal hi = step * std::min(samples, t + 1);
    BigReal c = hi - inv_phi * (hi - lo);
    BigReal d = lo + inv_phi * (hi - lo);
    BigReal fc = absF(c), fd = absF(d);
    for (int it = 0; it < 120; ++it) {
      if (fc > fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = absF(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = absF(d);
      }
      const BigReal& f = fc > fd ? fc : fd;
      if (f > sup) {
        sup = f;
        arg = fc > fd ? c : d;
      }
    }
  }
  return {sup, arg, samples, X.at_precision(prec)};
}

// lim u_k / rho^k = u0 * prod_{j>=0} (1 + u_j F(u_j) / rho). Factors are
// accumulated as u_{j+1}/(rho u_j), which is the same factor without the
// cancellation in forming F at small u_j. Terminates when the geometric
// tail bound certifies target_digits.
inline RateResult geometric_limit(const MapSpec& spec, const BigReal& u0,
                                  int target_digits, mpfr_prec_t prec) {
  if (u0.sign() <= 0)
    throw std::domain_error("geometric_limit: u0 must be > 0");
  // Extra bits cover the cancellation in f(u) - mu as u shrinks toward the
  // tail-certification scale.
  mpfr_prec_t wp =
      prec + bits_for_digits(target_digits + 8) + 64;
  detail::BranchMap bm(spec, wp);
  BigReal rho = bm.rho();

  // Cheap empirical sup of |F| on [0, u0] for the tail bound.
  BigReal m = abs(bm.half_second_derivative());
  {
    BigReal step = u0.at_precision(wp) / 256L;
    for (long i = 1; i <= 256; ++i) {
      BigReal x = step * i;
      BigReal f = abs((bm.eval(x) - rho * x) / (x * x));
      if (f > m) m = f;
    }
    m = m * BigReal(1.5, wp);
  }

  BigReal u = u0.at_precision(wp);
  BigReal product(1L, wp);
  BigReal target = BigReal(1L, wp);
  for (int i = 0; i < target_digits + 2; ++i) target = target / 10L;
  BigReal one(1L, wp);
  std::vector<BigReal> recent_ratios;
  long count = 0;
  BigReal tail = one;
  while (true) {
    if (count >= 1000000)
      throw std::runtime_error(
          "geometric_limit: tail bound failed to shrink within 10^6 factors");
    BigReal next = bm.eval(u);
    if (next >= u || next.sign() <= 0)
      throw std::runtime_error(
          "geometric_limit: orbit is not contracting at factor " +
          std::to_string(count));
    BigReal ratio = next / u;
    product *= ratio / rho;
    ++count;
    recent_ratios.push_back(ratio);
    if (recent_ratios.size() > 8)
      recent_ratios.erase(recent_ratios.begin());
    BigReal r = rho;
    for (const auto& q : recent_ratios)
      if (q > r) r = q;
    u = next;
    if (r < one) {
      // sum_{j>=n} |u_j F(u_j)|/rho <= (m/rho) u_n / (1 - r)
      tail = m / rho * u / (one - r);
      if (tail < target) break;
    }
  }
  RateResult res{rho.at_precision(prec),
                 (u0.at_precision(wp) * product).at_precision(prec), count,
                 tail.at_precision(prec)};
  return res;
}

}  // namespace iterasym
