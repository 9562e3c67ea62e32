#pragma once

// Extraction of the free constant C from an expansion plus a far orbit
// sample: the scalar equation asym_eval(series, K, C) = value is a low-degree
// polynomial in C, solved by safeguarded Newton from a leading-defect guess.
// A stability scan across checkpoints separates converging estimates from
// the drift symptom of an inadequate series.

#include <stdexcept>
#include <vector>

#include "iterasym/asymseries.hpp"
#include "iterasym/bigreal.hpp"
#include "iterasym/orbit.hpp"

namespace iterasym {

struct ConstantEstimate {
  BigReal c;
  long k = 0;
  BigReal poly_residual;
  int series_cutoff_halves = 0;
};

enum class Verdict { stable, drifting };

struct DigitsAgreed {
  long k_lo = 0;
  long k_hi = 0;
  int digits = 0;
};

struct StabilityReport {
  std::vector<ConstantEstimate> estimates;
  std::vector<DigitsAgreed> agreed_digits;
  Verdict verdict = Verdict::drifting;
  std::vector<std::string> failures;
};

namespace detail {

// Collect the series at index k into a polynomial in C.
inline CPoly collapse_at_index(const AsymSeries& s, long k, mpfr_prec_t wp) {
  BigReal kk(k, wp);
  BigReal lk = ln(kk), sqrt_k = sqrt(kk);
  int deg = 0;
  for (const auto& [key, cp] : s.terms()) {
    (void)key;
    deg = std::max(deg, cp.degree());
  }
  std::vector<BigReal> poly(static_cast<size_t>(deg) + 1, BigReal(wp));
  for (const auto& [key, cp] : s.terms()) {
    auto [h, j] = key;
    BigReal w = BigReal(1L, wp);
    if (j > 0) w = pow_int(lk, j);
    w = w / pow_int(sqrt_k, h);
    for (int d = 0; d <= cp.degree(); ++d)
      poly[static_cast<size_t>(d)] += cp.coeff(d) * w;
  }
  return CPoly(std::move(poly));
}

}  // namespace detail

inline ConstantEstimate extract_constant(const AsymSeries& series, long k,
                                         const BigReal& value,
                                         mpfr_prec_t prec) {
  if (k < 100) throw std::invalid_argument("extract_constant: K must be >= 100");
  if (series.coeff(3, 0).degree() < 1)
    throw std::invalid_argument(
        "extract_constant: series lacks the free-constant slot at (3,0)");
  mpfr_prec_t wp = prec + 64;
  CPoly poly = detail::collapse_at_index(series, k, wp);
  if (poly.degree() < 1)
    throw std::invalid_argument("extract_constant: series lacks C entirely");
  BigReal kk(k, wp);
  BigReal val = value.at_precision(wp);

  // Initial guess from the leading defect: C0 = (value - series|_{C=0}) k^{3/2}
  BigReal at_zero = poly.coeff(0);
  BigReal c0 = (val - at_zero) * kk * sqrt(kk);

  // Newton on poly(C) - value, safeguarded within |C - C0| < 1.
  std::vector<BigReal> dcoef;
  for (int d = 1; d <= poly.degree(); ++d)
    dcoef.push_back(poly.coeff(d) * static_cast<long>(d));
  CPoly dpoly(std::move(dcoef));
  BigReal c = c0;
  BigReal one(1L, wp);
  BigReal tol = BigReal::pow2(-(static_cast<long>(prec) - 40), wp);
  BigReal r = poly.eval(c) - val;
  for (int it = 0; it < 200 && abs(r) > tol * (abs(val) + one); ++it) {
    BigReal d = dpoly.eval(c);
    if (d.is_zero())
      throw std::runtime_error("extract_constant: vanishing derivative");
    c = c - r / d;
    if (abs(c - c0) >= one)
      throw std::runtime_error(
          "extract_constant: no real root near the initial guess "
          "(series/orbit mismatch)");
    r = poly.eval(c) - val;
  }
  ConstantEstimate est{c.at_precision(prec), k,
                       abs(r).at_precision(prec), series.cutoff_halves()};
  return est;
}

inline StabilityReport stability_scan(const AsymSeries& series,
                                      const OrbitResult& orbit) {
  if (orbit.samples.size() < 3)
    throw std::invalid_argument("stability_scan: need >= 3 checkpoints");
  if (orbit.samples.back().k < 100 * orbit.samples.front().k)
    throw std::invalid_argument(
        "stability_scan: checkpoints must span >= 2 decades");
  StabilityReport rep;
  for (const auto& smp : orbit.samples) {
    try {
      rep.estimates.push_back(extract_constant(series, smp.k, smp.value,
                                               orbit.precision_bits));
    } catch (const std::exception& e) {
      rep.failures.push_back("K=" + std::to_string(smp.k) + ": " + e.what());
    }
  }
  if (rep.estimates.empty())
    throw std::runtime_error("stability_scan: extraction failed at every checkpoint");
  bool nondecreasing = true;
  int last = -1;
  for (size_t i = 1; i < rep.estimates.size(); ++i) {
    int d = digits_agreement(rep.estimates[i - 1].c, rep.estimates[i].c);
    rep.agreed_digits.push_back(
        {rep.estimates[i - 1].k, rep.estimates[i].k, d});
    if (last >= 0 && d < last) nondecreasing = false;
    last = d;
  }
  bool enough = !rep.agreed_digits.empty() &&
                rep.agreed_digits.back().digits >= 6;
  rep.verdict = (nondecreasing && enough && rep.failures.empty())
                    ? Verdict::stable
                    : Verdict::drifting;
  return rep;
}

}  // namespace iterasym
