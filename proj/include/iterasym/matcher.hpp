#pragma once

// Matching-coefficient solver for gap-2 local maps x - a x^3 + O(x^4):
// equates the shifted series with the mapped series order by order and
// solves for the expansion coefficients as polynomials in the free
// constant C. The matching system is triangular when processed by
// increasing halves index and, within one index, decreasing log power;
// each equation introduces exactly one new unknown. The lone exception is
// h=3, j=0, where the linearized operator is singular: that slot is the
// free constant itself.

#include <map>
#include <stdexcept>
#include <string>

#include "iterasym/asymseries.hpp"
#include "iterasym/bigreal.hpp"
#include "iterasym/powerseries.hpp"

namespace iterasym {

enum class Finality { final_value, transient };

struct ExpansionResult {
  AsymSeries series;
  std::map<TermKey, Finality> finality;
  BigReal residual_max;
  int map_degree = 0;
};

// Max over all CPoly coefficients (per C-degree) of the matching defect
// shift(series) - map(series), truncated at the series cutoff.
inline BigReal residual_report(const PowerSeries& local_map,
                               const AsymSeries& series) {
  if (series.empty()) return BigReal(local_map.precision());
  if (series.leading_halves() != 1)
    throw std::invalid_argument("residual_report: series must lead with h=1");
  int cutoff = series.cutoff_halves();
  AsymSeries defect = shift_reexpand(series, cutoff) -
                      substitute_into_map(local_map, series, cutoff);
  return defect.max_abs_coeff();
}

namespace detail {

// Defect coefficient at (halves, logpow) for the current partial series.
inline CPoly defect_coeff(const PowerSeries& map, const AsymSeries& s,
                          int work_cutoff, int halves, int logpow) {
  AsymSeries d = shift_reexpand(s, work_cutoff) -
                 substitute_into_map(map, s, work_cutoff);
  return d.coeff(halves, logpow);
}

}  // namespace detail

inline ExpansionResult solve_expansion(const PowerSeries& local_map,
                                       int cutoff_halves, mpfr_prec_t prec) {
  if (cutoff_halves < 3)
    throw std::invalid_argument("solve_expansion: cutoff_halves < 3");
  mpfr_prec_t wp = prec + 64;
  PowerSeries map = [&] {
    std::vector<BigReal> c;
    for (const auto& x : local_map.coeffs()) c.push_back(x.at_precision(wp));
    return PowerSeries(std::move(c));
  }();
  BigReal tol = BigReal::pow2(-(static_cast<long>(prec) - 16), wp);
  BigReal one(1L, wp);
  if (!map[0].is_zero() || abs(map[1] - one) > tol)
    throw std::invalid_argument(
        "solve_expansion: map must be x + higher-order terms");
  if (map.trunc_degree() < 3)
    throw std::invalid_argument("solve_expansion: map degree < 3");
  if (abs(map[2]) > tol)
    throw std::invalid_argument(
        "solve_expansion: nonzero x^2 coefficient (gap is not 2)");
  BigReal a = -map[3];
  if (a.sign() <= 0)
    throw std::invalid_argument("solve_expansion: need x^3 coefficient -a, a > 0");

  int work_cutoff = cutoff_halves + 2;
  AsymSeries s(work_cutoff);
  s.set(1, 0, CPoly::constant(one / sqrt(a * 2L)));

  auto solve_one = [&](int h, int j, int eq_h, int eq_j) {
    CPoly rhs = detail::defect_coeff(map, s, eq_h, eq_h, eq_j);
    s.set(h, j, CPoly::constant(one));
    CPoly shifted = detail::defect_coeff(map, s, eq_h, eq_h, eq_j);
    CPoly slope_poly = shifted - rhs;
    if (slope_poly.degree() != 0)
      throw std::logic_error("solve_expansion: nonlinear matching step");
    BigReal slope = slope_poly.coeff(0);
    if (abs(slope) < BigReal::pow2(-(static_cast<long>(prec) / 2), wp))
      throw std::runtime_error(
          "solve_expansion: singular matching step at h=" + std::to_string(h) +
          " j=" + std::to_string(j));
    s.set(h, j, -rhs / slope);
  };

  for (int h = 2; h <= cutoff_halves; ++h) {
    if (h == 3) {
      s.set(3, 0, CPoly::symbol_c(wp));
      // The h=5 constant-term equation determines the h=3 log coefficient.
      solve_one(3, 1, 5, 0);
      continue;
    }
    for (int j = logpow_cap(h); j >= 0; --j) solve_one(h, j, h + 2, j);
  }

  ExpansionResult res{s.with_cutoff(cutoff_halves), {}, BigReal(prec),
                      map.trunc_degree()};
  res.series.check_logpow_caps();
  res.residual_max = residual_report(map, res.series).at_precision(prec);
  if (res.residual_max >= BigReal::pow2(-(static_cast<long>(prec) - 48), prec))
    throw std::runtime_error(
        "solve_expansion: residual exceeds tolerance after solve");
  for (int h = 1; h <= cutoff_halves; ++h)
    for (int j = 0; j <= logpow_cap(h); ++j)
      res.finality[{h, j}] = res.map_degree >= h + 2 ? Finality::final_value
                                                     : Finality::transient;
  return res;
}

}  // namespace iterasym
