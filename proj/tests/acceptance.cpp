// Acceptance gate: one line per criterion, exit 0 only if all pass.
// --fast shortens the long orbits (K = 10^6-scale) and relaxes the
// orbit-extracted digit targets from 12 to 9.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "iterasym/extractor.hpp"
#include "iterasym/matcher.hpp"
#include "iterasym/orbit.hpp"
#include "iterasym/powerseries.hpp"
#include "iterasym/reference_values.hpp"
#include "iterasym/thron.hpp"

#include "expected_series.hpp"

using namespace iterasym;

namespace {

bool g_fast = false;
constexpr mpfr_prec_t kPrec = 256;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int run_criterion(int id, const char* name, double budget_seconds,
                  const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ");
    out.detail += "over budget " + std::to_string(budget_seconds) + "s";
  }
  std::printf("criterion %2d: %s  %7.2fs  %s%s%s\n", id,
              out.pass ? "PASS" : "FAIL", secs, name,
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  return out.pass ? 0 : 1;
}

PowerSeries u_map(mpfr_prec_t p = kPrec) {
  return PowerSeries(std::vector<BigReal>{BigReal(p), BigReal(1L, p),
                                          BigReal(p), BigReal(-18L, p),
                                          BigReal(-27L, p)});
}

PowerSeries gap2_map(const BigReal& a, const BigReal& b, const BigReal& d,
                     const BigReal& e) {
  mpfr_prec_t p = a.precision();
  return PowerSeries(std::vector<BigReal>{BigReal(p), BigReal(1L, p),
                                          BigReal(p), -a, b, d, e});
}

bool agree(const BigReal& x, const BigReal& y, int digits) {
  if (x.is_zero() && y.is_zero()) return true;
  if (x.is_zero() || y.is_zero())
    return abs(x - y) < BigReal(1e-30, kPrec);
  return digits_agreement(x, y) >= digits;
}

bool cpoly_agree(const CPoly& got, const CPoly& want, int digits) {
  int dmax = std::max(got.degree(), want.degree());
  for (int d = 0; d <= dmax; ++d)
    if (!agree(got.coeff(d), want.coeff(d), digits)) return false;
  return true;
}

// Cached heavy inputs shared across criteria.
struct Shared {
  AsymSeries u_series = AsymSeries(8);
  AsymSeries popa_series = AsymSeries(8);
  OrbitResult u_orbit;
  OrbitResult popa_orbit;
  BigReal c_odd{kPrec};
  BigReal c_popa{kPrec};
  long K = 0;
};

Shared g;

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) g_fast = true;
  g.K = g_fast ? (1L << 20) : 10000000L;
  const int orbit_digits = g_fast ? 9 : 12;
  int failures = 0;

  failures += run_criterion(1, "expansion tables of the odd/even branches",
                            10.0, [](Outcome& out) {
    ExpansionResult u = solve_expansion(u_map(), 8, kPrec);
    ExpansionResult v =
        solve_expansion(kindred_transform(u_map()), 8, kPrec);
    g.u_series = u.series;
    for (const auto& t : testdata::logistic3_u_terms()) {
      CPoly wu = testdata::term_to_cpoly(t, 1, kPrec);
      CPoly wv = testdata::term_to_cpoly(t, t.halves % 2 == 0 ? -1 : 1,
                                         kPrec);
      out.require(cpoly_agree(u.series.coeff(t.halves, t.logpow), wu, 30),
                  "u (" + std::to_string(t.halves) + "," +
                      std::to_string(t.logpow) + ")");
      out.require(cpoly_agree(v.series.coeff(t.halves, t.logpow), wv, 30),
                  "v (" + std::to_string(t.halves) + "," +
                      std::to_string(t.logpow) + ")");
    }
  });

  failures += run_criterion(2, "closed forms at random coefficient sets",
                            30.0, [](Outcome& out) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> any(-3.0, 3.0);
    std::uniform_real_distribution<double> pos(0.25, 3.0);
    BigReal sqrt2 = sqrt(BigReal(2L, kPrec));
    for (int trial = 0; trial < 5; ++trial) {
      BigReal a(pos(rng), kPrec), b(any(rng), kPrec), d(any(rng), kPrec),
          e(any(rng), kPrec);
      ExpansionResult r = solve_expansion(gap2_map(a, b, d, e), 4, kPrec);
      BigReal a3 = pow_int(a, 3), a5 = pow_int(a, 5);
      BigReal a72 = a3 * sqrt(a);
      BigReal q10 = BigReal(1L, kPrec) / sqrt(a * 2L);
      BigReal q20 = b / (a * a * 2L);
      BigReal q31 = (a3 * (-3L) + b * b * 2L + a * d * 2L) / (sqrt2 * a72 * 8L);
      BigReal q41 = (a3 * b * (-3L) + pow_int(b, 3) * 2L + a * b * d * 2L) /
                    (a5 * 8L);
      BigReal q40c = (a3 * b - pow_int(b, 3) * 3L - a * b * d * 3L -
                      a * a * e) /
                     (a5 * 4L);
      BigReal q40s = sqrt2 * b / (a * sqrt(a));
      std::string tag = " trial " + std::to_string(trial);
      out.require(cpoly_agree(r.series.coeff(1, 0), CPoly::constant(q10), 25),
                  "(1,0)" + tag);
      out.require(cpoly_agree(r.series.coeff(2, 0), CPoly::constant(q20), 25),
                  "(2,0)" + tag);
      out.require(cpoly_agree(r.series.coeff(3, 1), CPoly::constant(q31), 25),
                  "(3,1)" + tag);
      out.require(cpoly_agree(r.series.coeff(4, 1), CPoly::constant(q41), 25),
                  "(4,1)" + tag);
      out.require(cpoly_agree(r.series.coeff(4, 0), CPoly({q40c, q40s}), 25),
                  "(4,0)" + tag);
    }
  });

  failures += run_criterion(3, "kindred symmetry of solved expansions", 0,
                            [](Outcome& out) {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> any(-3.0, 3.0);
    std::uniform_real_distribution<double> pos(0.25, 3.0);
    std::vector<PowerSeries> maps;
    maps.push_back(u_map());
    for (int trial = 0; trial < 3; ++trial)
      maps.push_back(gap2_map(BigReal(pos(rng), kPrec),
                              BigReal(any(rng), kPrec),
                              BigReal(any(rng), kPrec),
                              BigReal(any(rng), kPrec)));
    for (size_t m = 0; m < maps.size(); ++m) {
      ExpansionResult q = solve_expansion(maps[m], 8, kPrec);
      ExpansionResult qk =
          solve_expansion(kindred_transform(maps[m]), 8, kPrec);
      for (const auto& [key, cp] : q.series.terms()) {
        long sign = key.first % 2 == 0 ? -1 : 1;
        out.require(
            cpoly_agree(qk.series.coeff(key.first, key.second),
                        cp * BigReal(sign, kPrec), 25),
            "map " + std::to_string(m) + " (" + std::to_string(key.first) +
                "," + std::to_string(key.second) + ")");
      }
    }
  });

  failures += run_criterion(4, "odd-branch constant from a far orbit", 60.0,
                            [orbit_digits](Outcome& out) {
    OrbitRequest req;
    req.map = MapSpec::polynomial_map(u_map().coeffs());
    req.x0 = BigReal::ratio(1, 12, kPrec);
    req.k_max = g.K;
    req.checkpoints = {1L << 12, 1L << 14, 1L << 16, 1L << 18, 1L << 20};
    if (g.K > (1L << 20)) req.checkpoints.push_back(g.K);
    req.precision_bits = kPrec;
    g.u_orbit = iterate_map(req);
    long K = g.u_orbit.samples.back().k;
    g.c_odd = extract_constant(g.u_series, K,
                               g.u_orbit.samples.back().value, kPrec).c;
    BigReal ref = parse_decimal(refs::logistic3_c_odd, kPrec);
    int d = digits_agreement(g.c_odd, ref);
    out.require(d >= orbit_digits,
                "matched " + std::to_string(d) + " digits at K=" +
                    std::to_string(K));
  });

  failures += run_criterion(5, "even-branch constant from a far orbit", 60.0,
                            [orbit_digits](Outcome& out) {
    PowerSeries v_map = kindred_transform(u_map());
    AsymSeries vs = solve_expansion(v_map, 8, kPrec).series;
    OrbitRequest req;
    req.map = MapSpec::polynomial_map(v_map.coeffs());
    req.x0 = BigReal::ratio(1, 6, kPrec);
    req.k_max = g.K;
    req.checkpoints = {g.K};
    req.precision_bits = kPrec;
    OrbitResult orb = iterate_map(req);
    BigReal c = extract_constant(vs, g.K, orb.samples.back().value, kPrec).c;
    BigReal ref = parse_decimal(refs::logistic3_c_even, kPrec);
    int d = digits_agreement(c, ref);
    out.require(d >= orbit_digits,
                "matched " + std::to_string(d) + " digits");
  });

  failures += run_criterion(6, "transcendental-map constant, degree-7 fit",
                            300.0, [orbit_digits](Outcome& out) {
    PowerSeries fit = single_step_series(MapSpec::popa(), 7, kPrec);
    g.popa_series = solve_expansion(fit, 8, kPrec).series;
    OrbitRequest req;
    req.map = MapSpec::popa();
    req.x0 = BigReal(1L, kPrec);
    req.k_max = g.K;
    req.checkpoints = {10000, 100000, 1000000};
    if (g.K > 1000000) req.checkpoints.push_back(g.K);
    req.precision_bits = kPrec;
    g.popa_orbit = iterate_map(req);
    long K = g.popa_orbit.samples.back().k;
    g.c_popa = extract_constant(g.popa_series, K,
                                g.popa_orbit.samples.back().value, kPrec).c;
    BigReal ref = parse_decimal(refs::popa_c, kPrec);
    int d = digits_agreement(g.c_popa, ref);
    out.require(d >= orbit_digits,
                "matched " + std::to_string(d) + " digits at K=" +
                    std::to_string(K));
  });

  failures += run_criterion(7, "degree-4 fit shows constant drift", 0,
                            [](Outcome& out) {
    PowerSeries fit = single_step_series(MapSpec::popa(), 4, kPrec);
    AsymSeries short_series = solve_expansion(fit, 8, kPrec).series;
    StabilityReport rep = stability_scan(short_series, g.popa_orbit);
    out.require(rep.verdict == Verdict::drifting,
                "expected drifting verdict");
    StabilityReport good = stability_scan(g.popa_series, g.popa_orbit);
    out.require(good.verdict == Verdict::stable,
                "degree-7 control should be stable");
  });

  failures += run_criterion(8, "reciprocal growth expansion", 0,
                            [](Outcome& out) {
    AsymSeries r = asym_reciprocal(g.popa_series);
    BigReal sqrt2 = sqrt(BigReal(2L, kPrec));
    out.require(cpoly_agree(r.coeff(-1, 0), CPoly::constant(sqrt2), 25),
                "k^(1/2) coefficient");
    out.require(cpoly_agree(r.coeff(0, 0),
                            CPoly::constant(BigReal::ratio(-1, 2, kPrec)),
                            25),
                "constant coefficient");
    out.require(cpoly_agree(r.coeff(1, 1),
                            CPoly::constant(BigReal::ratio(7, 24, kPrec) /
                                            sqrt2),
                            25),
                "ln(k) k^(-1/2) coefficient");
    CPoly want({BigReal(1L, kPrec) / (sqrt2 * 4L), BigReal(-2L, kPrec)});
    out.require(cpoly_agree(r.coeff(1, 0), want, 25), "k^(-1/2) coefficient");

    // evaluation against the reciprocal of the actual orbit value
    BigReal y6(kPrec);
    for (const auto& s : g.popa_orbit.samples)
      if (s.k == 1000000) y6 = s.value;
    BigReal got = asym_eval(r, 1000000, g.c_popa);
    BigReal expect = BigReal(1L, kPrec) / y6;
    int d = digits_agreement(got, expect);
    out.require(d >= 8, "eval matched " + std::to_string(d) + " digits");
  });

  failures += run_criterion(9, "cosine fixed-point product suite", 5.0,
                            [](Outcome& out) {
    mpfr_prec_t tp = bits_for_digits(30);
    BigReal theta = dottie(tp);
    BigReal one(1L, tp);
    BigReal omts = one - theta * theta;
    out.require(
        digits_agreement(theta, parse_decimal(refs::dottie_theta, tp)) >= 25,
        "theta");
    out.require(digits_agreement(
                    omts, parse_decimal(refs::one_minus_theta_sq, tp)) >= 25,
                "1-theta^2");
    RateResult above = geometric_limit(
        MapSpec::cosine(true, Orientation::above), one - theta, 25, tp);
    RateResult below = geometric_limit(
        MapSpec::cosine(true, Orientation::below), theta, 25, tp);
    out.require(digits_agreement(above.limit,
                                 parse_decimal(refs::dottie_above_limit,
                                               tp)) >= 25,
                "above-branch product");
    out.require(digits_agreement(below.limit,
                                 parse_decimal(refs::dottie_below_limit,
                                               tp)) >= 25,
                "below-branch product");
    out.require(digits_agreement(above.limit / below.limit, sqrt(omts)) >= 20,
                "ratio sqrt(1-theta^2)");
  });

  failures += run_criterion(10, "empirical remainder bounds on [0,10]", 0,
                            [](Outcome& out) {
    mpfr_prec_t tp = bits_for_digits(30);
    BoundReport ba = bound_scan(MapSpec::cosine(true, Orientation::above),
                                BigReal(10L, tp), 10000, tp);
    BoundReport bb = bound_scan(MapSpec::cosine(true, Orientation::below),
                                BigReal(10L, tp), 10000, tp);
    out.require(ba.sup_estimate > BigReal(0.25, tp) &&
                    ba.sup_estimate < BigReal(0.27279, tp),
                "above sup " + format_decimal(ba.sup_estimate, 8));
    out.require(bb.sup_estimate < BigReal(0.30697, tp),
                "below sup " + format_decimal(bb.sup_estimate, 8));
  });

  failures += run_criterion(11, "logistic convergence rates", 0,
                            [](Outcome& out) {
    mpfr_prec_t tp = bits_for_digits(30);
    RateResult l32 = geometric_limit(
        MapSpec::logistic(BigReal::ratio(3, 2, tp)),
        BigReal::ratio(1, 6, tp), 25, tp);
    out.require(digits_agreement(
                    l32.limit,
                    parse_decimal(refs::logistic_3_2_limit, tp)) >= 24,
                "lambda=3/2 limit");
    RateResult a = geometric_limit(
        MapSpec::logistic(BigReal::ratio(5, 2, tp), true, Orientation::above),
        BigReal::ratio(1, 40, tp), 25, tp);
    RateResult b = geometric_limit(
        MapSpec::logistic(BigReal::ratio(5, 2, tp), true, Orientation::below),
        BigReal::ratio(1, 10, tp), 25, tp);
    out.require(digits_agreement(
                    a.limit,
                    parse_decimal(refs::logistic_5_2_above_limit, tp)) >= 24,
                "lambda=5/2 above");
    out.require(digits_agreement(
                    b.limit,
                    parse_decimal(refs::logistic_5_2_below_limit, tp)) >= 24,
                "lambda=5/2 below");
    out.require(
        digits_agreement(a.limit / b.limit, BigReal::ratio(1, 2, tp)) >= 20,
        "ratio 1/2");
  });

  failures += run_criterion(12, "quadratic-map closed form", 0,
                            [](Outcome& out) {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> dist(0.01, 0.99);
    MapSpec l2 = MapSpec::logistic(BigReal(2L, kPrec));
    BigReal tol = BigReal::pow2(-(static_cast<long>(kPrec) - 160), kPrec);
    for (int trial = 0; trial < 10; ++trial) {
      BigReal x0(dist(rng), kPrec);
      BigReal x = x0;
      for (long k = 1; k <= 20; ++k) {
        x = map_apply(l2, x);
        out.require(abs(x - closed_form_logistic2(x0, k, kPrec)) < tol,
                    "trial " + std::to_string(trial) + " k=" +
                        std::to_string(k));
      }
    }
  });

  failures += run_criterion(13, "series reversion coefficients", 0,
                            [](Outcome& out) {
    PowerSeries inv = ps_reversion(
        PowerSeries(std::vector<BigReal>{BigReal(kPrec), BigReal(1L, kPrec),
                                         BigReal(kPrec), BigReal(-18L, kPrec),
                                         BigReal(-27L, kPrec),
                                         BigReal(kPrec)}));
    long want[3] = {18, 27, 972};
    for (int d = 3; d <= 5; ++d)
      out.require(abs(inv[d] - BigReal(want[d - 3], kPrec)) <
                      BigReal(1e-30, kPrec),
                  "degree " + std::to_string(d));
  });

  failures += run_criterion(14, "defect residuals", 0, [](Outcome& out) {
    BigReal tol = BigReal::pow2(-(static_cast<long>(kPrec) - 48), kPrec);
    ExpansionResult u = solve_expansion(u_map(), 8, kPrec);
    PowerSeries quintic(std::vector<BigReal>{
        BigReal(kPrec), BigReal(1L, kPrec), BigReal(kPrec),
        BigReal(-1L, kPrec), BigReal::ratio(1, 2, kPrec),
        BigReal::ratio(2, 3, kPrec)});
    ExpansionResult q = solve_expansion(quintic, 8, kPrec);
    out.require(u.residual_max < tol, "u residual");
    out.require(q.residual_max < tol, "quintic residual");
    // A coefficient at halves index h is pinned by the matching equation at
    // h+2, so the perturbation defect is measured two half-steps past the
    // truncation, relative to the solved series' own (truncated) defect.
    PowerSeries um = u_map();
    auto defect = [&](const AsymSeries& s) {
      return shift_reexpand(s, 10) - substitute_into_map(um, s, 10);
    };
    AsymSeries base_defect = defect(u.series);
    BigReal bump(1e-3, kPrec);
    for (const auto& [key, cp] : u.series.terms()) {
      AsymSeries bad = u.series;
      bad.set(key.first, key.second, cp + CPoly::constant(bump));
      BigReal delta = (defect(bad) - base_defect).max_abs_coeff();
      out.require(delta > BigReal(1e-4, kPrec),
                  "perturbation at (" + std::to_string(key.first) + "," +
                      std::to_string(key.second) + ") undetected");
    }
  });

  failures += run_criterion(15, "series-orbit decay envelope", 0,
                            [](Outcome& out) {
    BigReal prev_diff(kPrec);
    bool first = true;
    for (const auto& s : g.u_orbit.samples) {
      bool quadruple_point = s.k == (1L << 12) || s.k == (1L << 14) ||
                             s.k == (1L << 16) || s.k == (1L << 18) ||
                             s.k == (1L << 20);
      if (!quadruple_point) continue;
      BigReal diff = abs(asym_eval(g.u_series, s.k, g.c_odd) - s.value);
      if (!first)
        out.require(diff * 15L < prev_diff,
                    "decay factor below 15 at k=" + std::to_string(s.k));
      prev_diff = diff;
      first = false;
    }
    out.require(!first, "no quadrupling checkpoints sampled");
  });

  std::printf("acceptance: %s (%d of 15 failed)%s\n",
              failures == 0 ? "PASS" : "FAIL", failures,
              g_fast ? " [fast profile]" : "");
  return failures == 0 ? 0 : 1;
}
