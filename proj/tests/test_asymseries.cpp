#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "iterasym/asymseries.hpp"

using namespace iterasym;

namespace {

constexpr mpfr_prec_t kPrec = 256;

CPoly cnum(double v) { return CPoly::constant(BigReal(v, kPrec)); }
CPoly crat(long n, long d) {
  return CPoly::constant(BigReal::ratio(n, d, kPrec));
}

bool close(const BigReal& a, const BigReal& b, long bits = 200) {
  return abs(a - b) < BigReal::pow2(-bits, kPrec);
}

bool cpoly_close(const CPoly& a, const CPoly& b, long bits = 200) {
  int d = std::max(a.degree(), b.degree());
  for (int i = 0; i <= d; ++i)
    if (!close(a.coeff(i), b.coeff(i), bits)) return false;
  return true;
}

}  // namespace

TEST_CASE("cpoly basics") {
  CPoly z;
  CHECK(z.is_zero());
  CHECK((z + cnum(0.0)).is_zero());  // trailing zeros trimmed
  CPoly c = CPoly::symbol_c(kPrec);
  CHECK(c.degree() == 1);
  CPoly sq = c * c;
  CHECK(sq.degree() == 2);
  CHECK(close(sq.eval(BigReal(3L, kPrec)), BigReal(9L, kPrec)));
}

TEST_CASE("shift of k^(-1/2)") {
  AsymSeries s(1);
  s.set(1, 0, cnum(1.0));
  AsymSeries r = shift_reexpand(s, 5);
  CHECK(cpoly_close(r.coeff(1, 0), cnum(1.0)));
  CHECK(cpoly_close(r.coeff(3, 0), crat(-1, 2)));
  CHECK(cpoly_close(r.coeff(5, 0), crat(3, 8)));
}

TEST_CASE("shift of ln(k) k^(-2)") {
  AsymSeries s(4);
  s.set(4, 1, cnum(1.0));
  AsymSeries r = shift_reexpand(s, 8);
  CHECK(cpoly_close(r.coeff(4, 1), cnum(1.0)));
  CHECK(cpoly_close(r.coeff(6, 0), cnum(1.0)));
  CHECK(cpoly_close(r.coeff(6, 1), cnum(-2.0)));
  CHECK(cpoly_close(r.coeff(8, 0), crat(-5, 2)));
  CHECK(cpoly_close(r.coeff(8, 1), cnum(3.0)));
}

TEST_CASE("shift of the zero series") {
  AsymSeries z(4);
  CHECK(shift_reexpand(z, 6).empty());
}

TEST_CASE("shift is linear, coefficient-exact") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  AsymSeries a(6), b(6);
  a.set(1, 0, cnum(dist(rng)));
  a.set(3, 1, cnum(dist(rng)));
  a.set(4, 0, CPoly::symbol_c(kPrec) * BigReal(dist(rng), kPrec));
  b.set(1, 0, cnum(dist(rng)));
  b.set(5, 2, cnum(dist(rng)));
  BigReal w(dist(rng), kPrec);
  AsymSeries lhs = shift_reexpand(a * CPoly::constant(w) + b, 8);
  AsymSeries rhs = shift_reexpand(a, 8) * CPoly::constant(w) +
                   shift_reexpand(b, 8);
  AsymSeries diff = lhs - rhs;
  CHECK(diff.max_abs_coeff() < BigReal::pow2(-(kPrec - 16), kPrec));
}

TEST_CASE("shift numeric consistency") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    AsymSeries s(6);
    s.set(1, 0, cnum(dist(rng)));
    s.set(2, 0, cnum(dist(rng)));
    s.set(3, 1, cnum(dist(rng)));
    s.set(4, 1, cnum(dist(rng)));
    s.set(5, 2, cnum(dist(rng)));
    s.set(6, 0, cnum(dist(rng)));
    int cutoff = 9;
    AsymSeries sh = shift_reexpand(s, cutoff);
    BigReal c0(kPrec);
    for (long k : {1000L, 10000L, 100000L}) {
      BigReal lhs = asym_eval(sh, k, c0);
      BigReal rhs = asym_eval(s, k + 1, c0);
      BigReal kk(k, kPrec);
      BigReal envelope = s.max_abs_coeff() * pow_int(ln(kk), 2) /
                         sqrt(pow_int(kk, cutoff + 1)) * 10L;
      CHECK(abs(lhs - rhs) <= envelope);
    }
  }
}

TEST_CASE("substitute identity map reproduces the series") {
  AsymSeries s(5);
  s.set(1, 0, cnum(0.7));
  s.set(3, 0, CPoly::symbol_c(kPrec));
  s.set(5, 2, cnum(-1.25));
  PowerSeries id = PowerSeries::identity(5, kPrec);
  AsymSeries r = substitute_into_map(id, s, 5);
  CHECK((r - s).max_abs_coeff().is_zero());
}

TEST_CASE("substitute x - x^3 on (1/sqrt2) k^(-1/2)") {
  AsymSeries s(3);
  BigReal inv_sqrt2 = BigReal(1L, kPrec) / sqrt(BigReal(2L, kPrec));
  s.set(1, 0, CPoly::constant(inv_sqrt2));
  std::vector<BigReal> mc = {BigReal(kPrec), BigReal(1L, kPrec),
                             BigReal(kPrec), BigReal(-1L, kPrec)};
  AsymSeries r = substitute_into_map(PowerSeries(mc), s, 3);
  CHECK(cpoly_close(r.coeff(1, 0), CPoly::constant(inv_sqrt2)));
  // (1/sqrt2)^3 = 1/(2 sqrt2)
  CHECK(cpoly_close(r.coeff(3, 0),
                    CPoly::constant(-inv_sqrt2 / 2L)));
}

TEST_CASE("asym_eval") {
  AsymSeries s(1);
  s.set(1, 0, cnum(1.0));
  CHECK(close(asym_eval(s, 4, BigReal(kPrec)), BigReal(0.5, kPrec)));

  // linearity of C substitution
  AsymSeries t(4);
  t.set(1, 0, cnum(0.5));
  t.set(3, 0, CPoly::symbol_c(kPrec));
  t.set(4, 0, CPoly::symbol_c(kPrec) * BigReal(-2L, kPrec) + crat(1, 3));
  BigReal v0 = asym_eval(t, 100, BigReal(kPrec));
  BigReal v1 = asym_eval(t, 100, BigReal(1L, kPrec));
  BigReal kk(100L, kPrec);
  BigReal expect = BigReal(1L, kPrec) / pow_int(sqrt(kk), 3) -
                   BigReal(2L, kPrec) / pow_int(kk, 2);
  CHECK(close(v1 - v0, expect, 190));

  CHECK_THROWS(asym_eval(s, 1, BigReal(kPrec)));
}

TEST_CASE("reciprocal of a pure leading term") {
  AsymSeries s(1);
  BigReal inv_sqrt2 = BigReal(1L, kPrec) / sqrt(BigReal(2L, kPrec));
  s.set(1, 0, CPoly::constant(inv_sqrt2));
  AsymSeries r = asym_reciprocal(s);
  CHECK(cpoly_close(r.coeff(-1, 0), CPoly::constant(sqrt(BigReal(2L, kPrec)))));
}

TEST_CASE("reciprocal leading-term preconditions") {
  AsymSeries s(3);
  s.set(1, 0, CPoly::symbol_c(kPrec));  // leading coefficient not constant
  CHECK_THROWS(asym_reciprocal(s));
  AsymSeries t(3);
  t.set(2, 0, cnum(1.0));  // wrong leading exponent
  CHECK_THROWS(asym_reciprocal(t));
}

TEST_CASE("logpow cap checking") {
  AsymSeries s(4);
  s.set(2, 1, cnum(1.0));  // violates j <= floor((h-1)/2)
  CHECK_THROWS(s.check_logpow_caps());
}
