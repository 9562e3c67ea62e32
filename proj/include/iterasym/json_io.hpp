#pragma once

// JSON forms for the public value types. All numbers travel as decimal
// strings produced by format_decimal, so files round-trip bit-stably at the
// declared digit count.

#include <json.hpp>

#include "iterasym/asymseries.hpp"
#include "iterasym/extractor.hpp"
#include "iterasym/matcher.hpp"
#include "iterasym/orbit.hpp"
#include "iterasym/powerseries.hpp"
#include "iterasym/thron.hpp"

namespace iterasym {

using nlohmann::json;

inline json to_json(const PowerSeries& s, int digits = 40) {
  json coeffs = json::array();
  for (int i = 0; i <= s.trunc_degree(); ++i)
    coeffs.push_back(format_decimal(s[i], digits));
  return {{"trunc_degree", s.trunc_degree()}, {"coeffs", coeffs}};
}

inline PowerSeries powerseries_from_json(const json& j, mpfr_prec_t prec) {
  std::vector<BigReal> c;
  for (const auto& s : j.at("coeffs"))
    c.push_back(parse_decimal(s.get<std::string>(), prec));
  PowerSeries ps(std::move(c));
  if (ps.trunc_degree() != j.at("trunc_degree").get<int>())
    throw std::invalid_argument("powerseries_from_json: degree mismatch");
  return ps;
}

inline json to_json(const AsymSeries& s, int digits = 40) {
  json terms = json::array();
  for (const auto& [key, cp] : s.terms()) {
    json cpoly = json::array();
    for (int d = 0; d <= cp.degree(); ++d)
      cpoly.push_back(format_decimal(cp.coeff(d), digits));
    terms.push_back(
        {{"halves", key.first}, {"logpow", key.second}, {"cpoly", cpoly}});
  }
  return {{"cutoff_halves", s.cutoff_halves()}, {"terms", terms}};
}

inline AsymSeries asymseries_from_json(const json& j, mpfr_prec_t prec) {
  AsymSeries s(j.at("cutoff_halves").get<int>());
  for (const auto& t : j.at("terms")) {
    std::vector<BigReal> c;
    for (const auto& v : t.at("cpoly"))
      c.push_back(parse_decimal(v.get<std::string>(), prec));
    s.set(t.at("halves").get<int>(), t.at("logpow").get<int>(),
          CPoly(std::move(c)));
  }
  return s;
}

inline json to_json(const ExpansionResult& r, int digits = 40) {
  json fin = json::array();
  for (const auto& [key, f] : r.finality)
    fin.push_back({{"halves", key.first},
                   {"logpow", key.second},
                   {"status", f == Finality::final_value ? "final"
                                                         : "transient"}});
  json j = to_json(r.series, digits);
  j["finality"] = fin;
  j["residual_max"] = format_decimal(r.residual_max, 10);
  j["map_degree"] = r.map_degree;
  return j;
}

inline json to_json(const OrbitResult& r, int digits = 40) {
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"k", s.k}, {"value", format_decimal(s.value, digits)}});
  return {{"map", r.map_description},
          {"precision_bits", static_cast<long>(r.precision_bits)},
          {"samples", samples}};
}

inline OrbitResult orbit_from_json(const json& j) {
  OrbitResult r;
  r.map_description = j.at("map").get<std::string>();
  r.precision_bits = j.at("precision_bits").get<long>();
  for (const auto& s : j.at("samples"))
    r.samples.push_back({s.at("k").get<long>(),
                         parse_decimal(s.at("value").get<std::string>(),
                                       r.precision_bits)});
  return r;
}

inline json to_json(const StabilityReport& r, int digits = 40) {
  json est = json::array();
  for (const auto& e : r.estimates)
    est.push_back({{"K", e.k}, {"C", format_decimal(e.c, digits)}});
  json agr = json::array();
  for (const auto& a : r.agreed_digits)
    agr.push_back(
        {{"K_lo", a.k_lo}, {"K_hi", a.k_hi}, {"digits", a.digits}});
  return {{"verdict", r.verdict == Verdict::stable ? "stable" : "drifting"},
          {"estimates", est},
          {"agreed_digits", agr}};
}

inline json to_json(const RateResult& r, int digits = 40) {
  return {{"rho", format_decimal(r.rho, digits)},
          {"limit", format_decimal(r.limit, digits)},
          {"factors_used", r.partial_products},
          {"tail_bound", format_decimal(r.tail_bound, 10)}};
}

}  // namespace iterasym
