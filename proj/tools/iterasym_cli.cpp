// Command-line front end. Subcommands: expand, orbit, extract, rate, dottie,
// reproduce. Exit codes: 0 success, 2 configuration error, 3 numerical
// failure. ITERASYM_PRECISION_BITS overrides the default working precision.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iterasym/json_io.hpp"
#include "iterasym/reproduce.hpp"

using namespace iterasym;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mpfr_prec_t default_precision() {
  if (const char* env = std::getenv("ITERASYM_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 64 || v > 1 << 20)
      throw ConfigError("ITERASYM_PRECISION_BITS must be an integer in [64, 2^20]");
    return static_cast<mpfr_prec_t>(v);
  }
  return 256;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// Map spec strings: "poly:c0,c1,..." | "logistic:<lambda>" | "cos" |
// "popa" | "popa_ell:<l>", each optionally suffixed ":double" and
// ":above"/":below".
MapSpec parse_map(const std::string& text, mpfr_prec_t prec) {
  std::vector<std::string> parts = split(text, ':');
  if (parts.empty()) throw ConfigError("empty map spec");
  size_t i = 1;
  MapSpec m;
  try {
    if (parts[0] == "poly") {
      if (parts.size() < 2) throw ConfigError("poly map needs coefficients");
      std::vector<BigReal> c;
      for (const auto& t : split(parts[1], ','))
        c.push_back(parse_decimal(t, prec));
      m = MapSpec::polynomial_map(std::move(c));
      i = 2;
    } else if (parts[0] == "logistic") {
      if (parts.size() < 2) throw ConfigError("logistic map needs lambda");
      m = MapSpec::logistic(parse_decimal(parts[1], prec));
      i = 2;
    } else if (parts[0] == "cos") {
      m = MapSpec::cosine();
    } else if (parts[0] == "popa") {
      m = MapSpec::popa();
    } else if (parts[0] == "popa_ell") {
      if (parts.size() < 2) throw ConfigError("popa_ell needs the exponent");
      m = MapSpec::popa_ell(std::stoi(parts[1]));
      i = 2;
    } else {
      throw ConfigError("unknown map kind: " + parts[0]);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad map spec: ") + e.what());
  }
  for (; i < parts.size(); ++i) {
    if (parts[i] == "double")
      m.double_step = true;
    else if (parts[i] == "above")
      m.orientation = Orientation::above;
    else if (parts[i] == "below")
      m.orientation = Orientation::below;
    else
      throw ConfigError("unknown map modifier: " + parts[i]);
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid map spec: ") + e.what());
  }
  return m;
}

// The local single-variable model a subcommand needs: a poly map is its own
// model; named maps are fitted at their resolved fixed point.
PowerSeries local_model(const MapSpec& m, int degree, mpfr_prec_t prec) {
  if (m.kind == MapKind::polynomial) {
    std::vector<BigReal> c = m.poly;
    while (static_cast<int>(c.size()) <= degree) c.push_back(BigReal(prec));
    return PowerSeries(std::move(c));
  }
  return taylor_at_fixed_point(m, degree, prec);
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw ConfigError("cannot open output file: " + out_path);
  f << text;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open input file: " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const std::exception& e) {
    throw ConfigError("unparseable JSON in " + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-precision laboratory for the asymptotics of iterated maps"};
  app.require_subcommand(1);
  app.set_config("--config");

  long precision_bits = 0;  // 0 = default (env var or 256)

  std::string expand_map;
  int expand_cutoff = 8;
  int expand_degree = 8;
  std::string expand_out;
  auto* expand = app.add_subcommand("expand", "solve an asymptotic expansion");
  expand->add_option("--map", expand_map, "map spec")->required();
  expand->add_option("--cutoff", expand_cutoff, "half-exponent cutoff")
      ->check(CLI::Range(3, 16));
  expand->add_option("--degree", expand_degree, "local Taylor fit degree")
      ->check(CLI::Range(3, 32));
  expand->add_option("--json", expand_out, "write JSON here (default stdout)");
  expand->add_option("--precision-bits", precision_bits);

  std::string orbit_map, orbit_x0, orbit_cp, orbit_out;
  auto* orbit = app.add_subcommand("orbit", "iterate a map, sample checkpoints");
  orbit->add_option("--map", orbit_map, "map spec")->required();
  orbit->add_option("--x0", orbit_x0, "start value")->required();
  orbit->add_option("--checkpoints", orbit_cp, "ascending k list, comma separated")
      ->required();
  orbit->add_option("--json", orbit_out, "write JSON here (default stdout)");
  orbit->add_option("--precision-bits", precision_bits);

  std::string ex_series, ex_orbit, ex_out;
  auto* extract = app.add_subcommand("extract",
                                     "extract the expansion constant from an orbit");
  extract->add_option("--series", ex_series, "expansion JSON file")->required();
  extract->add_option("--orbit", ex_orbit, "orbit JSON file")->required();
  extract->add_option("--json", ex_out, "write JSON here (default stdout)");
  extract->add_option("--precision-bits", precision_bits);

  std::string rate_map, rate_u0, rate_out;
  int rate_digits = 25;
  auto* rate = app.add_subcommand("rate", "geometric convergence rate and limit");
  rate->add_option("--map", rate_map, "map spec")->required();
  rate->add_option("--u0", rate_u0, "start value in branch coordinates")
      ->required();
  rate->add_option("--digits", rate_digits, "certified digits")
      ->check(CLI::Range(1, 50));
  rate->add_option("--json", rate_out, "write JSON here (default stdout)");
  rate->add_option("--precision-bits", precision_bits);

  int dottie_digits = 25;
  auto* dot = app.add_subcommand("dottie", "the fixed point of cos");
  dot->add_option("--digits", dottie_digits, "printed digits")
      ->check(CLI::Range(1, 50));

  bool repro_fast = false;
  std::string repro_out;
  auto* repro = app.add_subcommand("reproduce",
                                   "recompute every published constant");
  repro->add_flag("--fast", repro_fast, "short orbits, reduced digit targets");
  repro->add_option("--json", repro_out, "write JSON here as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    mpfr_prec_t prec =
        precision_bits > 0 ? static_cast<mpfr_prec_t>(precision_bits)
                           : default_precision();
    if (precision_bits != 0 && (precision_bits < 64 || precision_bits > (1 << 20)))
      throw ConfigError("--precision-bits must be in [64, 2^20]");

    if (*expand) {
      MapSpec m = parse_map(expand_map, prec);
      PowerSeries fit = local_model(m, expand_degree, prec);
      ExpansionResult r = solve_expansion(fit, expand_cutoff, prec);
      emit(to_json(r), expand_out);
    } else if (*orbit) {
      OrbitRequest req;
      req.map = parse_map(orbit_map, prec);
      req.x0 = parse_decimal(orbit_x0, prec);
      for (const auto& t : split(orbit_cp, ','))
        req.checkpoints.push_back(std::stol(t));
      if (req.checkpoints.empty()) throw ConfigError("empty checkpoint list");
      req.k_max = req.checkpoints.back();
      req.precision_bits = prec;
      long total = req.k_max;
      req.progress = [total](long k) {
        std::fprintf(stderr, "progress: k=%ld of %ld\n", k, total);
      };
      emit(to_json(iterate_map(req)), orbit_out);
    } else if (*extract) {
      nlohmann::json sj = load_json(ex_series);
      AsymSeries series = asymseries_from_json(sj, prec);
      OrbitResult orb = orbit_from_json(load_json(ex_orbit));
      if (orb.samples.size() >= 3 &&
          orb.samples.back().k >= 100 * orb.samples.front().k) {
        emit(to_json(stability_scan(series, orb)), ex_out);
      } else {
        const OrbitSample& s = orb.samples.back();
        ConstantEstimate est =
            extract_constant(series, s.k, s.value, orb.precision_bits);
        emit({{"K", est.k},
              {"C", format_decimal(est.c, 40)},
              {"poly_residual", format_decimal(est.poly_residual, 10)},
              {"series_cutoff_halves", est.series_cutoff_halves}},
             ex_out);
      }
    } else if (*rate) {
      MapSpec m = parse_map(rate_map, prec);
      mpfr_prec_t rp = std::max(prec, bits_for_digits(rate_digits + 5));
      RateResult r =
          geometric_limit(m, parse_decimal(rate_u0, rp), rate_digits, rp);
      emit(to_json(r, rate_digits + 2), rate_out);
    } else if (*dot) {
      std::cout << format_decimal(dottie(bits_for_digits(dottie_digits)),
                                  dottie_digits)
                << "\n";
    } else if (*repro) {
      ReproReport rep = reproduce(repro_fast);
      std::printf("%-24s %7s %7s %9s  %s\n", "label", "matched", "target",
                  "seconds", "status");
      for (const auto& e : rep.entries)
        std::printf("%-24s %7d %7d %9.2f  %s\n    ref  %s\n    got  %s\n",
                    e.label.c_str(), e.digits_matched, e.target_digits,
                    e.runtime_seconds, e.pass ? "ok" : "MISS",
                    e.reference.c_str(), e.computed.c_str());
      std::printf("overall: %s\n", rep.pass ? "pass" : "fail");
      if (!repro_out.empty()) emit(repro_to_json(rep), repro_out);
      if (!rep.pass) return 3;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: numerical: %s\n", e.what());
    return 3;
  }
  return 0;
}
