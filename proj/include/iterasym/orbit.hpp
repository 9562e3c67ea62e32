#pragma once

// Sequential high-precision iteration of the maps in scope, sampling the
// orbit at requested checkpoints, plus the lambda=2 logistic closed form.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iterasym/bigreal.hpp"
#include "iterasym/powerseries.hpp"

namespace iterasym {

struct OrbitRequest {
  MapSpec map;
  BigReal x0;
  long k_max = 0;
  std::vector<long> checkpoints;  // ascending, <= k_max
  mpfr_prec_t precision_bits = 256;
  // Liveness callback, invoked every 2^20 steps with the current index.
  std::function<void(long)> progress;
};

struct OrbitSample {
  long k;
  BigReal value;
};

struct OrbitResult {
  std::string map_description;
  mpfr_prec_t precision_bits;
  std::vector<OrbitSample> samples;
};

// Working precision for an orbit to index K at D target digits.
inline mpfr_prec_t orbit_precision(int digits, long k_max) {
  long kbits = 0;
  while ((1L << kbits) < k_max && kbits < 62) ++kbits;
  return bits_for_digits(digits) + kbits;
}

inline OrbitResult iterate_map(const OrbitRequest& req) {
  req.map.validate();
  if (req.checkpoints.empty())
    throw std::invalid_argument("iterate_map: no checkpoints");
  for (size_t i = 0; i < req.checkpoints.size(); ++i) {
    if (req.checkpoints[i] < 1 ||
        (i > 0 && req.checkpoints[i] <= req.checkpoints[i - 1]) ||
        req.checkpoints[i] > req.k_max)
      throw std::invalid_argument("iterate_map: bad checkpoint list");
  }
  mpfr_prec_t p = req.precision_bits;
  BigReal x = req.x0.at_precision(p);
  BigReal zero(p), one(1L, p);

  bool logistic_raw =
      req.map.kind == MapKind::logistic && !req.map.double_step;
  bool branch_poly = req.map.kind == MapKind::polynomial;
  if (logistic_raw && (x <= zero || x >= one))
    throw std::domain_error("iterate_map: logistic orbit must start in (0,1)");
  if ((branch_poly || req.map.kind == MapKind::popa_g ||
       req.map.kind == MapKind::popa_g_ell) &&
      x <= zero)
    throw std::domain_error("iterate_map: orbit must start at x0 > 0");
  BigReal u0 = x;

  OrbitResult res{req.map.describe(), p, {}};
  size_t next_cp = 0;
  for (long k = 1; k <= req.k_max && next_cp < req.checkpoints.size(); ++k) {
    BigReal prev = x;
    x = req.map.double_step ? branch_apply(req.map, x)
                            : map_apply(req.map, x);
    if (logistic_raw && (x <= zero || x >= one))
      throw std::domain_error(
          "iterate_map: logistic iterate left (0,1) at k=" +
          std::to_string(k));
    if (branch_poly || req.map.double_step ||
        req.map.kind == MapKind::popa_g ||
        req.map.kind == MapKind::popa_g_ell) {
      if (x <= zero || x > u0)
        throw std::domain_error(
            "iterate_map: branch iterate left (0, u0] at k=" +
            std::to_string(k));
      if (prev < one && x >= prev)
        throw std::domain_error(
            "iterate_map: branch iterate failed to decrease at k=" +
            std::to_string(k));
    }
    if (k == req.checkpoints[next_cp]) {
      res.samples.push_back({k, x});
      ++next_cp;
    }
    if (req.progress && (k & ((1L << 20) - 1)) == 0) req.progress(k);
  }
  return res;
}

// (1 - (1-2 x0)^(2^k)) / 2: the lambda=2 logistic orbit in closed form.
inline BigReal closed_form_logistic2(const BigReal& x0, long k,
                                     mpfr_prec_t prec) {
  BigReal one(1L, prec);
  if (x0 <= BigReal(prec) || x0 >= one)
    throw std::domain_error("closed_form_logistic2: x0 must be in (0,1)");
  if (k < 0 || k > 62)
    throw std::domain_error("closed_form_logistic2: 2^k out of range");
  BigReal base = one - x0.at_precision(prec) * 2L;
  if (base.is_zero()) return BigReal(1L, prec) / 2L;
  return (one - pow_int(base, 1L << k)) / 2L;
}

}  // namespace iterasym
