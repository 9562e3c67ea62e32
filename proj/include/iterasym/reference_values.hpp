#pragma once

// Published reference constants reproduced by this project, quarantined in
// one place so transcription can be audited at a single point. Stored as
// decimal strings; parse at whatever precision a caller needs.

namespace iterasym::refs {

// Logistic map at lambda = 3: expansion constants of the odd/even iterate
// subsequences (x0 = 1/2).
inline constexpr const char* logistic3_c_odd =
    "-0.1805303007686495535981970";
inline constexpr const char* logistic3_c_even =
    "-0.1388636341019828869315303";

// y -> y/(1 + y ln(1+y)) from y0 = 1: expansion constant.
inline constexpr const char* popa_c = "-0.331815429620156";

// Fixed point of cos and derived quantities.
inline constexpr const char* dottie_theta =
    "0.7390851332151606416553120";
inline constexpr const char* one_minus_theta_sq =
    "0.4537531658603282480453425";

// lim u_k/rho^k for the cosine double-step branches (x0 = 0).
inline constexpr const char* dottie_above_limit =
    "0.2682998330950090571338993";
inline constexpr const char* dottie_below_limit =
    "0.3983002403035094139563243";

// Logistic single-step rate limit, lambda = 3/2, x0 = 1/2.
inline constexpr const char* logistic_3_2_limit =
    "0.0654844754592965980119173";

// Logistic double-step rate limits, lambda = 5/2, x0 = 1/2.
inline constexpr const char* logistic_5_2_above_limit =
    "0.0266915553170954912963034";
inline constexpr const char* logistic_5_2_below_limit =
    "0.0533831106341909825926069";

}  // namespace iterasym::refs
