#pragma once

#include <cstdint>

#include "arenstorf/sieve.hpp"

namespace arenstorf::constants {

/// Twin-prime constant C2 = 2 * prod_{p>2} (1 - 1/(p-1)^2), literature value.
inline constexpr double kTwinPrimeConstant = 1.32032363169373914785562;

/// Truncated Euler product for C2 over primes 2 < p <= prime_limit.
struct C2Estimate {
  double value = 0.0;
  /// Bound on |value - C2| from dropping the primes above prime_limit.
  double tail_bound = 0.0;
  std::uint64_t prime_limit = 0;
};

/// 2 / (P ln P). Dominates sum_{p>P} 1/(p-1)^2 with room to spare and
/// therefore the relative truncation error of the product.
double c2_tail_bound(std::uint64_t prime_limit);

/// Product accumulated as a compensated sum of log1p terms, then
/// exponentiated once. prime_limit >= 3.
C2Estimate twin_constant(std::uint64_t prime_limit, sieve::EngineConfig engine = {});

/// The Hardy-Littlewood twin constant c2 = prod_{p>2} (1 - 1/(p-1)^2) = C2 / 2
/// that multiplies 4 / ln x in the Brun tail.
inline constexpr double hardy_littlewood_c2(double twin_prime_constant) { return twin_prime_constant / 2; }

/// sum over twin pairs (p, p+2) with p <= x of 1/p + 1/(p+2). x >= 5.
double brun_partial(std::uint64_t x, sieve::EngineConfig engine = {});

/// partial + 4 c2 / ln x.
double brun_extrapolate(std::uint64_t x, double partial, double c2);

struct BrunEstimate {
  std::uint64_t x = 0;
  double partial = 0.0;
  double extrapolated = 0.0;
  /// Coefficient actually used in the tail term.
  double c2 = 0.0;
};

/// Partial sum plus tail term with c2 = hardy_littlewood_c2(twin_prime_constant).
BrunEstimate brun_estimate(std::uint64_t x, double twin_prime_constant = kTwinPrimeConstant,
                           sieve::EngineConfig engine = {});

}  // namespace arenstorf::constants
