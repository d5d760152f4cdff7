#include "arenstorf/constants.hpp"

#include <cmath>
#include <string>

#include "arenstorf/accumulator.hpp"
#include "arenstorf/error.hpp"

namespace arenstorf::constants {

double c2_tail_bound(std::uint64_t prime_limit) {
  const auto p = static_cast<double>(prime_limit);
  return 2.0 / (p * std::log(p));
}

C2Estimate twin_constant(std::uint64_t prime_limit, sieve::EngineConfig engine) {
  if (prime_limit < 3) fail(ErrorCode::domain, "twin_constant: prime limit must be at least 3");

  const sieve::BasePrimes base = sieve::base_primes_for(prime_limit + 1);
  CompensatedSum log_product;
  sieve::Engine(base, engine).for_each_prime_segment(3, prime_limit + 1, [&](const sieve::Segment& segment) {
    segment.for_each_prime([&](std::uint64_t p) {
      const double inv = 1.0 / static_cast<double>(p - 1);
      log_product.add(std::log1p(-inv * inv));
    });
    return true;
  });

  C2Estimate out;
  out.value = 2.0 * std::exp(log_product.total());
  out.tail_bound = c2_tail_bound(prime_limit);
  out.prime_limit = prime_limit;
  return out;
}

double brun_partial(std::uint64_t x, sieve::EngineConfig engine) {
  if (x < 5) fail(ErrorCode::domain, "brun_partial: x must be at least 5, got " + std::to_string(x));

  const sieve::BasePrimes base = sieve::base_primes_for(x + 3);
  CompensatedSum sum;
  sieve::Engine(base, engine).for_each_twin_segment(3, x + 1, [&](std::uint64_t, std::uint64_t, auto twins) {
    for (const std::uint64_t p : twins) {
      sum.add(1.0 / static_cast<double>(p));
      sum.add(1.0 / static_cast<double>(p + 2));
    }
    return true;
  });
  return sum.total();
}

double brun_extrapolate(std::uint64_t x, double partial, double c2) {
  if (x < 5) fail(ErrorCode::domain, "brun_extrapolate: x must be at least 5");
  if (!(c2 > 0)) fail(ErrorCode::domain, "brun_extrapolate: c2 must be positive");
  return partial + 4.0 * c2 / std::log(static_cast<double>(x));
}

BrunEstimate brun_estimate(std::uint64_t x, double twin_prime_constant, sieve::EngineConfig engine) {
  BrunEstimate out;
  out.x = x;
  out.c2 = hardy_littlewood_c2(twin_prime_constant);
  out.partial = brun_partial(x, engine);
  out.extrapolated = brun_extrapolate(x, out.partial, out.c2);
  return out;
}

}  // namespace arenstorf::constants
