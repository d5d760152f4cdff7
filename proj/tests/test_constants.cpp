#include <cmath>

#include "arenstorf/constants.hpp"
#include "arenstorf/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arenstorf;
using namespace arenstorf::constants;

namespace {

const C2Estimate& c2_at_1e8() {
  static const C2Estimate est = twin_constant(100'000'000);
  return est;
}

}  // namespace

TEST_CASE("twin_constant small limits against exact rationals") {
  CHECK(twin_constant(3).value == doctest::Approx(1.5).epsilon(1e-15));
  // 2 * 3/4 * 15/16 * 35/36 = 175/128
  CHECK(oracle::exact_c2_product(7) == mpq_class(175, 128));
  CHECK(twin_constant(7).value == doctest::Approx(1.3671875).epsilon(1e-15));
  CHECK(twin_constant(8).value == twin_constant(7).value);
  for (std::uint64_t limit : {11, 100, 1000, 5000}) {
    CAPTURE(limit);
    CHECK(oracle::relative_error(twin_constant(limit).value, oracle::exact_c2_product(limit)) < 1e-14);
  }
  CHECK_THROWS_AS(twin_constant(2), Error);
}

TEST_CASE("twin_constant at 10^8 meets the reference value") {
  const auto& est = c2_at_1e8();
  CHECK(est.prime_limit == 100'000'000);
  CHECK(std::abs(est.value - kTwinPrimeConstant) < 1e-8);
  CHECK(est.tail_bound < 1e-8);
  // the truncation error itself is inside the bound
  CHECK(std::abs(est.value - kTwinPrimeConstant) < est.tail_bound);
  CHECK(est.value > 1.0);
  CHECK(est.value < 2.0);
}

TEST_CASE("twin_constant monotone with honest tail bounds") {
  const std::uint64_t limits[] = {1000, 10'000, 100'000, 1'000'000};
  double previous_value = 2.0;
  double previous_bound = 1.0;
  for (auto limit : limits) {
    const auto est = twin_constant(limit);
    CAPTURE(limit);
    CHECK(est.value <= previous_value);
    CHECK(est.tail_bound > 0.0);
    CHECK(est.tail_bound <= previous_bound);
    CHECK(std::abs(est.value - c2_at_1e8().value) < est.tail_bound);
    previous_value = est.value;
    previous_bound = est.tail_bound;
  }
  const auto a = twin_constant(2000);
  const auto b = twin_constant(20'000);
  CHECK(std::abs(a.value - b.value) <= a.tail_bound);
}

TEST_CASE("twin_constant independent of workers") {
  CHECK(twin_constant(2'000'000, {1 << 12, 1}).value == twin_constant(2'000'000, {1 << 16, 4}).value);
}

TEST_CASE("brun_partial examples") {
  const mpq_class at7 = mpq_class(1, 3) + mpq_class(1, 5) + mpq_class(1, 5) + mpq_class(1, 7);
  CHECK(at7 == mpq_class(92, 105));
  CHECK(oracle::relative_error(brun_partial(7), at7) < 1e-15);
  // (5, 7) has p <= 5, so it is already included
  CHECK(brun_partial(5) == brun_partial(7));

  const mpq_class at13 = at7 + mpq_class(1, 11) + mpq_class(1, 13);
  CHECK(std::abs(brun_partial(13) - at13.get_d()) < 1e-12);
  CHECK(brun_partial(13) == doctest::Approx(1.0440226440).epsilon(1e-10));

  CHECK_THROWS_AS(brun_partial(4), Error);
  CHECK_THROWS_AS(brun_partial(0), Error);
}

TEST_CASE("brun_partial against exact rational sums up to 10^6") {
  for (std::uint64_t x : {100, 1000, 10'000, 100'000, 1'000'000}) {
    CAPTURE(x);
    const auto exact = oracle::exact_brun_sum(oracle::naive_twins(3, x + 1));
    CHECK(oracle::relative_error(brun_partial(x), exact) < 1e-12);
  }
}

TEST_CASE("brun_partial strictly increases at each new pair") {
  const auto twins = oracle::naive_twins(3, 3000);
  double previous = 0.0;
  for (auto p : twins) {
    if (p < 5) continue;
    const double here = brun_partial(p);
    CHECK(here > previous);
    CHECK(brun_partial(p + 1) == here);
    previous = here;
  }
}

TEST_CASE("brun_extrapolate") {
  // ln 55 ~ 4.007, so the tail term is about c2 itself
  CHECK(brun_extrapolate(55, 0.0, kTwinPrimeConstant) == doctest::Approx(kTwinPrimeConstant).epsilon(0.01));
  for (std::uint64_t x : {5, 1000, 123'456'789}) {
    const double partial = 1.25;
    CHECK(brun_extrapolate(x, partial, 0.66) - partial ==
          doctest::Approx(4 * 0.66 / std::log(static_cast<double>(x))).epsilon(1e-15));
  }
  CHECK_THROWS_AS(brun_extrapolate(4, 0.0, 1.0), Error);
  CHECK_THROWS_AS(brun_extrapolate(10, 0.0, 0.0), Error);
}

TEST_CASE("brun_estimate is stable in x") {
  const auto e5 = brun_estimate(100'000);
  const auto e6 = brun_estimate(1'000'000);
  CHECK(e5.c2 == kTwinPrimeConstant / 2);
  CHECK(e5.extrapolated > e5.partial);
  CHECK(e6.partial > e5.partial);
  CHECK(e6.extrapolated == e6.partial + 4 * e6.c2 / std::log(1e6));
  MESSAGE("B2 estimates " << e5.extrapolated << " " << e6.extrapolated);
  CHECK(std::abs(e5.extrapolated - e6.extrapolated) < 0.01);
  // Brun's constant is 1.90216...
  CHECK(std::abs(e6.extrapolated - 1.902160583) < 0.01);
}
