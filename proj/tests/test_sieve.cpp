#include <random>
#include <set>

#include "arenstorf/error.hpp"
#include "arenstorf/sieve.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arenstorf;
using namespace arenstorf::sieve;

namespace {

std::vector<std::uint64_t> trial_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = lo; v < hi; ++v) {
    if (oracle::is_prime_trial(v)) out.push_back(v);
  }
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an arenstorf::Error");
  return ErrorCode::domain;
}

}  // namespace

TEST_CASE("small_primes") {
  CHECK(small_primes(10).primes == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(small_primes(2).primes == std::vector<std::uint32_t>{2});
  CHECK(small_primes(3).primes == std::vector<std::uint32_t>{2, 3});

  const auto base = small_primes(1000);
  CHECK(base.primes.size() == 168);
  CHECK(base.limit == 1000);
  std::vector<std::uint32_t> expected;
  for (std::uint32_t v = 2; v <= 1000; ++v) {
    if (oracle::is_prime_trial(v)) expected.push_back(v);
  }
  CHECK(base.primes == expected);

  CHECK(code_of([] { small_primes(1); }) == ErrorCode::domain);
  CHECK(code_of([] { small_primes(0); }) == ErrorCode::domain);
}

TEST_CASE("sieve_segment examples") {
  CHECK(sieve_segment(100, 120, small_primes(11)).primes() == std::vector<std::uint64_t>{101, 103, 107, 109, 113});
  CHECK(sieve_segment(3, 20, small_primes(5)).primes() == std::vector<std::uint64_t>{3, 5, 7, 11, 13, 17, 19});

  const auto empty = sieve_segment(50, 50, small_primes(11));
  CHECK(empty.empty());
  CHECK(empty.primes().empty());

  // even lo and odd hi are both fine
  CHECK(sieve_segment(4, 5, small_primes(3)).empty());
  CHECK(sieve_segment(4, 6, small_primes(3)).primes() == std::vector<std::uint64_t>{5});
}

TEST_CASE("sieve_segment errors") {
  CHECK(code_of([] { sieve_segment(100, 122, small_primes(11)); }) == ErrorCode::insufficient_base);
  CHECK(code_of([] { sieve_segment(2, 20, small_primes(5)); }) == ErrorCode::domain);
  CHECK(code_of([] { sieve_segment(30, 20, small_primes(5)); }) == ErrorCode::domain);
}

TEST_CASE("segments match trial division on random ranges") {
  const auto base = base_primes_for(100'002);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::uint64_t lo = 3 + rng() % 99'990;
    std::uint64_t hi = lo + rng() % 700;
    hi = std::min<std::uint64_t>(hi, 100'000);
    if (hi < lo) hi = lo;
    INFO("range [" << lo << ", " << hi << ")");
    CHECK(sieve_segment(lo, hi, base).primes() == trial_primes(lo, hi));
  }
}

TEST_CASE("engine prime stream is independent of segment size") {
  const std::uint64_t n = 100'000;
  const auto base = base_primes_for(n);
  const auto expected = trial_primes(3, n);
  for (std::uint64_t seg : {16, 17, 64, 1000, 1 << 14}) {
    std::vector<std::uint64_t> got;
    Engine(base, {seg, 1}).for_each_prime_segment(3, n, [&](const Segment& s) {
      CHECK(s.hi() - s.lo() <= 2 * seg);
      const auto ps = s.primes();
      got.insert(got.end(), ps.begin(), ps.end());
      return true;
    });
    CHECK(got == expected);
  }
}

TEST_CASE("twin_pairs examples") {
  const auto base = base_primes_for(1000);
  CHECK(twin_pairs(100, 200, base) == std::vector<std::uint64_t>{101, 107, 137, 149, 179, 191, 197});
  CHECK(twin_pairs(3, 10, base) == std::vector<std::uint64_t>{3, 5});
  // lower bound below 3 is clamped
  CHECK(twin_pairs(0, 10, base) == std::vector<std::uint64_t>{3, 5});

  SUBCASE("pair straddling a cut is emitted exactly once") {
    std::vector<std::uint64_t> joined = twins_in_segment(100, 150, base);
    const auto right = twins_in_segment(150, 200, base);
    joined.insert(joined.end(), right.begin(), right.end());
    CHECK(joined == std::vector<std::uint64_t>{101, 107, 137, 149, 179, 191, 197});
    CHECK(twins_in_segment(100, 150, base).back() == 149);

    // hi - 1 and hi - 2 as lower members
    CHECK(twins_in_segment(140, 151, base) == std::vector<std::uint64_t>{149});
    CHECK(twins_in_segment(140, 150, base) == std::vector<std::uint64_t>{149});
    CHECK(twins_in_segment(140, 149, base).empty());
  }
}

TEST_CASE("twin stream matches oracle for every segment cut in [3, 2000)") {
  const auto base = base_primes_for(5000);
  const auto expected = oracle::naive_twins(3, 2000);
  for (std::uint64_t cut = 3; cut < 2000; ++cut) {
    auto got = twins_in_segment(3, cut, base);
    const auto right = twins_in_segment(cut, 2000, base);
    got.insert(got.end(), right.begin(), right.end());
    if (got != expected) {
      FAIL("mismatch at cut " << cut);
    }
  }
}

TEST_CASE("twin stream independent of segment size and worker count") {
  const std::uint64_t n = 1'000'000;
  const auto base = base_primes_for(n + 2);
  const auto expected = oracle::naive_twins(3, n);
  for (std::uint64_t seg : {1 << 10, 1 << 14, 1 << 18}) {
    for (unsigned workers : {1u, 2u, 8u}) {
      CAPTURE(seg);
      CAPTURE(workers);
      CHECK(twin_pairs(3, n, base, {seg, workers}) == expected);
    }
  }
}

TEST_CASE("emitted pairs are prime pairs, strictly ascending") {
  const std::uint64_t lo = (std::uint64_t{1} << 40) - 200'000;
  const std::uint64_t hi = (std::uint64_t{1} << 40) + 200'000;
  const auto base = base_primes_for(hi + 2);
  const auto twins = twin_pairs(lo, hi, base, {1 << 12, 4});
  REQUIRE(twins.size() > 100);
  for (std::size_t i = 0; i < twins.size(); ++i) {
    CHECK(oracle::is_prime_mr(twins[i]));
    CHECK(oracle::is_prime_mr(twins[i] + 2));
    if (i > 0) CHECK(twins[i - 1] < twins[i]);
  }
  // nothing missed: count candidates directly
  std::uint64_t direct = 0;
  for (std::uint64_t p = lo | 1; p < hi; p += 2) {
    if (oracle::is_prime_mr(p) && oracle::is_prime_mr(p + 2)) ++direct;
  }
  CHECK(direct == twins.size());
}

TEST_CASE("count_twins") {
  CHECK(count_twins(10) == 2);
  CHECK(count_twins(100) == oracle::naive_twins(3, 100).size());
  CHECK(count_twins(100) == 8);
  CHECK(count_twins(3) == 0);
  CHECK(count_twins(4) == 1);
  CHECK(count_twins(1'000'000) == oracle::naive_twins(3, 1'000'000).size());
  CHECK(count_twins(1'000'000, {1 << 12, 3}) == 8169);
  CHECK(code_of([] { count_twins(2); }) == ErrorCode::domain);
}

TEST_CASE("engine configuration is validated") {
  const auto base = small_primes(100);
  CHECK(code_of([&] { Engine(base, {8, 1}); }) == ErrorCode::config);
  CHECK(code_of([&] { Engine(base, {1024, 0}); }) == ErrorCode::config);
  CHECK(code_of([&] { twin_pairs(3, 20'000, base); }) == ErrorCode::insufficient_base);
}
