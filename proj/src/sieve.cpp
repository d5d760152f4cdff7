#include "arenstorf/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "arenstorf/error.hpp"
#include "arenstorf/ordered_pipeline.hpp"

namespace arenstorf::sieve {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r < n) ++r;
  while (r > 0 && static_cast<u128>(r - 1) * (r - 1) >= n) --r;
  return r;
}

inline void clear_bit(std::uint64_t* words, std::uint64_t k) { words[k >> 6] &= ~(std::uint64_t{1} << (k & 63)); }

}  // namespace

bool BasePrimes::covers(std::uint64_t hi) const noexcept {
  return static_cast<u128>(limit) * limit >= hi;
}

BasePrimes small_primes(std::uint64_t limit) {
  if (limit < 2) fail(ErrorCode::domain, "small_primes: limit must be at least 2, got " + std::to_string(limit));
  if (limit >= (std::uint64_t{1} << 32)) fail(ErrorCode::domain, "small_primes: limit must be below 2^32");

  BasePrimes out;
  out.limit = limit;
  out.primes.push_back(2);
  // index i <-> 2i + 1
  const std::uint64_t n = (limit - 1) / 2 + 1;
  std::vector<bool> composite(n, false);
  composite[0] = true;
  for (std::uint64_t i = 1; i < n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = (p * p) / 2; j < n; j += p) composite[j] = true;
  }
  return out;
}

BasePrimes base_primes_for(std::uint64_t hi) { return small_primes(std::max<std::uint64_t>(2, ceil_sqrt(hi))); }

Segment::Segment(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words, std::uint64_t bit_count)
    : lo_(lo), hi_(hi), bit_count_(bit_count), words_(std::move(words)) {}

bool Segment::is_prime(std::uint64_t value) const noexcept {
  const std::uint64_t k = (value - first_odd()) / 2;
  return (words_[k >> 6] >> (k & 63)) & 1;
}

std::uint64_t Segment::prime_count() const noexcept {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return n;
}

std::vector<std::uint64_t> Segment::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(prime_count());
  for_each_prime([&](std::uint64_t p) { out.push_back(p); });
  return out;
}

void Segment::collect_twins(std::uint64_t limit, std::vector<std::uint64_t>& out) const {
  const std::uint64_t base = first_odd();
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t next = w + 1 < words_.size() ? words_[w + 1] : 0;
    std::uint64_t pairs = words_[w] & ((words_[w] >> 1) | (next << 63));
    while (pairs != 0) {
      const unsigned k = static_cast<unsigned>(__builtin_ctzll(pairs));
      const std::uint64_t p = base + 2 * (64 * w + k);
      if (p >= limit) return;
      out.push_back(p);
      pairs &= pairs - 1;
    }
  }
}

Segment sieve_segment(std::uint64_t lo, std::uint64_t hi, const BasePrimes& base) {
  if (lo < 3) fail(ErrorCode::domain, "sieve_segment: lo must be at least 3");
  if (hi < lo) fail(ErrorCode::domain, "sieve_segment: hi must not be below lo");
  if (!base.covers(hi)) {
    fail(ErrorCode::insufficient_base, "sieve_segment: base primes up to " + std::to_string(base.limit) +
                                           " cannot sieve below " + std::to_string(hi));
  }

  const std::uint64_t first_odd = lo | 1;
  const std::uint64_t nbits = hi > first_odd ? (hi - first_odd + 1) / 2 : 0;
  std::vector<std::uint64_t> words((nbits + 63) / 64, ~std::uint64_t{0});
  if (nbits % 64 != 0) words.back() = (std::uint64_t{1} << (nbits % 64)) - 1;

  std::uint64_t* bits = words.data();
  for (const std::uint32_t p32 : base.primes) {
    const std::uint64_t p = p32;
    if (p == 2) continue;
    const std::uint64_t square = p * p;
    if (square >= hi) break;
    std::uint64_t start = (first_odd + p - 1) / p * p;
    if ((start & 1) == 0) start += p;
    start = std::max(start, square);
    for (std::uint64_t k = (start - first_odd) / 2; k < nbits; k += p) clear_bit(bits, k);
  }
  return Segment(lo, hi, std::move(words), nbits);
}

std::vector<std::uint64_t> twins_in_segment(std::uint64_t lo, std::uint64_t hi, const BasePrimes& base) {
  std::vector<std::uint64_t> out;
  lo = std::max<std::uint64_t>(lo, 3);
  if (lo >= hi) return out;
  sieve_segment(lo, hi + 2, base).collect_twins(hi, out);
  return out;
}

void validate(const EngineConfig& config) {
  if (config.segment_size < kMinSegmentSize) {
    fail(ErrorCode::config, "segment size must be at least " + std::to_string(kMinSegmentSize));
  }
  if (config.segment_size > (std::uint64_t{1} << 32)) fail(ErrorCode::config, "segment size must not exceed 2^32");
  if (config.workers == 0) fail(ErrorCode::config, "at least one worker is required");
}

Engine::Engine(const BasePrimes& base, EngineConfig config) : base_(base), config_(config) { validate(config_); }

namespace {

struct TwinBatch {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> twins;
};

// Segments sit on the absolute grid of multiples of `span`, clipped to [lo, hi).
std::size_t segment_count(std::uint64_t lo, std::uint64_t hi, std::uint64_t span) {
  return lo >= hi ? 0 : static_cast<std::size_t>((hi - 1) / span - lo / span + 1);
}

std::pair<std::uint64_t, std::uint64_t> segment_bounds(std::uint64_t lo, std::uint64_t hi, std::uint64_t span,
                                                       std::size_t i) {
  const std::uint64_t block = lo / span + i;
  return {std::max(lo, block * span), std::min(hi, (block + 1) * span)};
}

}  // namespace

std::uint64_t Engine::for_each_twin_segment(std::uint64_t lo, std::uint64_t hi, const TwinSink& sink) const {
  lo = std::max<std::uint64_t>(lo, 3);
  if (lo >= hi) return lo;
  if (!base_.covers(hi + 2)) {
    fail(ErrorCode::insufficient_base, "twin search below " + std::to_string(hi) + " needs a larger base");
  }
  const std::uint64_t span = span_per_segment();
  std::uint64_t delivered = lo;
  ordered_for_each(
      segment_count(lo, hi, span), config_.workers,
      [&](std::size_t i) {
        TwinBatch batch;
        std::tie(batch.lo, batch.hi) = segment_bounds(lo, hi, span, i);
        batch.twins = twins_in_segment(batch.lo, batch.hi, base_);
        return batch;
      },
      [&](std::size_t, TwinBatch&& batch) {
        const bool more = sink(batch.lo, batch.hi, batch.twins);
        delivered = batch.hi;
        return more;
      });
  return delivered;
}

std::uint64_t Engine::for_each_prime_segment(std::uint64_t lo, std::uint64_t hi, const PrimeSink& sink) const {
  lo = std::max<std::uint64_t>(lo, 3);
  if (lo >= hi) return lo;
  if (!base_.covers(hi)) {
    fail(ErrorCode::insufficient_base, "prime search below " + std::to_string(hi) + " needs a larger base");
  }
  const std::uint64_t span = span_per_segment();
  std::uint64_t delivered = lo;
  ordered_for_each(
      segment_count(lo, hi, span), config_.workers,
      [&](std::size_t i) {
        const auto [seg_lo, seg_hi] = segment_bounds(lo, hi, span, i);
        return sieve_segment(seg_lo, seg_hi, base_);
      },
      [&](std::size_t, Segment&& segment) {
        const bool more = sink(segment);
        delivered = segment.hi();
        return more;
      });
  return delivered;
}

std::vector<std::uint64_t> twin_pairs(std::uint64_t lo, std::uint64_t hi, const BasePrimes& base,
                                      EngineConfig config) {
  std::vector<std::uint64_t> out;
  Engine(base, config).for_each_twin_segment(lo, hi, [&](std::uint64_t, std::uint64_t, auto twins) {
    out.insert(out.end(), twins.begin(), twins.end());
    return true;
  });
  return out;
}

std::uint64_t count_twins(std::uint64_t n, EngineConfig config) {
  if (n < 3) fail(ErrorCode::domain, "count_twins: n must be at least 3");
  const BasePrimes base = base_primes_for(n + 2);
  std::uint64_t count = 0;
  Engine(base, config).for_each_twin_segment(3, n, [&](std::uint64_t, std::uint64_t, auto twins) {
    count += twins.size();
    return true;
  });
  return count;
}

}  // namespace arenstorf::sieve
