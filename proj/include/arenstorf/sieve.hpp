#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace arenstorf::sieve {

/// Default segment length, counted in odd entries (bits). 2^18 bits = 32 KiB.
inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 18;
inline constexpr std::uint64_t kMinSegmentSize = 16;

/// All primes up to and including `limit`.
struct BasePrimes {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> primes;

  /// True when every composite below `hi` has a prime factor in `primes`.
  bool covers(std::uint64_t hi) const noexcept;
};

/// Plain odd-only sieve of [2, limit]. limit must lie in [2, 2^32).
BasePrimes small_primes(std::uint64_t limit);

/// Smallest base adequate for sieving values below `hi`.
BasePrimes base_primes_for(std::uint64_t hi);

/// Primality bits for the odd integers of [lo, hi). Bit k stands for
/// first_odd() + 2k.
class Segment {
 public:
  Segment() = default;
  Segment(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words, std::uint64_t bit_count);

  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }
  std::uint64_t first_odd() const noexcept { return lo_ | 1; }
  std::uint64_t bit_count() const noexcept { return bit_count_; }
  bool empty() const noexcept { return bit_count_ == 0; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// `value` must be odd and inside [lo, hi).
  bool is_prime(std::uint64_t value) const noexcept;

  std::uint64_t prime_count() const noexcept;
  std::vector<std::uint64_t> primes() const;

  /// Visits the primes in ascending order.
  template <class Fn>
  void for_each_prime(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const unsigned k = static_cast<unsigned>(__builtin_ctzll(bits));
        fn(first_odd() + 2 * (64 * w + k));
        bits &= bits - 1;
      }
    }
  }

  /// Appends every p in [lo, limit) with p and p + 2 both marked prime.
  /// Needs limit + 2 <= hi.
  void collect_twins(std::uint64_t limit, std::vector<std::uint64_t>& out) const;

 private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::uint64_t bit_count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Sieves [lo, hi). Requires lo >= 3 and base.covers(hi); lo == hi gives an
/// empty segment.
Segment sieve_segment(std::uint64_t lo, std::uint64_t hi, const BasePrimes& base);

/// Lower members p in [lo, hi) of twin pairs. The segment is sieved two values
/// past `hi` so a pair straddling `hi` is still seen.
std::vector<std::uint64_t> twins_in_segment(std::uint64_t lo, std::uint64_t hi, const BasePrimes& base);

struct EngineConfig {
  std::uint64_t segment_size = kDefaultSegmentSize;
  unsigned workers = 1;
};

void validate(const EngineConfig& config);

/// Splits [lo, hi) into segments and streams per-segment results in
/// ascending order regardless of the number of workers.
class Engine {
 public:
  using TwinSink = std::function<bool(std::uint64_t seg_lo, std::uint64_t seg_hi, std::span<const std::uint64_t> twins)>;
  using PrimeSink = std::function<bool(const Segment&)>;

  Engine(const BasePrimes& base, EngineConfig config);

  const EngineConfig& config() const noexcept { return config_; }
  std::uint64_t span_per_segment() const noexcept { return 2 * config_.segment_size; }

  /// Twin lower members in [lo, hi). The sink returns false to stop; the
  /// return value is the end of the last fully delivered segment.
  std::uint64_t for_each_twin_segment(std::uint64_t lo, std::uint64_t hi, const TwinSink& sink) const;

  /// Sieved segments covering [max(lo, 3), hi). 2 is never reported.
  std::uint64_t for_each_prime_segment(std::uint64_t lo, std::uint64_t hi, const PrimeSink& sink) const;

 private:
  const BasePrimes& base_;
  EngineConfig config_;
};

/// All twin lower members in [lo, hi).
std::vector<std::uint64_t> twin_pairs(std::uint64_t lo, std::uint64_t hi, const BasePrimes& base,
                                      EngineConfig config = {});

/// Number of p < n with p and p + 2 both prime.
std::uint64_t count_twins(std::uint64_t n, EngineConfig config = {});

}  // namespace arenstorf::sieve
