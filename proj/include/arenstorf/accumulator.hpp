#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "arenstorf/constants.hpp"
#include "arenstorf/sieve.hpp"

namespace arenstorf {

/// Running sum with an explicit error term; the represented total is
/// value + compensation (Kahan-Babuska / Neumaier update).
struct CompensatedSum {
  double value = 0.0;
  double compensation = 0.0;

  void add(double term) noexcept {
    const double t = value + term;
    if (std::abs(value) >= std::abs(term)) {
      compensation += (value - t) + term;
    } else {
      compensation += (term - t) + value;
    }
    value = t;
  }

  double total() const noexcept { return value + compensation; }

  friend bool operator==(const CompensatedSum&, const CompensatedSum&) = default;
};

/// ln(p) * ln(p + 2).
double twin_term(std::uint64_t p) noexcept;

/// `sum` advanced by the contribution of the twin pair with lower member p.
CompensatedSum accumulate(CompensatedSum sum, std::uint64_t p) noexcept;

/// Checkpoints at N = 2^k for start_exponent <= k <= end_exponent.
struct Schedule {
  int start_exponent = 22;
  int end_exponent = 22;

  void validate() const;
  std::size_t size() const noexcept { return static_cast<std::size_t>(end_exponent - start_exponent + 1); }
  std::uint64_t point(std::size_t index) const noexcept {
    return std::uint64_t{1} << (start_exponent + static_cast<int>(index));
  }
  std::uint64_t last_point() const noexcept { return std::uint64_t{1} << end_exponent; }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct Checkpoint {
  std::uint64_t n = 0;
  CompensatedSum sum;
  double mean = 0.0;
  double ratio = 0.0;

  /// floor(log2 n).
  int exponent() const noexcept;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct MeanRatio {
  double mean = 0.0;
  double ratio = 0.0;
};

/// mean = (value + compensation) / n, ratio = mean / c2.
MeanRatio mean_and_ratio(const CompensatedSum& sum, std::uint64_t n, double c2);

Checkpoint make_checkpoint(std::uint64_t n, const CompensatedSum& sum, double c2 = constants::kTwinPrimeConstant);

/// Exact position of a run: every twin pair with p < next_lo has been added.
/// `emitted` holds the schedule points N <= next_lo, in order.
struct RunProgress {
  std::uint64_t next_lo = 0;
  CompensatedSum sum;
  std::uint64_t pair_count = 0;
  std::vector<Checkpoint> emitted;

  friend bool operator==(const RunProgress&, const RunProgress&) = default;
};

struct RunOptions {
  sieve::EngineConfig engine;
  double c2 = constants::kTwinPrimeConstant;
  /// Called right after each checkpoint is appended; progress.next_lo equals
  /// the checkpoint's N at that moment.
  std::function<void(const RunProgress&)> on_checkpoint;
  /// Called after each segment has been folded in.
  std::function<void(const RunProgress&)> on_segment;
  /// Polled between segments.
  const std::atomic<bool>* stop = nullptr;
};

/// Continues `progress` up to the schedule's last point. Returns false when
/// stopped early; `progress` then sits on a segment boundary.
bool advance(const Schedule& schedule, RunProgress& progress, const RunOptions& options = {});

/// Fresh run over the whole schedule.
std::vector<Checkpoint> run(const Schedule& schedule, const RunOptions& options = {});

}  // namespace arenstorf
