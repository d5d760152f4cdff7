#include "arenstorf/accumulator.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "arenstorf/error.hpp"

namespace arenstorf {

double twin_term(std::uint64_t p) noexcept {
  return std::log(static_cast<double>(p)) * std::log(static_cast<double>(p + 2));
}

CompensatedSum accumulate(CompensatedSum sum, std::uint64_t p) noexcept {
  sum.add(twin_term(p));
  return sum;
}

void Schedule::validate() const {
  if (start_exponent < 1) fail(ErrorCode::config, "schedule start exponent must be at least 1");
  if (end_exponent < start_exponent) {
    fail(ErrorCode::config, "schedule end exponent " + std::to_string(end_exponent) + " is below start exponent " +
                                std::to_string(start_exponent));
  }
  if (end_exponent > 63) fail(ErrorCode::config, "schedule end exponent must not exceed 63");
}

int Checkpoint::exponent() const noexcept { return n == 0 ? -1 : 63 - std::countl_zero(n); }

MeanRatio mean_and_ratio(const CompensatedSum& sum, std::uint64_t n, double c2) {
  if (n == 0) fail(ErrorCode::domain, "mean_and_ratio: N must be positive");
  if (!(c2 > 0)) fail(ErrorCode::domain, "mean_and_ratio: c2 must be positive");
  MeanRatio out;
  out.mean = sum.total() / static_cast<double>(n);
  out.ratio = out.mean / c2;
  return out;
}

Checkpoint make_checkpoint(std::uint64_t n, const CompensatedSum& sum, double c2) {
  const MeanRatio mr = mean_and_ratio(sum, n, c2);
  return Checkpoint{n, sum, mr.mean, mr.ratio};
}

namespace {

void check_progress(const Schedule& schedule, const RunProgress& progress) {
  if (progress.emitted.size() > schedule.size()) fail(ErrorCode::corrupt_state, "more checkpoints than schedule points");
  for (std::size_t i = 0; i < progress.emitted.size(); ++i) {
    if (progress.emitted[i].n != schedule.point(i)) {
      fail(ErrorCode::corrupt_state, "emitted checkpoint does not match schedule point " + std::to_string(i));
    }
    if (progress.emitted[i].n > progress.next_lo) {
      fail(ErrorCode::corrupt_state, "checkpoint beyond the sieved range");
    }
  }
  const std::size_t next = progress.emitted.size();
  if (next < schedule.size() && schedule.point(next) < progress.next_lo) {
    fail(ErrorCode::corrupt_state, "schedule point below next_lo was never emitted");
  }
}

}  // namespace

bool advance(const Schedule& schedule, RunProgress& progress, const RunOptions& options) {
  schedule.validate();
  check_progress(schedule, progress);

  std::size_t next = progress.emitted.size();
  auto emit_through = [&](std::uint64_t limit) {
    while (next < schedule.size() && schedule.point(next) <= limit) {
      progress.next_lo = schedule.point(next);
      progress.emitted.push_back(make_checkpoint(progress.next_lo, progress.sum, options.c2));
      ++next;
      if (options.on_checkpoint) options.on_checkpoint(progress);
    }
  };

  emit_through(progress.next_lo);
  const std::uint64_t target = schedule.last_point();
  if (progress.next_lo >= target) return true;

  const sieve::BasePrimes base = sieve::base_primes_for(target + 2);
  const sieve::Engine engine(base, options.engine);
  const std::uint64_t reached = engine.for_each_twin_segment(
      progress.next_lo, target, [&](std::uint64_t, std::uint64_t seg_hi, std::span<const std::uint64_t> twins) {
        for (const std::uint64_t p : twins) {
          if (next < schedule.size() && p >= schedule.point(next)) emit_through(p);
          progress.sum.add(twin_term(p));
          ++progress.pair_count;
        }
        emit_through(seg_hi);
        progress.next_lo = seg_hi;
        if (options.on_segment) options.on_segment(progress);
        return !(options.stop && options.stop->load(std::memory_order_relaxed));
      });
  return reached >= target;
}

std::vector<Checkpoint> run(const Schedule& schedule, const RunOptions& options) {
  RunProgress progress;
  advance(schedule, progress, options);
  return std::move(progress.emitted);
}

}  // namespace arenstorf
