#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "arenstorf/accumulator.hpp"

namespace arenstorf::io {

inline constexpr int kStateFormatVersion = 1;

/// Everything needed to continue a run bit-identically.
///
/// On disk (JSON):
///   {
///     "crc32": "<8 hex digits>",            CRC-32 of payload.dump()
///     "payload": {
///       "format_version": 1,
///       "segment_size": <odd entries per segment>,
///       "next_lo": <first value not yet sieved>,
///       "sum_bits": "<16 hex>", "compensation_bits": "<16 hex>",
///       "pair_count": <twin pairs folded in>,
///       "schedule": {"start_exponent": k0, "end_exponent": k1},
///       "emitted": [{"N": .., "sum_bits": .., "compensation_bits": ..}, ...]
///     }
///   }
/// payload.dump() is nlohmann::json's compact form with sorted keys.
struct RunState {
  int format_version = kStateFormatVersion;
  std::uint64_t segment_size = sieve::kDefaultSegmentSize;
  Schedule schedule;
  RunProgress progress;

  friend bool operator==(const RunState&, const RunState&) = default;
};

std::uint32_t crc32(std::string_view bytes);

std::string serialize_state(const RunState& state);

/// Rejects bad JSON and checksum mismatches (corrupt_state), other format
/// versions (version_mismatch), and internally inconsistent progress.
/// Checkpoint mean/ratio are recomputed from the stored bits with `c2`.
RunState deserialize_state(std::string_view text, double c2 = constants::kTwinPrimeConstant);

void save_state(const std::filesystem::path& path, const RunState& state);
RunState load_state(const std::filesystem::path& path, double c2 = constants::kTwinPrimeConstant);

}  // namespace arenstorf::io
