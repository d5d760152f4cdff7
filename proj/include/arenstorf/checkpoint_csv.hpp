#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "arenstorf/accumulator.hpp"

namespace arenstorf::io {

/// Header of the checkpoint CSV written by `run`.
inline constexpr const char* kCheckpointCsvHeader = "N,sum,mean,ratio,sum_hex,comp_hex";

/// 16 lowercase hex digits of the IEEE-754 bit pattern.
std::string double_to_hex(double v);
double double_from_hex(const std::string& text);

/// One row per checkpoint: N as an integer, sum/mean/ratio with 12
/// significant digits, then the exact value and compensation bit patterns.
/// LF line endings.
void write_checkpoints_csv(std::ostream& out, std::span<const Checkpoint> checkpoints);
std::string checkpoints_csv(std::span<const Checkpoint> checkpoints);

/// Header-driven reader. N plus either (sum_hex, comp_hex) or mean is
/// required. With the hex columns the sum is restored bit-exactly and mean
/// and ratio are recomputed with `c2`; otherwise the decimal columns are
/// taken as printed (a missing ratio is mean / c2, a missing sum is mean * N).
std::vector<Checkpoint> read_checkpoints_csv(std::istream& in, double c2 = constants::kTwinPrimeConstant);
std::vector<Checkpoint> read_checkpoints_csv(const std::filesystem::path& path,
                                             double c2 = constants::kTwinPrimeConstant);

/// write-temp, fsync, rename. The directory entry is synced as well.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace arenstorf::io
