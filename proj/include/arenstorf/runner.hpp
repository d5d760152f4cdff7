#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "arenstorf/run_state.hpp"

namespace arenstorf {

inline constexpr int kMinExponent = 10;
inline constexpr int kMaxExponent = 63;
inline constexpr unsigned kMaxWorkers = 256;

/// Name of the environment variable holding the default state directory.
inline constexpr const char* kStateDirEnv = "ARENSTORF_STATE_DIR";

struct RunConfig {
  int start_exponent = 22;
  int end_exponent = 22;
  std::uint64_t segment_size = sieve::kDefaultSegmentSize;
  unsigned workers = 1;
  std::filesystem::path state_path;
  std::filesystem::path output_path;
};

void validate(const RunConfig& config);

/// $ARENSTORF_STATE_DIR/arenstorf_state.json, or ./arenstorf_state.json.
std::filesystem::path default_state_path();

struct ResumeOptions {
  std::filesystem::path state_path;
  std::filesystem::path output_path;
  /// Extends the schedule when set; it may not shrink.
  std::optional<int> end_exponent;
  /// When set it must equal the stored segment size.
  std::optional<std::uint64_t> segment_size;
  unsigned workers = 1;
};

enum class RunOutcome { complete, interrupted };

/// Drives a checkpointed run: owns the state, writes the state file and the
/// checkpoint CSV atomically after every checkpoint (and periodically in
/// between), and on interruption leaves a state file that resumes exactly.
class Runner {
 public:
  static Runner start(const RunConfig& config);
  /// Loads and validates a state file. Nothing is written here.
  static Runner resume(const ResumeOptions& options);

  RunOutcome execute(const std::atomic<bool>* stop = nullptr);

  const io::RunState& state() const noexcept { return state_; }
  const std::filesystem::path& state_path() const noexcept { return state_path_; }
  const std::filesystem::path& output_path() const noexcept { return output_path_; }

  /// Interval between saves that are not triggered by a checkpoint.
  std::chrono::seconds save_interval{60};

 private:
  Runner(io::RunState state, unsigned workers, std::filesystem::path state_path, std::filesystem::path output_path);
  void persist(const io::RunState& state) const;

  io::RunState state_;
  unsigned workers_;
  std::filesystem::path state_path_;
  std::filesystem::path output_path_;
};

}  // namespace arenstorf
