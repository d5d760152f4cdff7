#include "arenstorf/runner.hpp"

#include <cstdlib>
#include <new>
#include <string>

#include "arenstorf/checkpoint_csv.hpp"
#include "arenstorf/error.hpp"

namespace arenstorf {

namespace {

void check_exponent(int k, const char* what) {
  if (k < kMinExponent || k > kMaxExponent) {
    fail(ErrorCode::config, std::string(what) + " must lie in [" + std::to_string(kMinExponent) + ", " +
                                std::to_string(kMaxExponent) + "], got " + std::to_string(k));
  }
}

void check_workers(unsigned workers) {
  if (workers < 1 || workers > kMaxWorkers) {
    fail(ErrorCode::config, "workers must lie in [1, " + std::to_string(kMaxWorkers) + "]");
  }
}

std::filesystem::path default_output_for(const std::filesystem::path& state_path) {
  return state_path.parent_path() / "checkpoints.csv";
}

}  // namespace

void validate(const RunConfig& config) {
  check_exponent(config.start_exponent, "start exponent");
  check_exponent(config.end_exponent, "end exponent");
  if (config.end_exponent < config.start_exponent) {
    fail(ErrorCode::config, "end exponent " + std::to_string(config.end_exponent) + " is below start exponent " +
                                std::to_string(config.start_exponent));
  }
  check_workers(config.workers);
  sieve::validate(sieve::EngineConfig{config.segment_size, config.workers});
}

std::filesystem::path default_state_path() {
  const char* dir = std::getenv(kStateDirEnv);
  if (dir != nullptr && *dir != '\0') return std::filesystem::path(dir) / "arenstorf_state.json";
  return "arenstorf_state.json";
}

Runner::Runner(io::RunState state, unsigned workers, std::filesystem::path state_path,
               std::filesystem::path output_path)
    : state_(std::move(state)),
      workers_(workers),
      state_path_(std::move(state_path)),
      output_path_(std::move(output_path)) {}

Runner Runner::start(const RunConfig& config) {
  validate(config);
  io::RunState state;
  state.segment_size = config.segment_size;
  state.schedule = Schedule{config.start_exponent, config.end_exponent};
  auto state_path = config.state_path.empty() ? default_state_path() : config.state_path;
  auto output_path = config.output_path.empty() ? default_output_for(state_path) : config.output_path;
  return Runner(std::move(state), config.workers, std::move(state_path), std::move(output_path));
}

Runner Runner::resume(const ResumeOptions& options) {
  check_workers(options.workers);
  auto state_path = options.state_path.empty() ? default_state_path() : options.state_path;
  io::RunState state = io::load_state(state_path);

  if (options.segment_size && *options.segment_size != state.segment_size) {
    fail(ErrorCode::segment_mismatch, "state was written with segment size " + std::to_string(state.segment_size) +
                                          "; refusing to resume with " + std::to_string(*options.segment_size));
  }
  if (options.end_exponent) {
    check_exponent(*options.end_exponent, "end exponent");
    if (*options.end_exponent < state.schedule.end_exponent) {
      fail(ErrorCode::config, "cannot shrink the schedule from 2^" + std::to_string(state.schedule.end_exponent) +
                                  " to 2^" + std::to_string(*options.end_exponent));
    }
    state.schedule.end_exponent = *options.end_exponent;
  }
  auto output_path = options.output_path.empty() ? default_output_for(state_path) : options.output_path;
  return Runner(std::move(state), options.workers, std::move(state_path), std::move(output_path));
}

void Runner::persist(const io::RunState& state) const {
  io::write_file_atomic(output_path_, io::checkpoints_csv(state.progress.emitted));
  io::save_state(state_path_, state);
}

RunOutcome Runner::execute(const std::atomic<bool>* stop) {
  using Clock = std::chrono::steady_clock;
  persist(state_);

  io::RunState snapshot = state_;
  auto last_save = Clock::now();

  RunOptions options;
  options.engine = sieve::EngineConfig{state_.segment_size, workers_};
  options.stop = stop;
  options.on_checkpoint = [&](const RunProgress& progress) {
    snapshot.progress = progress;
    persist(snapshot);
    last_save = Clock::now();
  };
  options.on_segment = [&](const RunProgress& progress) {
    snapshot.progress = progress;
    if (Clock::now() - last_save >= save_interval) {
      persist(snapshot);
      last_save = Clock::now();
    }
  };

  bool complete = false;
  try {
    complete = advance(state_.schedule, state_.progress, options);
  } catch (const std::bad_alloc&) {
    state_ = snapshot;
    persist(state_);
    fail(ErrorCode::resource, "out of memory; progress saved at " + std::to_string(state_.progress.next_lo));
  }

  persist(state_);
  return complete ? RunOutcome::complete : RunOutcome::interrupted;
}

}  // namespace arenstorf
