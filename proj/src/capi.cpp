#include <atomic>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "arenstorf/arenstorf.h"
#include "arenstorf/checkpoint_csv.hpp"
#include "arenstorf/constants.hpp"
#include "arenstorf/error.hpp"
#include "arenstorf/fit.hpp"
#include "arenstorf/runner.hpp"

struct arenstorf_checkpoints {
  std::vector<arenstorf::Checkpoint> items;
};

struct arenstorf_run {
  arenstorf::Runner runner;
  std::string state_path;
  std::string output_path;
};

namespace {

thread_local std::string last_error;
std::atomic<bool> stop_requested{false};
static_assert(std::atomic<bool>::is_always_lock_free);

arenstorf_status to_status(arenstorf::ErrorCode code) {
  using arenstorf::ErrorCode;
  switch (code) {
    case ErrorCode::domain: return ARENSTORF_E_DOMAIN;
    case ErrorCode::insufficient_base: return ARENSTORF_E_INSUFFICIENT_BASE;
    case ErrorCode::config: return ARENSTORF_E_CONFIG;
    case ErrorCode::io: return ARENSTORF_E_IO;
    case ErrorCode::corrupt_state: return ARENSTORF_E_CORRUPT_STATE;
    case ErrorCode::version_mismatch: return ARENSTORF_E_VERSION_MISMATCH;
    case ErrorCode::segment_mismatch: return ARENSTORF_E_SEGMENT_MISMATCH;
    case ErrorCode::fit: return ARENSTORF_E_FIT;
    case ErrorCode::parse: return ARENSTORF_E_PARSE;
    case ErrorCode::interrupted: return ARENSTORF_E_INTERRUPTED;
    case ErrorCode::resource: return ARENSTORF_E_RESOURCE;
  }
  return ARENSTORF_E_INTERNAL;
}

arenstorf_status set_error(arenstorf_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class Fn>
arenstorf_status guarded(Fn&& fn) noexcept {
  last_error.clear();
  try {
    return fn();
  } catch (const arenstorf::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ARENSTORF_E_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ARENSTORF_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(ARENSTORF_E_INTERNAL, "unknown exception");
  }
}

#define ARENSTORF_REQUIRE(cond, what) \
  if (!(cond)) return set_error(ARENSTORF_E_INVALID_ARGUMENT, what)

arenstorf_checkpoint to_c(const arenstorf::Checkpoint& c) {
  return {c.n, c.sum.value, c.sum.compensation, c.mean, c.ratio};
}

arenstorf::sieve::EngineConfig engine_for(unsigned workers) {
  return {arenstorf::sieve::kDefaultSegmentSize, workers == 0 ? 1u : workers};
}

}  // namespace

extern "C" {

const char* arenstorf_status_name(arenstorf_status status) {
  switch (status) {
    case ARENSTORF_OK: return "ok";
    case ARENSTORF_E_DOMAIN: return "domain error";
    case ARENSTORF_E_INSUFFICIENT_BASE: return "insufficient base primes";
    case ARENSTORF_E_CONFIG: return "configuration error";
    case ARENSTORF_E_IO: return "i/o error";
    case ARENSTORF_E_CORRUPT_STATE: return "corrupt state";
    case ARENSTORF_E_VERSION_MISMATCH: return "state version mismatch";
    case ARENSTORF_E_SEGMENT_MISMATCH: return "segment size mismatch";
    case ARENSTORF_E_FIT: return "fit error";
    case ARENSTORF_E_PARSE: return "parse error";
    case ARENSTORF_E_INTERRUPTED: return "interrupted";
    case ARENSTORF_E_RESOURCE: return "resource exhausted";
    case ARENSTORF_E_INVALID_ARGUMENT: return "invalid argument";
    case ARENSTORF_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* arenstorf_last_error(void) { return last_error.c_str(); }

const char* arenstorf_version(void) { return "1.0.0"; }

arenstorf_status arenstorf_checkpoints_read_csv(const char* path, arenstorf_checkpoints** out) {
  ARENSTORF_REQUIRE(path != nullptr && out != nullptr, "path and out must be non-null");
  return guarded([&] {
    *out = new arenstorf_checkpoints{arenstorf::io::read_checkpoints_csv(std::filesystem::path(path))};
    return ARENSTORF_OK;
  });
}

size_t arenstorf_checkpoints_size(const arenstorf_checkpoints* list) { return list ? list->items.size() : 0; }

arenstorf_status arenstorf_checkpoints_get(const arenstorf_checkpoints* list, size_t index,
                                           arenstorf_checkpoint* out) {
  ARENSTORF_REQUIRE(list != nullptr && out != nullptr, "list and out must be non-null");
  ARENSTORF_REQUIRE(index < list->items.size(), "checkpoint index out of range");
  *out = to_c(list->items[index]);
  return ARENSTORF_OK;
}

void arenstorf_checkpoints_destroy(arenstorf_checkpoints* list) { delete list; }

void arenstorf_run_config_init(arenstorf_run_config* config) {
  if (config == nullptr) return;
  config->start_exponent = 22;
  config->end_exponent = 22;
  config->segment_size = arenstorf::sieve::kDefaultSegmentSize;
  config->workers = 1;
  config->state_path = nullptr;
  config->output_path = nullptr;
}

void arenstorf_resume_options_init(arenstorf_resume_options* options) {
  if (options == nullptr) return;
  options->state_path = nullptr;
  options->output_path = nullptr;
  options->end_exponent = 0;
  options->segment_size = 0;
  options->workers = 1;
}

namespace {

arenstorf_run* wrap(arenstorf::Runner runner) {
  auto* run = new arenstorf_run{std::move(runner), {}, {}};
  run->state_path = run->runner.state_path().string();
  run->output_path = run->runner.output_path().string();
  return run;
}

}  // namespace

arenstorf_status arenstorf_run_create(const arenstorf_run_config* config, arenstorf_run** out) {
  ARENSTORF_REQUIRE(config != nullptr && out != nullptr, "config and out must be non-null");
  return guarded([&] {
    arenstorf::RunConfig cfg;
    cfg.start_exponent = config->start_exponent;
    cfg.end_exponent = config->end_exponent;
    cfg.segment_size = config->segment_size;
    cfg.workers = config->workers;
    if (config->state_path) cfg.state_path = config->state_path;
    if (config->output_path) cfg.output_path = config->output_path;
    *out = wrap(arenstorf::Runner::start(cfg));
    return ARENSTORF_OK;
  });
}

arenstorf_status arenstorf_run_resume(const arenstorf_resume_options* options, arenstorf_run** out) {
  ARENSTORF_REQUIRE(options != nullptr && out != nullptr, "options and out must be non-null");
  return guarded([&] {
    arenstorf::ResumeOptions opts;
    if (options->state_path) opts.state_path = options->state_path;
    if (options->output_path) opts.output_path = options->output_path;
    if (options->end_exponent != 0) opts.end_exponent = options->end_exponent;
    if (options->segment_size != 0) opts.segment_size = options->segment_size;
    opts.workers = options->workers;
    *out = wrap(arenstorf::Runner::resume(opts));
    return ARENSTORF_OK;
  });
}

arenstorf_status arenstorf_run_execute(arenstorf_run* run) {
  ARENSTORF_REQUIRE(run != nullptr, "run must be non-null");
  return guarded([&] {
    if (run->runner.execute(&stop_requested) == arenstorf::RunOutcome::interrupted) {
      return set_error(ARENSTORF_E_INTERRUPTED,
                       "interrupted; state saved at " + std::to_string(run->runner.state().progress.next_lo));
    }
    return ARENSTORF_OK;
  });
}

size_t arenstorf_run_checkpoint_count(const arenstorf_run* run) {
  return run ? run->runner.state().progress.emitted.size() : 0;
}

arenstorf_status arenstorf_run_checkpoint(const arenstorf_run* run, size_t index, arenstorf_checkpoint* out) {
  ARENSTORF_REQUIRE(run != nullptr && out != nullptr, "run and out must be non-null");
  const auto& emitted = run->runner.state().progress.emitted;
  ARENSTORF_REQUIRE(index < emitted.size(), "checkpoint index out of range");
  *out = to_c(emitted[index]);
  return ARENSTORF_OK;
}

uint64_t arenstorf_run_next_lo(const arenstorf_run* run) { return run ? run->runner.state().progress.next_lo : 0; }

uint64_t arenstorf_run_pair_count(const arenstorf_run* run) {
  return run ? run->runner.state().progress.pair_count : 0;
}

const char* arenstorf_run_state_path(const arenstorf_run* run) { return run ? run->state_path.c_str() : ""; }

const char* arenstorf_run_output_path(const arenstorf_run* run) { return run ? run->output_path.c_str() : ""; }

void arenstorf_run_destroy(arenstorf_run* run) { delete run; }

void arenstorf_request_stop(void) { stop_requested.store(true, std::memory_order_relaxed); }

void arenstorf_clear_stop(void) { stop_requested.store(false, std::memory_order_relaxed); }

double arenstorf_twin_constant_reference(void) { return arenstorf::constants::kTwinPrimeConstant; }

arenstorf_status arenstorf_twin_constant(uint64_t prime_limit, unsigned workers, arenstorf_c2_estimate* out) {
  ARENSTORF_REQUIRE(out != nullptr, "out must be non-null");
  return guarded([&] {
    const auto est = arenstorf::constants::twin_constant(prime_limit, engine_for(workers));
    *out = {est.value, est.tail_bound, est.prime_limit};
    return ARENSTORF_OK;
  });
}

arenstorf_status arenstorf_brun(uint64_t x, unsigned workers, arenstorf_brun_estimate* out) {
  ARENSTORF_REQUIRE(out != nullptr, "out must be non-null");
  return guarded([&] {
    const auto est =
        arenstorf::constants::brun_estimate(x, arenstorf::constants::kTwinPrimeConstant, engine_for(workers));
    *out = {est.x, est.partial, est.extrapolated, est.c2};
    return ARENSTORF_OK;
  });
}

arenstorf_status arenstorf_count_twins(uint64_t n, unsigned workers, uint64_t* out) {
  ARENSTORF_REQUIRE(out != nullptr, "out must be non-null");
  return guarded([&] {
    *out = arenstorf::sieve::count_twins(n, engine_for(workers));
    return ARENSTORF_OK;
  });
}

arenstorf_status arenstorf_fit(const arenstorf_checkpoints* list, int k_min, int k_max, arenstorf_fit_result* out) {
  ARENSTORF_REQUIRE(list != nullptr && out != nullptr, "list and out must be non-null");
  return guarded([&] {
    const auto fit = arenstorf::fit::windowed_fit(list->items, k_min, k_max);
    *out = {fit.intercept, fit.slope, fit.residual_rms, fit.n_points};
    return ARENSTORF_OK;
  });
}

arenstorf_status arenstorf_plot_format(const arenstorf_checkpoints* list, const arenstorf_fit_result* fit,
                                       char* buffer, size_t capacity, size_t* needed) {
  ARENSTORF_REQUIRE(list != nullptr && needed != nullptr, "list and needed must be non-null");
  ARENSTORF_REQUIRE(buffer != nullptr || capacity == 0, "buffer is null but capacity is not zero");
  return guarded([&] {
    std::optional<arenstorf::fit::FitResult> f;
    if (fit) f = arenstorf::fit::FitResult{fit->intercept, fit->slope, fit->residual_rms, fit->n_points};
    std::ostringstream os;
    arenstorf::fit::write_plot_tsv(os, arenstorf::fit::emit_plot_data(list->items, f));
    const std::string text = os.str();
    *needed = text.size();
    if (capacity > text.size()) std::memcpy(buffer, text.c_str(), text.size() + 1);
    return ARENSTORF_OK;
  });
}

}  // extern "C"
