// arenstorf: command-line front end over the C API.
//
//   arenstorf run    --start-exp 22 --end-exp 26 [--workers 4] [--state f] [--output csv]
//   arenstorf resume --state f [--end-exp 30] [--segment-size n] [--workers n] [--output csv]
//   arenstorf c2     --prime-limit 1e8
//   arenstorf brun   --max 1e6
//   arenstorf fit    --input table1.csv [--window 32:40]
//   arenstorf plot   --input table1.csv [--window 22:40] [--output plot.tsv]

#include <csignal>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "arenstorf/arenstorf.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitError = 1;
constexpr int kExitInterrupted = 130;

struct CliError : std::runtime_error {
  CliError(arenstorf_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  arenstorf_status status;
};

void check(arenstorf_status status) {
  if (status != ARENSTORF_OK) {
    std::string msg = arenstorf_status_name(status);
    const std::string detail = arenstorf_last_error();
    if (!detail.empty()) msg += ": " + detail;
    throw CliError(status, msg);
  }
}

// Accepts plain integers, 1e8 and 10^8 style values.
std::uint64_t parse_count(const std::string& text) {
  const auto caret = text.find('^');
  if (caret != std::string::npos) {
    const double base = std::stod(text.substr(0, caret));
    const double exp = std::stod(text.substr(caret + 1));
    const double v = std::pow(base, exp);
    if (v < 0 || v >= 18446744073709551616.0 || v != std::floor(v)) throw CLI::ValidationError("bad count " + text);
    return static_cast<std::uint64_t>(v);
  }
  if (text.find_first_of("eE.") != std::string::npos) {
    const double v = std::stod(text);
    if (v < 0 || v >= 18446744073709551616.0 || v != std::floor(v)) throw CLI::ValidationError("bad count " + text);
    return static_cast<std::uint64_t>(v);
  }
  std::size_t used = 0;
  const unsigned long long v = std::stoull(text, &used);
  if (used != text.size()) throw CLI::ValidationError("bad count " + text);
  return v;
}

struct Window {
  int k_min = 0;
  int k_max = 0;
};

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--window expects k_min:k_max, got " + text);
  Window w{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  if (w.k_max < w.k_min) throw CLI::ValidationError("--window upper exponent is below the lower one");
  return w;
}

struct Checkpoints {
  std::unique_ptr<arenstorf_checkpoints, decltype(&arenstorf_checkpoints_destroy)> handle{
      nullptr, &arenstorf_checkpoints_destroy};

  explicit Checkpoints(const std::string& path) {
    arenstorf_checkpoints* raw = nullptr;
    check(arenstorf_checkpoints_read_csv(path.c_str(), &raw));
    handle.reset(raw);
  }

  // Full exponent range spanned by the file.
  Window span() const {
    Window w{64, -1};
    for (std::size_t i = 0; i < arenstorf_checkpoints_size(handle.get()); ++i) {
      arenstorf_checkpoint c;
      check(arenstorf_checkpoints_get(handle.get(), i, &c));
      const int k = 63 - __builtin_clzll(c.n);
      w.k_min = std::min(w.k_min, k);
      w.k_max = std::max(w.k_max, k);
    }
    return w;
  }
};

using RunHandle = std::unique_ptr<arenstorf_run, decltype(&arenstorf_run_destroy)>;

int finish_run(RunHandle run) {
  const arenstorf_status status = arenstorf_run_execute(run.get());
  const std::size_t n = arenstorf_run_checkpoint_count(run.get());
  std::printf("%-16s %-20s %-14s %-14s\n", "N", "sum", "mean", "ratio");
  for (std::size_t i = 0; i < n; ++i) {
    arenstorf_checkpoint c;
    check(arenstorf_run_checkpoint(run.get(), i, &c));
    std::printf("%-16llu %-20.12g %-14.10f %-14.11f\n", static_cast<unsigned long long>(c.n),
                c.sum_value + c.sum_compensation, c.mean, c.ratio);
  }
  std::fprintf(stderr, "pairs: %llu  next_lo: %llu\nstate: %s\ncheckpoints: %s\n",
               static_cast<unsigned long long>(arenstorf_run_pair_count(run.get())),
               static_cast<unsigned long long>(arenstorf_run_next_lo(run.get())),
               arenstorf_run_state_path(run.get()), arenstorf_run_output_path(run.get()));
  if (status == ARENSTORF_E_INTERRUPTED) {
    std::fprintf(stderr, "interrupted: %s\n", arenstorf_last_error());
    return kExitInterrupted;
  }
  check(status);
  return 0;
}

void on_signal(int) { arenstorf_request_stop(); }

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twin-prime log(p)log(p+2) means, twin-prime and Brun constants, and limit fits"};
  app.require_subcommand(1);

  int start_exp = 22;
  int end_exp = 22;
  std::string segment_text;
  unsigned workers = 1;
  std::string state_path;
  std::string output_path;
  std::string prime_limit_text = "1e8";
  std::string max_text;
  std::string window_text;
  std::string input_path;

  auto* run = app.add_subcommand("run", "sieve and accumulate up to 2^end-exp, checkpointing at powers of two");
  run->add_option("--start-exp", start_exp, "first checkpoint exponent")->capture_default_str();
  run->add_option("--end-exp", end_exp, "last checkpoint exponent")->capture_default_str();
  run->add_option("--segment-size", segment_text, "odd entries per sieve segment (default 2^18)");
  run->add_option("--workers", workers, "sieve worker threads")->capture_default_str();
  run->add_option("--state", state_path, "state file (default $ARENSTORF_STATE_DIR/arenstorf_state.json)");
  run->add_option("--output", output_path, "checkpoint CSV (default: checkpoints.csv beside the state file)");

  auto* resume = app.add_subcommand("resume", "continue a run from its state file");
  resume->add_option("--state", state_path, "state file (default $ARENSTORF_STATE_DIR/arenstorf_state.json)");
  resume->add_option("--end-exp", end_exp, "extend the schedule to 2^end-exp");
  resume->add_option("--segment-size", segment_text, "must match the stored segment size");
  resume->add_option("--workers", workers, "sieve worker threads")->capture_default_str();
  resume->add_option("--output", output_path, "checkpoint CSV (default: checkpoints.csv beside the state file)");

  auto* c2 = app.add_subcommand("c2", "twin-prime constant from the truncated Euler product");
  c2->add_option("--prime-limit", prime_limit_text, "include primes up to this bound")->capture_default_str();
  c2->add_option("--workers", workers, "sieve worker threads")->capture_default_str();

  auto* brun = app.add_subcommand("brun", "Brun partial sum and its extrapolation");
  brun->add_option("--max", max_text, "sum twin pairs with lower member <= max")->required();
  brun->add_option("--workers", workers, "sieve worker threads")->capture_default_str();

  auto* fit = app.add_subcommand("fit", "least-squares fit of mean against 1/N");
  fit->add_option("--input", input_path, "checkpoint CSV")->required();
  fit->add_option("--window", window_text, "k_min:k_max exponent window (default: all rows)");

  auto* plot = app.add_subcommand("plot", "tab-separated (1/N, mean[, fitted]) table");
  plot->add_option("--input", input_path, "checkpoint CSV")->required();
  plot->add_option("--window", window_text, "fit window k_min:k_max; without it no fitted column is written");
  plot->add_option("--output", output_path, "TSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      arenstorf_run_config cfg;
      arenstorf_run_config_init(&cfg);
      cfg.start_exponent = start_exp;
      cfg.end_exponent = end_exp;
      if (!segment_text.empty()) cfg.segment_size = parse_count(segment_text);
      cfg.workers = workers;
      cfg.state_path = state_path.empty() ? nullptr : state_path.c_str();
      cfg.output_path = output_path.empty() ? nullptr : output_path.c_str();
      arenstorf_run* raw = nullptr;
      check(arenstorf_run_create(&cfg, &raw));
      return finish_run(RunHandle(raw, &arenstorf_run_destroy));
    }

    if (resume->parsed()) {
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      arenstorf_resume_options opts;
      arenstorf_resume_options_init(&opts);
      opts.state_path = state_path.empty() ? nullptr : state_path.c_str();
      opts.output_path = output_path.empty() ? nullptr : output_path.c_str();
      if (resume->count("--end-exp") > 0) opts.end_exponent = end_exp;
      if (!segment_text.empty()) opts.segment_size = parse_count(segment_text);
      opts.workers = workers;
      arenstorf_run* raw = nullptr;
      check(arenstorf_run_resume(&opts, &raw));
      return finish_run(RunHandle(raw, &arenstorf_run_destroy));
    }

    if (c2->parsed()) {
      arenstorf_c2_estimate est;
      check(arenstorf_twin_constant(parse_count(prime_limit_text), workers, &est));
      const double reference = arenstorf_twin_constant_reference();
      ordered_json out;
      out["prime_limit"] = est.prime_limit;
      out["value"] = est.value;
      out["tail_bound"] = est.tail_bound;
      out["reference"] = reference;
      out["abs_difference"] = std::fabs(est.value - reference);
      print_json(out);
      return 0;
    }

    if (brun->parsed()) {
      arenstorf_brun_estimate est;
      check(arenstorf_brun(parse_count(max_text), workers, &est));
      ordered_json out;
      out["x"] = est.x;
      out["partial"] = est.partial;
      out["extrapolated"] = est.extrapolated;
      out["c2"] = est.c2;
      print_json(out);
      return 0;
    }

    if (fit->parsed()) {
      Checkpoints list(input_path);
      const Window w = window_text.empty() ? list.span() : parse_window(window_text);
      arenstorf_fit_result r;
      check(arenstorf_fit(list.handle.get(), w.k_min, w.k_max, &r));
      ordered_json out;
      out["input"] = input_path;
      out["window"] = {w.k_min, w.k_max};
      out["n_points"] = r.n_points;
      out["intercept"] = r.intercept;
      out["slope"] = r.slope;
      out["residual_rms"] = r.residual_rms;
      print_json(out);
      return 0;
    }

    if (plot->parsed()) {
      Checkpoints list(input_path);
      std::optional<arenstorf_fit_result> r;
      if (!window_text.empty()) {
        const Window w = parse_window(window_text);
        r.emplace();
        check(arenstorf_fit(list.handle.get(), w.k_min, w.k_max, &*r));
      }
      const arenstorf_fit_result* fit_ptr = r ? &*r : nullptr;
      std::size_t needed = 0;
      check(arenstorf_plot_format(list.handle.get(), fit_ptr, nullptr, 0, &needed));
      std::string text(needed + 1, '\0');
      check(arenstorf_plot_format(list.handle.get(), fit_ptr, text.data(), text.size(), &needed));
      text.resize(needed);
      if (output_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!(out << text)) throw CliError(ARENSTORF_E_IO, "cannot write " + output_path);
      }
      return 0;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
