#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "arenstorf/arenstorf.h"
#include "doctest.h"
#include "temp_dir.hpp"

using testing::slurp;
using testing::TempDir;

namespace {

arenstorf_run* create_run(int start, int end, unsigned workers, const std::string& state, const std::string& out) {
  arenstorf_run_config cfg;
  arenstorf_run_config_init(&cfg);
  cfg.start_exponent = start;
  cfg.end_exponent = end;
  cfg.workers = workers;
  cfg.state_path = state.c_str();
  cfg.output_path = out.c_str();
  arenstorf_run* run = nullptr;
  REQUIRE(arenstorf_run_create(&cfg, &run) == ARENSTORF_OK);
  return run;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(arenstorf_status_name(ARENSTORF_OK)) == "ok");
  CHECK(std::string(arenstorf_status_name(ARENSTORF_E_CORRUPT_STATE)) == "corrupt state");
  CHECK(std::string(arenstorf_version()) == "1.0.0");

  arenstorf_c2_estimate est;
  CHECK(arenstorf_twin_constant(2, 1, &est) == ARENSTORF_E_DOMAIN);
  CHECK(std::string(arenstorf_last_error()).find("prime limit") != std::string::npos);
  CHECK(arenstorf_twin_constant(7, 1, nullptr) == ARENSTORF_E_INVALID_ARGUMENT);
  CHECK(arenstorf_twin_constant(7, 1, &est) == ARENSTORF_OK);
  CHECK(std::string(arenstorf_last_error()).empty());
}

TEST_CASE("constants through the C surface") {
  arenstorf_c2_estimate est;
  REQUIRE(arenstorf_twin_constant(7, 1, &est) == ARENSTORF_OK);
  CHECK(est.value == doctest::Approx(1.3671875).epsilon(1e-15));
  CHECK(est.prime_limit == 7);

  arenstorf_brun_estimate brun;
  REQUIRE(arenstorf_brun(13, 2, &brun) == ARENSTORF_OK);
  CHECK(brun.partial == doctest::Approx(15676.0 / 15015.0).epsilon(1e-14));
  CHECK(brun.c2 == arenstorf_twin_constant_reference() / 2);
  CHECK(brun.extrapolated == brun.partial + 4 * brun.c2 / std::log(13.0));
  CHECK(arenstorf_brun(4, 1, &brun) == ARENSTORF_E_DOMAIN);

  std::uint64_t count = 0;
  REQUIRE(arenstorf_count_twins(100, 1, &count) == ARENSTORF_OK);
  CHECK(count == 8);
}

TEST_CASE("run, inspect, resume through handles") {
  TempDir dir;
  const std::string state = (dir / "s.json").string();
  const std::string csv = (dir / "c.csv").string();

  arenstorf_run* run = create_run(10, 16, 2, state, csv);
  CHECK(std::string(arenstorf_run_state_path(run)) == state);
  CHECK(arenstorf_run_execute(run) == ARENSTORF_OK);
  REQUIRE(arenstorf_run_checkpoint_count(run) == 7);
  arenstorf_checkpoint first;
  REQUIRE(arenstorf_run_checkpoint(run, 0, &first) == ARENSTORF_OK);
  CHECK(first.n == 1024);
  CHECK(first.mean == doctest::Approx(1.0511326116560940).epsilon(1e-14));
  CHECK(arenstorf_run_checkpoint(run, 7, &first) == ARENSTORF_E_INVALID_ARGUMENT);
  CHECK(arenstorf_run_next_lo(run) == 65536);
  const std::uint64_t pairs16 = arenstorf_run_pair_count(run);
  arenstorf_run_destroy(run);

  arenstorf_resume_options opts;
  arenstorf_resume_options_init(&opts);
  opts.state_path = state.c_str();
  opts.output_path = csv.c_str();
  opts.end_exponent = 18;
  arenstorf_run* resumed = nullptr;
  REQUIRE(arenstorf_run_resume(&opts, &resumed) == ARENSTORF_OK);
  CHECK(arenstorf_run_execute(resumed) == ARENSTORF_OK);
  CHECK(arenstorf_run_checkpoint_count(resumed) == 9);
  CHECK(arenstorf_run_pair_count(resumed) > pairs16);
  arenstorf_run_destroy(resumed);

  opts.segment_size = 1000;
  CHECK(arenstorf_run_resume(&opts, &resumed) == ARENSTORF_E_SEGMENT_MISMATCH);

  arenstorf_run_config bad;
  arenstorf_run_config_init(&bad);
  bad.end_exponent = 9;
  CHECK(arenstorf_run_create(&bad, &run) == ARENSTORF_E_CONFIG);
}

TEST_CASE("stop request interrupts and resume completes") {
  TempDir dir;
  const std::string state = (dir / "s.json").string();
  const std::string csv = (dir / "c.csv").string();
  const std::string ref_csv = (dir / "ref.csv").string();

  arenstorf_run* ref = create_run(10, 21, 1, (dir / "ref.json").string(), ref_csv);
  REQUIRE(arenstorf_run_execute(ref) == ARENSTORF_OK);
  arenstorf_run_destroy(ref);

  arenstorf_run* run = create_run(10, 21, 1, state, csv);
  arenstorf_request_stop();
  CHECK(arenstorf_run_execute(run) == ARENSTORF_E_INTERRUPTED);
  arenstorf_clear_stop();
  arenstorf_run_destroy(run);

  arenstorf_resume_options opts;
  arenstorf_resume_options_init(&opts);
  opts.state_path = state.c_str();
  opts.output_path = csv.c_str();
  arenstorf_run* resumed = nullptr;
  REQUIRE(arenstorf_run_resume(&opts, &resumed) == ARENSTORF_OK);
  CHECK(arenstorf_run_execute(resumed) == ARENSTORF_OK);
  arenstorf_run_destroy(resumed);
  CHECK(slurp(csv) == slurp(ref_csv));
}

TEST_CASE("fit and plot through the C surface") {
  arenstorf_checkpoints* list = nullptr;
  REQUIRE(arenstorf_checkpoints_read_csv(ARENSTORF_DATA_DIR "/table1.csv", &list) == ARENSTORF_OK);
  REQUIRE(arenstorf_checkpoints_size(list) == 19);

  arenstorf_fit_result full;
  REQUIRE(arenstorf_fit(list, 22, 40, &full) == ARENSTORF_OK);
  CHECK(full.n_points == 19);
  CHECK(std::abs(full.intercept - 1.3200385787619) < 1e-6);
  arenstorf_fit_result late;
  REQUIRE(arenstorf_fit(list, 32, 40, &late) == ARENSTORF_OK);
  CHECK(std::abs(late.intercept - 1.3203501777) < 1e-6);
  CHECK(arenstorf_fit(list, 40, 40, &late) == ARENSTORF_E_FIT);

  std::size_t needed = 0;
  REQUIRE(arenstorf_plot_format(list, &full, nullptr, 0, &needed) == ARENSTORF_OK);
  std::vector<char> small(10, 'x');
  REQUIRE(arenstorf_plot_format(list, &full, small.data(), small.size(), &needed) == ARENSTORF_OK);
  CHECK(small[0] == 'x');
  std::vector<char> buf(needed + 1);
  REQUIRE(arenstorf_plot_format(list, &full, buf.data(), buf.size(), &needed) == ARENSTORF_OK);
  const std::string text(buf.data());
  CHECK(text.size() == needed);
  CHECK(text.rfind("# intercept\t", 0) == 0);

  arenstorf_checkpoints_destroy(list);
  CHECK(arenstorf_checkpoints_read_csv("/nonexistent.csv", &list) == ARENSTORF_E_IO);
}
