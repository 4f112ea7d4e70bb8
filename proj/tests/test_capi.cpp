// Exercises the shared-library surface exactly as an external client would:
// through covertlab.h only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "covertlab.h"
#include "doctest.h"

namespace {

const covertlab_noise kNoise{0.01, 1.0, 1.0, 0.01};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("conversions and special functions") {
  CHECK(covertlab_db_to_linear(-20.0) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(covertlab_linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-12));

  double w = 0.0;
  REQUIRE(covertlab_lambert_w0(1.0, &w) == COVERTLAB_OK);
  CHECK(w == doctest::Approx(0.5671432904097838).epsilon(1e-12));
  REQUIRE(covertlab_lambert_wm1(-0.1, &w) == COVERTLAB_OK);
  CHECK(w == doctest::Approx(-3.577152063957297).epsilon(1e-12));

  CHECK(covertlab_lambert_w0(-1.0, &w) == COVERTLAB_ERROR_DOMAIN);
  CHECK(std::strlen(covertlab_last_error()) > 0);
  CHECK(covertlab_lambert_w0(1.0, nullptr) == COVERTLAB_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("point metrics through the c api") {
  covertlab_point_metrics out;
  REQUIRE(covertlab_metrics(COVERTLAB_SCENARIO_IA, &kNoise, 0.01, 0.75, 0.25,
                            NAN, &out) == COVERTLAB_OK);
  CHECK(out.theta > kNoise.sigma_w2);
  CHECK(out.tp == doctest::Approx(0.7639461350).epsilon(1e-9));
  CHECK(out.cop == doctest::Approx(0.75 * std::pow(0.25, 1.0 / 3.0)).epsilon(1e-12));
  CHECK(out.sop > 0.0);
  CHECK(out.sop < 1.0);

  covertlab_noise bad = kNoise;
  bad.sigma_b2 = -1.0;
  CHECK(covertlab_metrics(COVERTLAB_SCENARIO_IP, &bad, 0.01, 1.0, 0.25, NAN,
                          &out) == COVERTLAB_ERROR_INVALID_ARGUMENT);
  // rate above the capacity ceiling: conditional metrics are undefined
  CHECK(covertlab_metrics(COVERTLAB_SCENARIO_IA, &kNoise, 0.01, 0.5, 1.5, NAN,
                          &out) == COVERTLAB_ERROR_DOMAIN);
}

TEST_CASE("solve through the c api") {
  const covertlab_constraints cons{0.1, 0.1, 0.5};
  covertlab_solution sol;
  REQUIRE(covertlab_solve(COVERTLAB_SCENARIO_IP, &kNoise, 0.0, &cons, &sol) ==
          COVERTLAB_OK);
  CHECK(sol.regime == COVERTLAB_REGIME_TRANSMISSION_BOUND);
  CHECK(sol.csr == doctest::Approx(0.18982711).epsilon(1e-6));

  covertlab_solution ref;
  REQUIRE(covertlab_solve_reference(COVERTLAB_SCENARIO_IP, &kNoise, 0.0, &cons,
                                    0, &ref) == COVERTLAB_OK);
  CHECK(std::abs(ref.csr - sol.csr) / sol.csr <= 1e-3);

  // infeasible comes back as a value, not an error
  const covertlab_noise equal{1.0, 1.0, 1.0, 0.01};
  const covertlab_constraints tight{0.1, 0.4, 0.5};
  REQUIRE(covertlab_solve(COVERTLAB_SCENARIO_IP, &equal, 0.0, &tight, &sol) ==
          COVERTLAB_OK);
  CHECK(sol.regime == COVERTLAB_REGIME_INFEASIBLE);
  CHECK(sol.csr == 0.0);

  // an scenarios demand a positive transmit power
  CHECK(covertlab_solve(COVERTLAB_SCENARIO_IA, &kNoise, -1.0, &cons, &sol) ==
        COVERTLAB_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("validation harness through the c api") {
  covertlab_validation report;
  REQUIRE(covertlab_validate(COVERTLAB_SCENARIO_IA, &kNoise, 0.01, 0.75, 0.25,
                             200000, 7, 0.0, &report) == COVERTLAB_OK);
  CHECK(report.pass == 1);
  CHECK(report.tp.pass == 1);
  CHECK(report.sop.pass == 1);
  CHECK(report.cop.pass == 1);

  covertlab_validation biased;
  REQUIRE(covertlab_validate(COVERTLAB_SCENARIO_IA, &kNoise, 0.01, 0.75, 0.25,
                             200000, 7, 0.05, &biased) == COVERTLAB_OK);
  CHECK(biased.pass == 0);
}

TEST_CASE("sweep lifecycle through the c api") {
  const char* config =
      "scenario = ip\n"
      "sigma_b_db = -20\nsigma_w_db = 0\nsigma_e_db = 0\nupsilon = 0.01\n"
      "eps_s = 0.1\neps_t = 0.5\n"
      "axis.eps_c = 0.01:0.5:6\n";
  covertlab_sweep* sweep = nullptr;
  REQUIRE(covertlab_sweep_from_config_text(config, &sweep) == COVERTLAB_OK);
  REQUIRE(covertlab_sweep_run(sweep) == COVERTLAB_OK);
  REQUIRE(covertlab_sweep_row_count(sweep) == 6);

  covertlab_result_row row;
  REQUIRE(covertlab_sweep_row(sweep, 0, &row) == COVERTLAB_OK);
  CHECK(row.scenario == COVERTLAB_SCENARIO_IP);
  CHECK(row.axis_value == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(row.eps_c == row.axis_value);
  CHECK(std::isnan(row.pa_db));  // no fixed transmit power in this sweep
  CHECK(covertlab_sweep_row(sweep, 99, &row) == COVERTLAB_ERROR_INVALID_ARGUMENT);

  const auto dir = std::filesystem::temp_directory_path() / "covertlab_capi";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "s.csv";
  const auto svg = dir / "s.svg";
  REQUIRE(covertlab_sweep_write_csv(sweep, csv.string().c_str()) == COVERTLAB_OK);
  REQUIRE(covertlab_sweep_write_svg(sweep, svg.string().c_str()) == COVERTLAB_OK);
  CHECK(slurp(csv).starts_with("# covertlab sweep"));
  CHECK(slurp(svg).find("<svg") != std::string::npos);
  covertlab_sweep_free(sweep);
  std::filesystem::remove_all(dir);

  // figure recipes by id; unknown ids are their own status
  covertlab_sweep* fig = nullptr;
  REQUIRE(covertlab_sweep_from_figure("fig8_pc", &fig) == COVERTLAB_OK);
  covertlab_sweep_free(fig);
  CHECK(covertlab_sweep_from_figure("fig99", &fig) == COVERTLAB_ERROR_UNKNOWN_ID);
  CHECK(std::string(covertlab_figure_ids()).find("fig8_pc") != std::string::npos);

  // config errors carry the offending field
  CHECK(covertlab_sweep_from_config_text("axis.eps_c = 0.01:0.5:6\n", &fig) ==
        COVERTLAB_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(covertlab_last_error()).find("scenario") != std::string::npos);
  CHECK(covertlab_sweep_from_config("/no/such/file.conf", &fig) ==
        COVERTLAB_ERROR_INVALID_ARGUMENT);
}
