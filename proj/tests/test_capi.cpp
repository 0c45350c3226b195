#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "majorana/majorana.h"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

struct Config {
  mjr_config* p = nullptr;
  Config() { REQUIRE(mjr_config_new(&p) == MJR_OK); }
  ~Config() { mjr_config_free(p); }
};

struct Report {
  mjr_report* p = nullptr;
  ~Report() { mjr_report_free(p); }
};

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::string(mjr_version()) == "majorana 0.1.0");
  CHECK(mjr_config_new(nullptr) == MJR_ERR_USAGE);
  CHECK(std::string(mjr_last_error()).find("null") != std::string::npos);
}

TEST_CASE("configuration through the C interface") {
  Config cfg;
  char buf[64];
  REQUIRE(mjr_config_get(cfg.p, "noise.delta_hz", buf, sizeof buf) == MJR_OK);
  CHECK(std::string(buf) == "0.001 J");
  CHECK(mjr_config_get(cfg.p, "noise.delta_hz", buf, 3) == MJR_ERR_USAGE);
  CHECK(mjr_config_get(cfg.p, "nope", buf, sizeof buf) == MJR_ERR_CONFIG);

  CHECK(mjr_config_set(cfg.p, "model.N", "4") == MJR_OK);
  CHECK(mjr_config_set(cfg.p, "noise.delta_hz", "1e-3 Hz") == MJR_ERR_CONFIG);
  CHECK(std::string(mjr_last_error()).find("unit") != std::string::npos);
  CHECK(mjr_config_load_string(cfg.p, "model.N = 5\nschedule.dt = 1e-4 1/J\n") == MJR_OK);
  REQUIRE(mjr_config_get(cfg.p, "model.N", buf, sizeof buf) == MJR_OK);
  CHECK(std::string(buf) == "5");
  CHECK(mjr_config_load_file(cfg.p, "/nonexistent/file.cfg") == MJR_ERR_CONFIG);

  CHECK(mjr_config_set(cfg.p, "model.N", "20") == MJR_OK);
  CHECK(mjr_config_validate(cfg.p) == MJR_ERR_CONFIG);
  Report r;
  CHECK(mjr_run(cfg.p, "check", 0, &r.p) == MJR_ERR_CONFIG);
  CHECK(r.p == nullptr);
}

TEST_CASE("running experiments") {
  Config cfg;
  {
    Report r;
    REQUIRE(mjr_run(cfg.p, "check", 0, &r.p) == MJR_OK);
    CHECK(mjr_report_passed(r.p) == 1);
    CHECK(mjr_report_file_count(r.p) == 0);
    CHECK(mjr_report_file_contents(r.p, 0) == nullptr);
  }
  {
    Report r;
    REQUIRE(mjr_run(cfg.p, "check", MJR_FLAG_INJECT_JW_FAULT, &r.p) == MJR_OK);
    CHECK(mjr_report_passed(r.p) == 0);
    CHECK(std::strstr(mjr_report_text(r.p), "FAIL mapping_equivalence") != nullptr);
  }
  {
    REQUIRE(mjr_config_set(cfg.p, "run.N_list", "3, 4") == MJR_OK);
    Report r;
    REQUIRE(mjr_run(cfg.p, "splitting", 0, &r.p) == MJR_OK);
    REQUIRE(mjr_report_file_count(r.p) == 1);
    CHECK(std::string(mjr_report_file_suffix(r.p, 0)).empty());
    CHECK(std::strncmp(mjr_report_file_contents(r.p, 0), "N,gamma [J]", 11) == 0);
  }
  Report r;
  CHECK(mjr_run(cfg.p, "nonsense", 0, &r.p) == MJR_ERR_USAGE);
}

TEST_CASE("direct numerics") {
  double v = 0.0;
  REQUIRE(mjr_offresonant_excitation(6.0, 4.11e14, &v) == MJR_OK);
  CHECK(v == doctest::Approx(2.131e-28).epsilon(1e-3));
  CHECK(mjr_offresonant_excitation(1.0, -1.0, &v) == MJR_ERR_DOMAIN);
  REQUIRE(mjr_effective_error_frequency(1e-3, 1.0, &v) == MJR_OK);
  CHECK(v == 5e-7);
  REQUIRE(mjr_localization_length(1.0, 1.0, 0.0, &v) == MJR_OK);
  CHECK(v == 0.0);
  CHECK(mjr_localization_length(0.0, 0.0, 1.0, &v) == MJR_ERR_DOMAIN);
  double gamma = 0.0, gap = 0.0;
  REQUIRE(mjr_ground_splitting(3, 1e-3, 1.01, 0.0, &gamma, &gap) == MJR_OK);
  CHECK(gamma == doctest::Approx(1.98e-9).epsilon(1e-2));
  CHECK(gap == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(mjr_ground_splitting(14, 1e-3, 1.01, 0.0, &gamma, &gap) == MJR_ERR_BUDGET);
}
