#include <filesystem>

#include "blowup/errors.hpp"
#include "blowup/lab.hpp"
#include "doctest.h"

using namespace blowup;

TEST_CASE("config parsing") {
  const LabConfig c = parse_config("# comment\nn = 32\nspectrum_coarse_n = 24\n\nseed=5  # trailing\ndeltas = 0.02, 0.01\nout_dir = x\n");
  CHECK(c.n == 32);
  CHECK(c.seed == 5ULL);
  CHECK(c.deltas == std::vector<double>{0.02, 0.01});
  CHECK(c.out_dir == "x");
  CHECK(c.tau_max == 8.0);
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("n = abc\n"), Error);
  CHECK_THROWS_AS(parse_config("n 32\n"), Error);
  LabConfig bad;
  bad.n = 2;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = LabConfig{};
  bad.deltas = {1e-2, 2e-2};
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_NOTHROW(LabConfig{}.validate());
  CHECK(LabConfig{}.to_json()["n"] == 64);
}

TEST_CASE("scenario table") {
  CHECK(scenario_checks("connection") == std::vector<std::string>{"c5", "c6", "c7"});
  CHECK(scenario_checks("all").size() == 15);
  try {
    scenario_checks("bogus");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
  }
  for (const auto& s : scenario_names()) CHECK_NOTHROW(scenario_checks(s));
}

TEST_CASE("running a scenario writes a summary") {
  const auto dir = std::filesystem::temp_directory_path() / "blowup_lab_test";
  std::filesystem::remove_all(dir);
  LabConfig cfg;
  cfg.n = 32;
  cfg.spectrum_coarse_n = 24;
  cfg.out_dir = dir.string();
  const ScenarioResult r = run_scenario("verify-profile", cfg);
  CHECK(r.checks.size() == 2);
  CHECK(r.passed());
  CHECK(std::filesystem::exists(dir / "verify-profile.summary.json"));
  std::filesystem::remove_all(dir);
}
