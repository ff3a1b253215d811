#pragma once

#include <string>
#include <vector>

#include "blowup/io.hpp"

namespace blowup {

// Flat key = value configuration; '#' starts a comment.
struct LabConfig {
  int n = 64;
  int spectrum_coarse_n = 48;
  double dt_factor = 0.5;
  double tau_max = 8.0;
  std::vector<double> deltas = {1e-2, 5e-3, 2.5e-3};
  double omega_max = 20.0;
  double strip_re_lo = 0.0;
  double strip_re_hi = 0.25;
  double parity_tol = 1e-8;
  double match_tol = 1e-4;
  double residual_tol = 1e-5;
  // relative spread allowed in the delta-scaling ratios
  double spread_tol = 0.25;
  double connection_r = 1.0;
  double connection_rho0 = 0.5;
  int modulation_n = 32;
  int exterior_levels = 128;
  int samples = 100;
  unsigned long long seed = 20240917ULL;
  std::string out_dir = "lab-out";

  // Throws Configuration on invalid values.
  void validate() const;
  json to_json() const;
};

// Unknown keys and malformed values throw Configuration naming the line.
LabConfig parse_config(const std::string& text);
LabConfig load_config(const std::string& path);

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  json metrics = json::object();
};

// Runs acceptance criterion k (1..14). With a non-empty out_dir the check
// also writes its CSV/JSON artifacts there, prefixed by scenario.
CheckResult run_criterion(int k, const LabConfig& cfg, const std::string& out_dir = "",
                          const std::string& scenario = "");

// Check keys are "c1".."c14" for the criteria and "evolve" for the
// linearized-decay run (reported under criterion 3).
CheckResult run_check(const std::string& key, const LabConfig& cfg, const std::string& out_dir = "",
                      const std::string& scenario = "");

const std::vector<std::string>& scenario_names();
// Check keys run by a scenario; throws Usage for unknown names.
std::vector<std::string> scenario_checks(const std::string& name);

struct ScenarioResult {
  std::string scenario;
  std::vector<CheckResult> checks;
  bool passed() const;
};

// Writes <scenario>.summary.json and the per-check artifacts to cfg.out_dir.
ScenarioResult run_scenario(const std::string& name, const LabConfig& cfg);

}  // namespace blowup
