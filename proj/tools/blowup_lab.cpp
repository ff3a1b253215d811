#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "blowup/errors.hpp"
#include "blowup/lab.hpp"

int main(int argc, char** argv) {
  using namespace blowup;
  CLI::App app{"Scenario runner for the wave-maps blowup laboratory"};
  std::string scenario, config_path, out_dir;
  std::optional<int> n;
  std::optional<double> tau_max;
  std::optional<unsigned long long> seed;
  std::string names;
  for (const auto& s : scenario_names()) names += (names.empty() ? "" : ", ") + s;
  app.add_option("scenario", scenario, "one of: " + names)->required();
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--out", out_dir, "output directory (overrides out_dir)");
  app.add_option("--n", n, "grid resolution");
  app.add_option("--tau-max", tau_max, "similarity-time horizon");
  app.add_option("--seed", seed, "random seed");
  CLI11_PARSE(app, argc, argv);

  try {
    scenario_checks(scenario);
    LabConfig cfg = config_path.empty() ? LabConfig{} : load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (n) cfg.n = *n;
    if (tau_max) cfg.tau_max = *tau_max;
    if (seed) cfg.seed = *seed;
    cfg.validate();
    const ScenarioResult res = run_scenario(scenario, cfg);
    for (const auto& c : res.checks)
      std::cout << (c.passed ? "PASS" : "FAIL") << " [criterion " << c.criterion << "] " << c.name << ": " << c.detail << '\n';
    std::cout << scenario << ": " << (res.passed() ? "passed" : "failed") << " (summary in " << cfg.out_dir << ")\n";
    return res.passed() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == ErrorKind::Usage ? 2 : 3;
  }
}
