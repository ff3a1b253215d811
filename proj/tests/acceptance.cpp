// Runs acceptance criteria 1-14 with the default configuration and prints one
// line per criterion. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <exception>

#include "blowup/lab.hpp"

int main() {
  using namespace blowup;
  const LabConfig cfg;
  int failed = 0;
  for (int k = 1; k <= 14; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = run_criterion(k, cfg);
    } catch (const std::exception& e) {
      r.criterion = k;
      r.name = "error";
      r.passed = false;
      r.detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s: %s  [%.1fs]\n", k, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(), secs);
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d of 14 criteria passed\n", 14 - failed);
  return failed == 0 ? 0 : 1;
}
