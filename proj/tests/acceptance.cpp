// Acceptance run: one line per criterion, nonzero exit on any failure.

#include <michelson/cli/runners.hpp>

#include <cstdio>

int main() {
  using namespace michelson;
  const cli::RunConfig cfg;
  validation::PulseDefaults pulse;
  auto checks = validation::run_all(cfg.interferometer, pulse);
  checks.push_back(cli::check_determinism(cfg));
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("criterion %2d %s: %s (measured %.3e, threshold %.1e) %s\n", c.id, c.passed ? "PASS" : "FAIL",
                c.name.c_str(), c.measured, c.threshold, c.detail.c_str());
    failed += c.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
