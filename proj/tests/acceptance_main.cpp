// Runs the numbered reproduction checks; one PASS/FAIL line each.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "holodyn/acceptance.hpp"

int main(int argc, char** argv) {
  holodyn::AcceptanceOptions opts;
  if (const char* t = std::getenv("HOLODYN_THREADS")) opts.threads = static_cast<unsigned>(std::atoi(t));
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));

  int failed = 0;
  holodyn::run_acceptance(opts, [&](const holodyn::CriterionResult& r) {
    std::printf("[%s] criterion %2d: %s (%.2fs)\n        %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  });
  return failed == 0 ? 0 : 1;
}
