#pragma once

// Acceptance suites 1-9, each checked against its own brute-force oracle.

#include <string>
#include <vector>

namespace genus {

struct SuiteResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic summary: counts, first failure
};

inline constexpr int kSelftestSuites = 9;

std::string suite_name(int criterion);
// Runs one suite; internal exceptions are reported as a failure.
SuiteResult run_suite(int criterion);
std::vector<SuiteResult> run_selftest();

}  // namespace genus
