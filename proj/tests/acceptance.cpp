// One PASS/FAIL line per acceptance criterion; exit 0 iff all pass.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "genus/selftest.hpp"

namespace {

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

genus::SuiteResult determinism() {
  genus::SuiteResult r{10, "CLI determinism", true, ""};
  const std::string exe = GENUSCTL_PATH;
  const std::string specs = GENUS_EXAMPLE_SPECS;
  auto fail = [&](const std::string& why) {
    if (r.pass) r.detail = why;
    r.pass = false;
  };
  auto a = capture(exe + " selftest");
  if (a.code != 0) fail("selftest exited " + std::to_string(a.code));
  auto b = capture(exe + " selftest");
  if (a.out != b.out) fail("selftest output differs between runs");

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"number", "quad_minus5"},   {"number", "quad_3"},   {"number", "trivial"},
      {"number", "cyclo_15_plus"}, {"number", "local_2"},  {"function", "cyclo_p"},
      {"function", "local_function"}, {"oracle", "quad_minus5"}, {"oracle", "cyclo_15_plus"},
  };
  int reports = 0;
  for (const auto& [cmd, name] : runs)
    for (const char* mode : {"", " --json"}) {
      const std::string line = exe + " " + cmd + " --spec " + specs + "/" + name + ".toml" + mode;
      auto x = capture(line), y = capture(line);
      ++reports;
      if (x.code != 0) fail(cmd + " " + name + mode + " exited " + std::to_string(x.code));
      if (x.out.empty() || x.out != y.out) fail(cmd + " " + name + mode + " is not byte-identical");
    }
  if (r.pass) r.detail = "selftest exits 0 with stable output, " + std::to_string(reports) + " reports byte-identical";
  return r;
}

}  // namespace

int main() {
  bool all = true;
  for (int k = 1; k <= genus::kSelftestSuites + 1; ++k) {
    auto start = std::chrono::steady_clock::now();
    auto r = k <= genus::kSelftestSuites ? genus::run_suite(k) : determinism();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Runtime budgets.
    if (r.pass && ((k == 1 && secs >= 60) || (k == 7 && secs >= 10))) {
      r.pass = false;
      r.detail += "; over the time budget";
    }
    all = all && r.pass;
    char t[32];
    std::snprintf(t, sizeof t, "%.1f", secs);
    std::cout << "criterion " << k << " " << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (" << t
              << " s): " << r.detail << std::endl;
  }
  std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
  return all ? 0 : 1;
}
