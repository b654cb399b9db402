#pragma once

// genusctl: subcommands number, function, oracle, selftest.
// Exit codes: 0 ok, 1 oracle disagreement or internal failure,
// 2 schema/validation error, 3 bound exceeded, 4 precision error.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "genus/field_spec.hpp"
#include "genus/report_io.hpp"

namespace genus {

struct CliOptions {
  std::optional<Int> bound;
  std::optional<int> level;
  bool json = false;
};

// command is "number", "function" or "oracle".
ReportDocument build_report(const std::string& command, const FieldSpec& spec, const CliOptions& opt);

// Maps exceptions to exit codes and prints the diagnostic to err.
int exit_code_for_current_exception(std::ostream& err);

// args excludes the program name. env_bound is the GENUSCTL_BOUND value
// (nullptr when unset); it takes precedence over --bound.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const char* env_bound);

}  // namespace genus
