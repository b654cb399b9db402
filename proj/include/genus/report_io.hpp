#pragma once

// Report documents: a fixed-width text table and a JSON form that
// re-parses to an equal value.

#include <optional>
#include <string>
#include <vector>

#include "genus/genus_function.hpp"
#include "genus/genus_number.hpp"

namespace genus {

struct GeneratorInfo {
  std::string residue;
  Int order = 1;

  bool operator==(const GeneratorInfo&) const = default;
};

struct NumberLocalReport {
  Int p = 2;
  int level = 1;
  std::optional<Int> degree;  // index of the product of norm groups
  std::optional<Int> tame;
  std::optional<L2Classification> l2;

  bool operator==(const NumberLocalReport&) const = default;
};

struct FunctionLocalReport {
  Int q = 2;
  std::optional<std::string> prime;
  std::optional<int> level;
  std::optional<Int> degree;
  std::optional<Int> tame;
  std::optional<int> n_max;
  std::optional<SFieldInvariants> s_field;

  bool operator==(const FunctionLocalReport&) const = default;
};

struct OracleReport {
  Int subfields = 0;
  Int extended_order = 1;
  Int extended_search_order = 1;
  Int genus_order = 1;
  Int genus_search_order = 1;
  bool extended_agrees = true;
  bool genus_agrees = true;

  bool operator==(const OracleReport&) const = default;
};

struct ReportDocument {
  std::string command;
  std::string kind;
  std::string modulus;
  std::vector<GeneratorInfo> generators;
  std::optional<GenusReport> genus;
  std::optional<NumberLocalReport> number_local;
  std::optional<FunctionLocalReport> function_local;
  std::optional<OracleReport> oracle;

  bool operator==(const ReportDocument&) const = default;
};

// Pretty-printed with two-space indent and a trailing newline.
std::string to_json_string(const ReportDocument& doc);
// Throws SchemaError on malformed or incomplete input.
ReportDocument report_from_json(const std::string& text);

std::string render_text(const ReportDocument& doc);

L2Tag l2_tag_from_string(const std::string& s);

}  // namespace genus
