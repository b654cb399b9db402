#pragma once

// Field descriptor documents. The format is a small TOML subset:
//   key = value, [table], [[array of tables]], # comments,
//   values: integers, booleans, "strings", and (nested) arrays.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "genus/arith.hpp"

namespace genus {

struct TomlValue {
  enum class Type { Integer, Boolean, String, Array, Table };
  Type type = Type::Table;
  Int integer = 0;
  bool boolean = false;
  std::string string;
  std::vector<TomlValue> array;
  // Keys in document order.
  std::vector<std::pair<std::string, TomlValue>> table;

  const TomlValue* find(const std::string& key) const;
};

// Throws SchemaError with the line number on malformed input.
TomlValue parse_toml(const std::string& text);

// Characters as exponent vectors on the canonical generators, or the whole
// dual / the trivial group.
struct CharacterSelection {
  enum class Mode { Vectors, Full, Trivial };
  Mode mode = Mode::Trivial;
  std::vector<std::vector<Int>> vectors;
};

struct NumberAbelianSpec {
  Int modulus = 1;
  CharacterSelection characters;
};

struct NumberQuadraticSpec {
  Int discriminant = 1;
};

struct LocalAboveSpec {
  Int e = 1;
  Int f = 1;
  std::optional<std::vector<Int>> norm_generators;  // residues mod p^level
};

struct NumberLocalSpec {
  Int p = 2;
  int level = 1;
  std::vector<LocalAboveSpec> above;
};

using Coeffs = std::vector<Int>;  // low to high

struct FunctionAbelianSpec {
  Int q = 2;
  Coeffs modulus;
  CharacterSelection characters;
  int constants_degree = 1;
  int wild_infinity_index = 0;
};

struct FiniteAboveSpec {
  Int e = 1;
  std::vector<Coeffs> norm_generators;
};

struct FiniteLocalSpec {
  Coeffs prime;
  int level = 1;
  std::vector<FiniteAboveSpec> above;
};

struct InfinityPrimeSpec {
  Int e = 1;
  Int t = 1;
  std::optional<std::vector<Coeffs>> norm_generators;  // polynomials in pi
  std::optional<Coeffs> uniformizer_norm;
};

struct InfinityLocalSpec {
  int n_max = 1;
  std::vector<InfinityPrimeSpec> primes;
};

struct FunctionLocalSpec {
  Int q = 2;
  std::optional<FiniteLocalSpec> finite;
  std::optional<InfinityLocalSpec> infinity;
};

using FieldSpecBody =
    std::variant<NumberAbelianSpec, NumberQuadraticSpec, NumberLocalSpec, FunctionAbelianSpec, FunctionLocalSpec>;

struct FieldSpec {
  std::string kind;
  FieldSpecBody body;
};

// Validates the schema; unknown keys and wrong types raise SchemaError
// naming the field.
FieldSpec parse_field_spec(const std::string& text);
FieldSpec load_field_spec(const std::string& path);

}  // namespace genus
