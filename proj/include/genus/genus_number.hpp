#pragma once

// Genus and extended genus fields of abelian number fields, given by their
// Dirichlet character groups, and the local-data degree formulas.

#include <optional>
#include <string>
#include <vector>

#include "genus/characters.hpp"

namespace genus {

// Y = product over p of the components X_p.
CharacterGroup extended_genus_characters(const CharacterGroup& x);
// Even characters of X (numeric ambient only).
CharacterGroup plus_part(const CharacterGroup& x);
// X joined with the even part of its extended genus group.
CharacterGroup genus_characters(const CharacterGroup& x);

struct PrimeAbove {
  Int e = 1;
  Int f = 1;
  // Norm group of the completion, as a subgroup of (Z/p^m Z)*.
  std::optional<Subgroup> norm_subgroup;
};

struct LocalPrimeData {
  Int p = 2;
  int level = 1;
  std::vector<PrimeAbove> primes_above;
};

// Index of the product of the norm subgroups in (Z/p^m Z)*.
Int lp_degree_from_local(const LocalPrimeData& data);

// gcd(e_1, ..., e_r, p - 1) for odd p.
Int tame_degree(Int p, const std::vector<Int>& e);

enum class L2Tag { PlusField, FullCyclotomic, MinusField };

struct L2Classification {
  L2Tag tag;
  int m;
  std::string label;

  bool operator==(const L2Classification&) const = default;
};

std::string to_string(L2Tag tag);

// H is a subgroup of (Z/2^{m0} Z)* of index 2^m. The fixed field is
//   Q(zeta_{2^{m+2}})^+  if -1 in H,
//   Q(zeta_{2^{m+1}})    if H contains every u == 1 mod 2^{m+1},
//   Q(zeta_{2^{m+2}})^-  otherwise.
// Needs m0 >= m + 2 (PrecisionError otherwise).
L2Classification classify_l2(const ModularUnitGroup& units, const Subgroup& h, int m);

struct ComposeResult {
  CharacterGroup genus;          // of K1 K2
  CharacterGroup genus_product;  // genus of K1 times genus of K2
  Int gap = 1;
};

// Both groups are lifted to the lcm of their moduli first.
ComposeResult compose_genus(const CharacterGroup& x1, const CharacterGroup& x2);

struct PrimeRow {
  std::string label;
  Int prime = 0;
  Int e = 1;
  Int tame = 1;
  Int wild = 1;
  Int component_degree = 1;
  int conductor_exponent = 0;

  bool operator==(const PrimeRow&) const = default;
};

// Rows for the nontrivial components of x, with conductor exponents.
std::vector<PrimeRow> component_rows(const CharacterGroup& x);

struct GenusReport {
  std::string kind;
  std::string modulus;
  Int degree = 1;
  Int genus_order = 1;
  Int extended_order = 1;
  Int genus_degree = 1;     // [gK : K]
  Int extended_degree = 1;  // [geK : K]
  Int gap = 1;              // [geK : gK]
  std::vector<PrimeRow> primes;
  std::string conductor;    // of the extended genus field
  std::vector<std::vector<Int>> genus_generators;
  std::vector<std::vector<Int>> extended_generators;
  std::vector<std::string> notes;

  bool operator==(const GenusReport&) const = default;
};

GenusReport genus_report(const CharacterGroup& x);

}  // namespace genus
