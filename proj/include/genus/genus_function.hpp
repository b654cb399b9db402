#pragma once

// Genus theory for abelian extensions of k = F_q(T): the cyclotomic part
// through characters of (F_q[T]/N)*, local degree formulas at finite
// primes, and invariants of the infinite-prime field S.

#include <optional>
#include <vector>

#include "genus/characters.hpp"
#include "genus/genus_number.hpp"
#include "genus/poly_unit_group.hpp"

namespace genus {

// K inside L_n k(Lambda_N) k_m: X cuts out the cyclotomic part, m is the
// degree of the constant field extension, n the wild index at infinity.
struct FFAbelianDescriptor {
  FactoredModulus modulus;
  CharacterGroup x;
  int constants_degree = 1;
  int wild_infinity_index = 0;
};

// Builds the map (F_q[T]/N)* -> prod_i (F_q[T]/P_i^{a_i})* by reduction
// and checks on every element that it is a bijective homomorphism.
bool idele_quotient_check(const FactoredModulus& n, Int bound = kDefaultPolyUnitBound);

CharacterGroup extended_genus_characters_ff(const CharacterGroup& x);
// Characters of X trivial on the constants F_q^*.
CharacterGroup infinity_split_part(const CharacterGroup& x);
// X joined with the characters of Y trivial on F_q^*: the largest
// cyclotomic overfield unramified at finite primes in which the infinite
// primes of K split completely.
CharacterGroup genus_characters_ff(const CharacterGroup& x);

struct ComponentField {
  FqPoly place;
  std::size_t block = 0;
  Int degree = 1;              // |X_P|
  int conductor_exponent = 0;  // P-adic valuation of the conductor of X_P
};

// One entry per prime dividing the modulus, in block order.
std::vector<ComponentField> component_fields(const CharacterGroup& x);

// gcd(q^{d_P} - 1, e).
Int tame_ramification_ff(Int q, int d_p, Int e);

// 1 + c T^i P^t over an F_p-basis c of F_q and i < deg P; these generate
// U^(t) modulo U^(t+1).
std::vector<FqPoly> level_kernel_generators(const FqPoly& p, int t);

struct EpDegree {
  Int degree = 1;
  std::optional<Int> tame;
};

// Index of the product of the norm subgroups in (F_q[T]/P^t)*, and the
// tame gcd(e_1, ..., e_r, q^{d_P} - 1) when indices are given.
EpDegree ep_degree_from_local(const FqPoly& p, int level, const std::vector<Subgroup>& norm_subgroups,
                              const std::vector<Int>& e = {});

struct InfinitePrime {
  Int e = 1;
  Int t = 1;
  // Unit part of the norm group, a subgroup of
  // infinity_unit_quotient(q, n_max).group().
  std::optional<Subgroup> norm_subgroup;
  // u with pi^t u in the norm group; defaults to 1.
  std::optional<FqPoly> uniformizer_norm;
};

struct InfinitePrimeData {
  std::vector<InfinitePrime> primes;
};

// F_q^* x U^(1)/U^(n_max), realised as (F_q[pi]/pi^{n_max})*. The variable
// of the polynomials stands for pi = 1/T.
PolyUnitGroup infinity_unit_quotient(Int q, int n_max);

struct SFieldInvariants {
  Int t0 = 1;
  // Filled only when norm data is supplied.
  std::optional<int> n0;
  std::optional<Int> m0;
  std::optional<Int> script_s_index;  // p^alpha
  std::optional<int> alpha;
  std::optional<Int> f_infinity;      // f_inf(S|k)
  std::optional<Int> e_over_wild;     // e_inf(S | S cap L_{n0})

  bool operator==(const SFieldInvariants&) const = default;
};

SFieldInvariants s_field_invariants(const InfinitePrimeData& data, Int q, int n_max);

GenusReport genus_report_ff(const FFAbelianDescriptor& d);

}  // namespace genus
