#pragma once

// Dirichlet characters of (Z/nZ)* and (F_q[T]/N)*.
//
// The dual of G = Z/d_1 x ... x Z/d_k is identified with G itself: the
// exponent vector a gives the character x -> zeta_E^{sum a_i x_i E/d_i},
// where E is the exponent of G. Values are stored as exponents of zeta_E.

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "genus/abelian_group.hpp"
#include "genus/fq_poly.hpp"
#include "genus/poly_unit_group.hpp"
#include "genus/unit_group.hpp"

namespace genus {

enum class Parity { Even, Odd };

// Shared handle on the unit group a character lives on.
class CharacterAmbient {
 public:
  static CharacterAmbient numeric(Int n, Int bound = kDefaultUnitGroupBound);
  static CharacterAmbient polynomial(const FqPoly& n, Int bound = kDefaultPolyUnitBound);
  explicit CharacterAmbient(std::shared_ptr<const ModularUnitGroup> u) : u_(std::move(u)) {}
  explicit CharacterAmbient(std::shared_ptr<const PolyUnitGroup> u) : u_(std::move(u)) {}

  bool is_numeric() const { return std::holds_alternative<std::shared_ptr<const ModularUnitGroup>>(u_); }
  const ModularUnitGroup& numeric_units() const;
  const PolyUnitGroup& poly_units() const;

  const FiniteAbelianGroup& group() const;
  const std::vector<UnitBlock>& blocks() const;
  Int exponent() const { return group().exponent(); }
  std::string modulus_string() const;

  bool operator==(const CharacterAmbient& o) const;

 private:
  std::variant<std::shared_ptr<const ModularUnitGroup>, std::shared_ptr<const PolyUnitGroup>> u_;
};

class Character {
 public:
  Character(CharacterAmbient ambient, GroupElement exponents);
  static Character trivial(const CharacterAmbient& ambient);
  // The character with chi(g_i) = zeta_root^{values[i]} on the canonical
  // generators. Throws DomainError if those values are inconsistent with
  // the generator orders.
  static Character from_generator_values(const CharacterAmbient& ambient, const std::vector<Int>& values,
                                         Int root_order);

  const CharacterAmbient& ambient() const { return ambient_; }
  const GroupElement& exponents() const { return a_; }
  Int order() const;
  bool is_trivial() const;

  // Value as an exponent of zeta_E, E = ambient exponent.
  Int value_on(const GroupElement& x) const;
  Int value(Int u) const;
  Int value(const FqPoly& u) const;

  Character operator*(const Character& o) const;
  Character inverse() const;
  // Component at block b: agrees with chi on the b-th CRT factor and is
  // trivial on the others.
  Character component(std::size_t block) const;

  bool operator==(const Character& o) const { return ambient_ == o.ambient_ && a_ == o.a_; }

  std::string to_string() const;

 private:
  CharacterAmbient ambient_;
  GroupElement a_;
};

class CharacterGroup {
 public:
  CharacterGroup(CharacterAmbient ambient, Subgroup dual);
  static CharacterGroup generated(const CharacterAmbient& ambient, const std::vector<Character>& gens);
  static CharacterGroup trivial(const CharacterAmbient& ambient);
  static CharacterGroup full(const CharacterAmbient& ambient);

  const CharacterAmbient& ambient() const { return ambient_; }
  const Subgroup& dual() const { return dual_; }
  Int order() const { return dual_.order(); }
  bool contains(const Character& chi) const;
  bool contains(const CharacterGroup& other) const;
  std::vector<Character> generators() const;
  std::vector<Character> characters(Int bound = Int{1} << 20) const;
  // H = intersection of the kernels, a subgroup of the unit group.
  Subgroup kernel() const;
  CharacterGroup component(std::size_t block) const;

  bool operator==(const CharacterGroup& o) const { return ambient_ == o.ambient_ && dual_ == o.dual_; }

  std::string to_string() const;

 private:
  CharacterAmbient ambient_;
  Subgroup dual_;
};

inline std::ostream& operator<<(std::ostream& os, const Character& c) { return os << c.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const CharacterGroup& x) { return os << x.to_string(); }

CharacterGroup join(const CharacterGroup& a, const CharacterGroup& b);
CharacterGroup meet(const CharacterGroup& a, const CharacterGroup& b);
// Characters of the subgroup-annihilator: {chi : chi(h) = 1 for all h in H}.
CharacterGroup annihilator(const CharacterAmbient& ambient, const Subgroup& h);

// Pulls X back along (R/N')* -> (R/N)* for N | N'.
Character lift(const Character& chi, const CharacterAmbient& target);
CharacterGroup lift(const CharacterGroup& x, const CharacterAmbient& target);

struct Component {
  std::string label;
  Int prime = 0;                 // numeric ambient
  std::optional<FqPoly> place;   // function-field ambient
  std::size_t block = 0;
  CharacterGroup group;
};

// One entry per CRT block of the ambient, in block order.
std::vector<Component> component_decompose(const CharacterGroup& x);

// Conductor as an integer (numeric) or monic polynomial (function field).
using Conductor = std::variant<Int, FqPoly>;
Conductor conductor(const Character& chi);
Conductor conductor(const CharacterGroup& x);
std::string conductor_string(const Conductor& c);

Parity parity(const Character& chi);

bool is_fundamental_discriminant(Int d);
// Kronecker symbol (d / a) for a >= 1.
int kronecker_symbol(Int d, Int a);
Character kronecker_character(Int d, Int bound = kDefaultUnitGroupBound);

struct RamificationEntry {
  std::string label;
  Int prime = 0;                // residue characteristic
  std::optional<FqPoly> place;  // function-field ambient
  Int e = 1;
  Int tame = 1;
  Int wild = 1;
};

// Entries for the components with |X_p| > 1.
std::vector<RamificationEntry> ramification_exponents(const CharacterGroup& x);

}  // namespace genus
