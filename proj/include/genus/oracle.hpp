#pragma once

// Brute-force ground truth. Component orders here are computed from value
// tables on the local unit subgroups {u == 1 mod N / P^a}, never through
// the CRT projection used by the main code.

#include <map>
#include <optional>
#include <vector>

#include "genus/characters.hpp"

namespace genus {

inline constexpr Int kDefaultLatticeBound = 20000;

struct SubfieldEntry {
  CharacterGroup group;
  std::vector<Int> component_orders;  // aligned with the ambient blocks
  Int infinity_inertia = 1;           // order of X restricted to {+-1} or F_q^*
  std::optional<bool> even;           // numeric ambient only
};

class SubfieldLattice {
 public:
  const CharacterAmbient& ambient() const { return ambient_; }
  const std::vector<SubfieldEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // Index of the entry equal to x; throws DomainError if absent.
  std::size_t find(const CharacterGroup& x) const;
  std::size_t join_index(std::size_t a, std::size_t b) const;
  std::size_t meet_index(std::size_t a, std::size_t b) const;

 private:
  friend SubfieldLattice enumerate_subfields(const CharacterAmbient& ambient, Int bound);
  explicit SubfieldLattice(CharacterAmbient a) : ambient_(std::move(a)) {}

  CharacterAmbient ambient_;
  std::vector<SubfieldEntry> entries_;
  std::map<Subgroup, std::size_t> index_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::size_t> join_cache_;
};

// Every subgroup of the dual, by join-closure of the cyclic subgroups,
// sorted by order and then canonical form. Throws BoundExceeded when more
// than `bound` subgroups appear.
SubfieldLattice enumerate_subfields(const CharacterAmbient& ambient, Int bound = kDefaultLatticeBound);

// Component orders |X_p| from value tables.
std::vector<Int> brute_component_orders(const CharacterGroup& x);

// Number of subgroups of a finite abelian group, from the p-primary type
// and the Birkhoff count of subgroups of each type.
Int subgroup_count_formula(const FiniteAbelianGroup& g);

// The largest Y with |(X v Y)_p| = |X_p| for every p. Asserts that the set
// of such Y is closed under join.
CharacterGroup maximal_extended_search(const CharacterGroup& x, const SubfieldLattice* lattice = nullptr);

// The largest Y as above that in addition keeps the order of the
// restriction to the inertia at infinity ({+-1}, or F_q^*) equal to that
// of X. For Q this is: X v Y stays even when X is even.
CharacterGroup maximal_genus_search(const CharacterGroup& x, const SubfieldLattice* lattice = nullptr);

}  // namespace genus
