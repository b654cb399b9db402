#pragma once

// Finite abelian groups presented as products of cyclic factors, and their
// subgroups stored as integer lattices in canonical Hermite form.
//
// A group G = Z/d_1 x ... x Z/d_k is identified with Z^k / D Z^k where
// D = diag(d_1, ..., d_k). A subgroup H corresponds to the lattice
// L = pi^{-1}(H) with D Z^k <= L <= Z^k, and L has a unique upper
// triangular Hermite basis (positive pivots, entries above each pivot
// reduced into [0, pivot)). Two Subgroup values compare equal exactly when
// they describe the same subgroup.

#include <compare>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "genus/arith.hpp"

namespace genus {

struct GroupElement {
  std::vector<Int> exponents;

  GroupElement() = default;
  explicit GroupElement(std::vector<Int> e) : exponents(std::move(e)) {}
  GroupElement(std::initializer_list<Int> e) : exponents(e) {}

  std::size_t size() const { return exponents.size(); }
  Int operator[](std::size_t i) const { return exponents[i]; }
  Int& operator[](std::size_t i) { return exponents[i]; }

  auto operator<=>(const GroupElement&) const = default;
};

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  // Cyclic factor orders, each >= 2. The factors need not form a
  // divisibility chain; invariant_factors() gives the canonical chain.
  explicit FiniteAbelianGroup(std::vector<Int> cyclic_orders);
  static FiniteAbelianGroup cyclic(Int n);
  // Builds the group from an invariant-factor chain, validating d_i | d_{i+1}.
  static FiniteAbelianGroup from_invariant_factors(std::vector<Int> chain);

  std::size_t rank() const { return moduli_.size(); }
  const std::vector<Int>& moduli() const { return moduli_; }
  Int order() const { return order_; }
  Int exponent() const;
  std::vector<Int> invariant_factors() const;
  bool is_isomorphic(const FiniteAbelianGroup& other) const;

  GroupElement identity() const;
  GroupElement generator(std::size_t i) const;
  // Reduces an arbitrary integer vector of matching length.
  GroupElement reduce(std::vector<Int> v) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, Int k) const;
  Int element_order(const GroupElement& a) const;
  bool is_element(const GroupElement& a) const;
  // Throws DimensionError unless a has the right length.
  void check_dimension(const GroupElement& a) const;

  // All elements in lexicographic order. Throws BoundExceeded above `bound`.
  std::vector<GroupElement> elements(Int bound = Int{1} << 22) const;

  bool operator==(const FiniteAbelianGroup& o) const { return moduli_ == o.moduli_; }

  std::string to_string() const;

 private:
  std::vector<Int> moduli_;
  Int order_ = 1;
};

class Subgroup {
 public:
  // Smallest subgroup containing every generator.
  static Subgroup generated(const FiniteAbelianGroup& ambient, std::span<const GroupElement> gens);
  static Subgroup generated(const FiniteAbelianGroup& ambient, std::initializer_list<GroupElement> gens);
  static Subgroup trivial(const FiniteAbelianGroup& ambient);
  static Subgroup whole(const FiniteAbelianGroup& ambient);
  // {x : sum_i weights[i] * x[i] == 0 mod modulus}. Requires the functional
  // to be well defined on the ambient group.
  static Subgroup kernel_of_functional(const FiniteAbelianGroup& ambient, std::span<const Int> weights,
                                       Int modulus);

  const FiniteAbelianGroup& ambient() const { return ambient_; }
  const std::vector<std::vector<Int>>& echelon() const { return rows_; }
  Int order() const { return order_; }
  Int index() const { return ambient_.order() / order_; }

  bool contains(const GroupElement& x) const;
  bool contains(const Subgroup& other) const;
  bool is_trivial() const { return order_ == 1; }

  // Echelon rows that are nontrivial in the ambient group.
  std::vector<GroupElement> generators() const;
  std::vector<GroupElement> elements(Int bound = Int{1} << 22) const;

  bool is_cyclic() const;
  // Invariant-factor structure of the subgroup itself.
  FiniteAbelianGroup structure() const;
  // Invariant-factor structure of ambient / this.
  FiniteAbelianGroup quotient_structure() const;

  bool operator==(const Subgroup& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }
  auto operator<=>(const Subgroup& o) const { return rows_ <=> o.rows_; }

  std::string to_string() const;

 private:
  Subgroup(FiniteAbelianGroup ambient, std::vector<std::vector<Int>> rows);

  FiniteAbelianGroup ambient_;
  std::vector<std::vector<Int>> rows_;
  Int order_ = 1;
};

Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup product(const Subgroup& a, const Subgroup& b);
inline std::ostream& operator<<(std::ostream& os, const Subgroup& s) { return os << s.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g) { return os << g.to_string(); }

inline Int index(const Subgroup& s) { return s.index(); }
inline bool is_cyclic(const Subgroup& s) { return s.is_cyclic(); }
inline FiniteAbelianGroup quotient_structure(const Subgroup& s) { return s.quotient_structure(); }

// Invariant factors (> 1) of the abelian group Z^n / (row span of m), via
// Smith normal form. Zero diagonal entries are reported as 0 (free part).
std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m);

}  // namespace genus
