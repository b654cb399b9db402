#pragma once

// The unit group (F_q[T]/N)* with an explicit cyclic decomposition and
// discrete-log tables.

#include <cstdint>
#include <vector>

#include "genus/abelian_group.hpp"
#include "genus/fq_poly.hpp"
#include "genus/unit_group.hpp"

namespace genus {

inline constexpr Int kDefaultPolyUnitBound = Int{1} << 20;

class PolyUnitGroup {
 public:
  // Each local factor (R/P^a)* is split as the cyclic group F_{q^d}^*
  // (d = deg P) times the p-group 1 + P R / P^a; the latter gets a basis by
  // greedy maximal-order selection. Throws BoundExceeded when q^{deg P^a}
  // exceeds `bound` for some factor, DomainError when deg N < 1.
  explicit PolyUnitGroup(FactoredModulus n, Int bound = kDefaultPolyUnitBound);

  const FactoredModulus& modulus() const { return n_; }
  const FqFieldPtr& field() const { return n_.modulus.field(); }
  const FiniteAbelianGroup& group() const { return group_; }
  // One block per monic irreducible factor, labelled by the polynomial.
  const std::vector<UnitBlock>& blocks() const { return blocks_; }
  // Residues mod N of the canonical generators, one per coordinate.
  const std::vector<FqPoly>& generators() const { return gens_; }
  // Local generators: residues mod P_i^{a_i} for the coordinates of block i.
  const std::vector<FqPoly>& local_generators(std::size_t block) const { return parts_[block].gens; }
  const FqPoly& local_modulus(std::size_t block) const { return parts_[block].modulus; }

  GroupElement dlog(const FqPoly& u) const;
  FqPoly exp(const GroupElement& e) const;
  std::vector<FqPoly> units() const;

 private:
  struct Part {
    FqPoly modulus;     // P^a
    FqPoly cofactor_inverse;  // (N / P^a)^{-1} mod P^a
    FqPoly cofactor;
    int degree = 0;
    std::size_t rank = 0;
    std::vector<FqPoly> gens;
    std::vector<int32_t> table;  // residue index -> rank exponents, -1 for non-units
  };

  FactoredModulus n_;
  FiniteAbelianGroup group_;
  std::vector<Part> parts_;
  std::vector<UnitBlock> blocks_;
  std::vector<FqPoly> gens_;
};

inline PolyUnitGroup unit_group_mod(const FqPoly& n, Int bound = kDefaultPolyUnitBound) {
  return PolyUnitGroup(factor_modulus(n, bound), bound);
}

}  // namespace genus
