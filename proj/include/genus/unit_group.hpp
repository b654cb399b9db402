#pragma once

// The unit group (Z/nZ)* with an explicit cyclic decomposition and
// discrete-log tables.

#include <cstddef>
#include <string>
#include <vector>

#include "genus/abelian_group.hpp"

namespace genus {

// Coordinates of the ambient group that belong to one prime (or one monic
// irreducible, on the function-field side) under the CRT splitting.
struct UnitBlock {
  std::string label;
  std::vector<std::size_t> coords;
};

inline constexpr Int kDefaultUnitGroupBound = 1'000'000;

class ModularUnitGroup {
 public:
  // Structure of (Z/nZ)*: CRT split into prime powers, cyclic for odd p,
  // <-1> x <5> for 2^k with k >= 3.
  explicit ModularUnitGroup(Int n, Int bound = kDefaultUnitGroupBound);

  Int modulus() const { return n_; }
  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<UnitBlock>& blocks() const { return blocks_; }
  // Prime of each block, aligned with blocks().
  const std::vector<Int>& block_primes() const { return primes_; }
  const std::vector<int>& block_exponents() const { return exps_; }
  // Residues mod n of the canonical generators, one per coordinate.
  const std::vector<Int>& generators() const { return gens_; }

  GroupElement dlog(Int u) const;
  Int exp(const GroupElement& e) const;
  std::vector<Int> units() const;

 private:
  struct PrimePower {
    Int p;
    int k;
    Int pk;
    std::vector<Int> local_gens;                 // residues mod p^k
    std::vector<std::vector<int32_t>> table;     // residue mod p^k -> local exponents
  };

  Int n_;
  FiniteAbelianGroup group_;
  std::vector<PrimePower> parts_;
  std::vector<UnitBlock> blocks_;
  std::vector<Int> primes_;
  std::vector<int> exps_;
  std::vector<Int> gens_;
};

// Free-function form: the structure of (Z/nZ)* together with its dlog map.
inline ModularUnitGroup unit_group(Int n, Int bound = kDefaultUnitGroupBound) { return ModularUnitGroup(n, bound); }

}  // namespace genus
