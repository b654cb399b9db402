#include "genus/unit_group.hpp"

#include "genus/errors.hpp"

namespace genus {

ModularUnitGroup::ModularUnitGroup(Int n, Int bound) : n_(n) {
  if (n < 2 || n > bound)
    throw BoundExceeded("unit group modulus " + std::to_string(n) + " outside [2, " + std::to_string(bound) + "]");
  std::vector<Int> moduli;
  for (auto [p, k] : factorize(n)) {
    PrimePower part{p, k, checked_pow(p, static_cast<unsigned>(k)), {}, {}};
    std::vector<Int> orders;
    if (p == 2) {
      if (k == 2) {
        part.local_gens = {3};
        orders = {2};
      } else if (k >= 3) {
        part.local_gens = {part.pk - 1, 5};
        orders = {2, part.pk / 4};
      }
    } else {
      part.local_gens = {primitive_root(p, k)};
      orders = {part.pk / p * (p - 1)};
    }
    part.table.assign(static_cast<std::size_t>(part.pk), {});
    // Enumerate all exponent vectors and record their residues.
    std::vector<int32_t> e(orders.size(), 0);
    Int total = 1;
    for (Int o : orders) total *= o;
    for (Int idx = 0; idx < total; ++idx) {
      Int r = 1;
      for (std::size_t i = 0; i < orders.size(); ++i) r = mulmod(r, powmod(part.local_gens[i], e[i], part.pk), part.pk);
      part.table[static_cast<std::size_t>(r)] = e;
      for (std::size_t i = orders.size(); i-- > 0;) {
        if (++e[i] < orders[i]) break;
        e[i] = 0;
      }
    }

    UnitBlock block{std::to_string(p), {}};
    Int cofactor = n / part.pk;
    Int inv = part.pk == 1 ? 0 : inverse_mod(mod(cofactor, part.pk), part.pk);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      block.coords.push_back(moduli.size());
      moduli.push_back(orders[i]);
      Int r = part.local_gens[i];
      // x == r mod p^k, x == 1 mod n/p^k
      Int t = mulmod(mod(r - 1, part.pk), inv, part.pk);
      gens_.push_back(mod(1 + static_cast<Int>(static_cast<__int128>(cofactor) * t % n), n));
    }
    blocks_.push_back(std::move(block));
    primes_.push_back(p);
    exps_.push_back(k);
    parts_.push_back(std::move(part));
  }
  group_ = FiniteAbelianGroup(std::move(moduli));
}

GroupElement ModularUnitGroup::dlog(Int u) const {
  u = mod(u, n_);
  if (gcd(u, n_) != 1) throw DomainError(std::to_string(u) + " is not a unit modulo " + std::to_string(n_));
  GroupElement out = group_.identity();
  std::size_t coord = 0;
  for (const auto& part : parts_) {
    const auto& e = part.table[static_cast<std::size_t>(u % part.pk)];
    for (int32_t x : e) out[coord++] = x;
  }
  return out;
}

Int ModularUnitGroup::exp(const GroupElement& e) const {
  group_.check_dimension(e);
  Int r = 1 % n_;
  for (std::size_t i = 0; i < e.size(); ++i) r = mulmod(r, powmod(gens_[i], mod(e[i], group_.moduli()[i]), n_), n_);
  return r;
}

std::vector<Int> ModularUnitGroup::units() const {
  std::vector<Int> out;
  for (Int u = 1; u < n_; ++u)
    if (gcd(u, n_) == 1) out.push_back(u);
  return out;
}

}  // namespace genus
