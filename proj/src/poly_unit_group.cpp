#include "genus/poly_unit_group.hpp"

#include <unordered_map>

#include "genus/errors.hpp"

namespace genus {

namespace {

struct LocalRing {
  FqPoly m;
  int degree;

  FqPoly mul(const FqPoly& a, const FqPoly& b) const { return (a * b) % m; }
  FqPoly pow(const FqPoly& a, Int e) const { return powmod(a, e, m); }
  Int index(const FqPoly& a) const { return encode_residue(a, degree); }
};

// Basis of the p-group U = {1 + P r} inside (R/M)*, with element -> exponent
// map for the whole group.
struct PGroupBasis {
  std::vector<FqPoly> gens;
  std::vector<Int> orders;
  std::unordered_map<Int, std::vector<Int>> span;
};

PGroupBasis p_group_basis(const LocalRing& ring, const std::vector<FqPoly>& elements, Int p) {
  PGroupBasis out;
  const auto& field = ring.m.field();
  const FqPoly one = FqPoly::constant(field, 1);
  out.span.emplace(ring.index(one), std::vector<Int>{});
  std::vector<FqPoly> span_elems{one};
  const Int total = static_cast<Int>(elements.size());
  while (static_cast<Int>(out.span.size()) < total) {
    const Int quotient = total / static_cast<Int>(out.span.size());
    const FqPoly* best = nullptr;
    Int best_order = 1;
    for (const auto& x : elements) {
      if (out.span.count(ring.index(x))) continue;
      Int ord = 1;
      FqPoly y = x;
      while (!out.span.count(ring.index(y))) {
        y = ring.pow(y, p);
        ord *= p;
      }
      if (ord > best_order) {
        best_order = ord;
        best = &x;
        if (ord == quotient) break;
      }
    }
    FqPoly x = *best;
    const auto& c = out.span.at(ring.index(ring.pow(x, best_order)));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] % best_order != 0) throw Error("p-group basis: non-divisible relation");
      Int k = c[i] / best_order;
      if (k) x = ring.mul(x, ring.pow(out.gens[i], out.orders[i] - k));
    }
    if (!ring.pow(x, best_order).is_one()) throw Error("p-group basis: lifted element has wrong order");
    // Extend the span by powers of x.
    std::vector<FqPoly> new_elems;
    std::vector<std::pair<Int, std::vector<Int>>> additions;
    FqPoly xj = one;
    for (Int j = 1; j < best_order; ++j) {
      xj = ring.mul(xj, x);
      for (const auto& s : span_elems) {
        FqPoly v = ring.mul(s, xj);
        auto e = out.span.at(ring.index(s));
        e.push_back(j);
        additions.emplace_back(ring.index(v), std::move(e));
        new_elems.push_back(std::move(v));
      }
    }
    for (auto& [k, e] : out.span) e.push_back(0);
    for (auto& [k, e] : additions) out.span.emplace(k, std::move(e));
    for (auto& v : new_elems) span_elems.push_back(std::move(v));
    out.gens.push_back(x);
    out.orders.push_back(best_order);
  }
  return out;
}

}  // namespace

PolyUnitGroup::PolyUnitGroup(FactoredModulus n, Int bound) : n_(std::move(n)) {
  if (n_.degree() < 1) throw DomainError("unit group modulus must have degree >= 1");
  const auto& field = n_.modulus.field();
  const Int q = field->q();
  const Int p = field->p();
  const FqPoly one = FqPoly::constant(field, 1);
  std::vector<Int> moduli;
  for (const auto& [P, a] : n_.factors) {
    Part part{one, one, one, 0, 0, {}, {}};
    FqPoly M = one;
    for (int i = 0; i < a; ++i) M = M * P;
    part.modulus = M;
    part.degree = M.degree();
    Int size = 1;
    for (int i = 0; i < part.degree; ++i) {
      size = checked_mul(size, q);
      if (size > bound) throw BoundExceeded("local residue ring exceeds bound " + std::to_string(bound));
    }
    LocalRing ring{M, part.degree};
    const int d = P.degree();
    const Int qd = checked_pow(q, static_cast<unsigned>(d));
    const Int cyc = qd - 1;
    const Int u1_order = size / qd;

    std::vector<Int> orders;
    FqPoly g = one;
    if (cyc > 1) {
      auto primes = factorize(cyc);
      for (Int idx = 1; idx < size; ++idx) {
        FqPoly x = decode_residue(field, idx, part.degree);
        if ((x % P).is_zero()) continue;
        FqPoly y = ring.pow(x, u1_order);
        bool ok = true;
        for (auto [l, e] : primes)
          if (ring.pow(y, cyc / l).is_one()) {
            ok = false;
            break;
          }
        if (ok) {
          g = y;
          break;
        }
      }
      part.gens.push_back(g);
      orders.push_back(cyc);
    }

    std::vector<FqPoly> u1;
    u1.reserve(static_cast<std::size_t>(u1_order));
    for (Int idx = 0; idx < u1_order; ++idx)
      u1.push_back(one + P * decode_residue(field, idx, part.degree - d));
    PGroupBasis basis = p_group_basis(ring, u1, p);
    for (std::size_t i = 0; i < basis.gens.size(); ++i) {
      part.gens.push_back(basis.gens[i]);
      orders.push_back(basis.orders[i]);
    }
    part.rank = orders.size();

    part.table.assign(static_cast<std::size_t>(size) * part.rank, -1);
    FqPoly gj = one;
    const Int cyc_count = cyc > 1 ? cyc : 1;
    const std::size_t off = cyc > 1 ? 1 : 0;
    for (Int j = 0; j < cyc_count; ++j) {
      for (const auto& [k, e] : basis.span) {
        FqPoly v = ring.mul(gj, decode_residue(field, k, part.degree));
        std::size_t base = static_cast<std::size_t>(ring.index(v)) * part.rank;
        if (off) part.table[base] = static_cast<int32_t>(j);
        for (std::size_t i = 0; i < e.size(); ++i) part.table[base + off + i] = static_cast<int32_t>(e[i]);
      }
      gj = ring.mul(gj, g);
    }

    part.cofactor = n_.modulus / M;
    part.cofactor_inverse = inverse_mod(part.cofactor % M, M);
    UnitBlock block{P.to_string(), {}};
    for (std::size_t i = 0; i < part.rank; ++i) {
      block.coords.push_back(moduli.size());
      moduli.push_back(orders[i]);
      FqPoly t = ((part.gens[i] - one) * part.cofactor_inverse) % M;
      gens_.push_back((one + part.cofactor * t) % n_.modulus);
    }
    blocks_.push_back(std::move(block));
    parts_.push_back(std::move(part));
  }
  group_ = FiniteAbelianGroup(std::move(moduli));
}

GroupElement PolyUnitGroup::dlog(const FqPoly& u) const {
  FqPoly r = u % n_.modulus;
  if (!gcd(r, n_.modulus).is_one())
    throw DomainError(u.to_string() + " is not a unit modulo " + n_.modulus.to_string());
  GroupElement out = group_.identity();
  std::size_t coord = 0;
  for (const auto& part : parts_) {
    Int idx = encode_residue(r % part.modulus, part.degree);
    std::size_t base = static_cast<std::size_t>(idx) * part.rank;
    for (std::size_t i = 0; i < part.rank; ++i) out[coord++] = part.table[base + i];
  }
  return out;
}

FqPoly PolyUnitGroup::exp(const GroupElement& e) const {
  group_.check_dimension(e);
  FqPoly r = FqPoly::constant(field(), 1) % n_.modulus;
  for (std::size_t i = 0; i < e.size(); ++i)
    r = (r * powmod(gens_[i], mod(e[i], group_.moduli()[i]), n_.modulus)) % n_.modulus;
  return r;
}

std::vector<FqPoly> PolyUnitGroup::units() const {
  std::vector<FqPoly> out;
  Int size = 1;
  for (int i = 0; i < n_.degree(); ++i) size = checked_mul(size, field()->q());
  for (Int idx = 0; idx < size; ++idx) {
    FqPoly r = decode_residue(field(), idx, n_.degree());
    if (gcd(r, n_.modulus).is_one()) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace genus
