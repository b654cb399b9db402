#include "genus/genus_number.hpp"

#include "genus/errors.hpp"

namespace genus {

CharacterGroup extended_genus_characters(const CharacterGroup& x) {
  auto y = CharacterGroup::trivial(x.ambient());
  for (const auto& c : component_decompose(x)) y = join(y, c.group);
  return y;
}

CharacterGroup plus_part(const CharacterGroup& x) {
  const auto& amb = x.ambient();
  const auto& u = amb.numeric_units();
  auto minus_one = Subgroup::generated(amb.group(), {u.dlog(u.modulus() - 1)});
  return meet(x, annihilator(amb, minus_one));
}

CharacterGroup genus_characters(const CharacterGroup& x) {
  return join(x, plus_part(extended_genus_characters(x)));
}

Int lp_degree_from_local(const LocalPrimeData& data) {
  if (!is_prime(data.p)) throw DomainError("local data needs a prime p");
  if (data.level < 1) throw DomainError("local data level must be >= 1");
  if (data.primes_above.empty()) throw DomainError("local data lists no primes above p");
  const Int pm = checked_pow(data.p, static_cast<unsigned>(data.level));
  if (pm < 2) throw DomainError("level too small");
  ModularUnitGroup u(pm);
  std::optional<Subgroup> prod;
  for (const auto& pa : data.primes_above) {
    if (pa.e < 1 || pa.f < 1) throw DomainError("ramification index and residue degree must be positive");
    if (!pa.norm_subgroup) throw DomainError("missing norm subgroup for a prime above " + std::to_string(data.p));
    if (!(pa.norm_subgroup->ambient() == u.group()))
      throw DomainError("norm subgroup is not a subgroup of (Z/" + std::to_string(pm) + ")*");
    prod = prod ? product(*prod, *pa.norm_subgroup) : *pa.norm_subgroup;
  }
  Int index = prod->index();
  // Stability: the preimage one level up has the same index.
  ModularUnitGroup up(pm * data.p);
  std::vector<GroupElement> gens;
  for (const auto& g : prod->generators()) gens.push_back(up.dlog(u.exp(g)));
  // Kernel of reduction mod p^m, generated by 1 + p^m.
  gens.push_back(up.dlog(1 + pm));
  auto lifted = Subgroup::generated(up.group(), gens);
  if (lifted.index() != index) throw PrecisionError("lp degree is not stable under raising the level");
  return index;
}

Int tame_degree(Int p, const std::vector<Int>& e) {
  if (p == 2) throw DomainError("tame degree formula is only available for odd p");
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (e.empty()) throw DomainError("no ramification indices given");
  Int g = p - 1;
  for (Int x : e) {
    if (x < 1) throw DomainError("ramification indices must be positive");
    g = gcd(g, x);
  }
  return g;
}

std::string to_string(L2Tag tag) {
  switch (tag) {
    case L2Tag::PlusField:
      return "PlusField";
    case L2Tag::FullCyclotomic:
      return "FullCyclotomic";
    case L2Tag::MinusField:
      return "MinusField";
  }
  return "?";
}

L2Classification classify_l2(const ModularUnitGroup& units, const Subgroup& h, int m) {
  const Int n = units.modulus();
  if (n < 4 || (n & (n - 1)) != 0) throw DomainError("classify_l2 needs (Z/2^k Z)* with k >= 2");
  if (!(h.ambient() == units.group())) throw AmbientMismatch("subgroup is not in (Z/" + std::to_string(n) + ")*");
  int m0 = 0;
  while ((Int{1} << m0) < n) ++m0;
  const Int index = h.index();
  if ((index & (index - 1)) != 0) throw DomainError("index of H is not a power of 2");
  if (m < 0 || index != (Int{1} << m))
    throw DomainError("index of H is " + std::to_string(index) + ", expected 2^" + std::to_string(m));
  if (m0 < m + 2)
    throw PrecisionError("level 2^" + std::to_string(m0) + " is too small to classify at m = " + std::to_string(m));
  L2Classification out{L2Tag::MinusField, m, {}};
  const std::string plus = "Q(zeta_" + std::to_string(Int{1} << (m + 2)) + ")";
  if (h.contains(units.dlog(n - 1))) {
    out.tag = L2Tag::PlusField;
    out.label = m == 0 ? "Q" : plus + "^+";
    return out;
  }
  // {u == 1 mod 2^{m+1}} is generated by 1 + 2^{m+1} (m >= 1), and is the
  // whole group when m = 0.
  bool full = m == 0 ? h.index() == 1 : h.contains(units.dlog(1 + (Int{1} << (m + 1))));
  if (full) {
    out.tag = L2Tag::FullCyclotomic;
    out.label = m == 0 ? "Q" : "Q(zeta_" + std::to_string(Int{1} << (m + 1)) + ")";
    return out;
  }
  out.label = plus + "^-";
  return out;
}

ComposeResult compose_genus(const CharacterGroup& x1, const CharacterGroup& x2) {
  const Int n1 = x1.ambient().numeric_units().modulus();
  const Int n2 = x2.ambient().numeric_units().modulus();
  const Int n = lcm(n1, n2);
  auto amb = n == n1 ? x1.ambient() : (n == n2 ? x2.ambient() : CharacterAmbient::numeric(n));
  auto a = lift(x1, amb), b = lift(x2, amb);
  auto g = genus_characters(join(a, b));
  auto gp = join(genus_characters(a), genus_characters(b));
  if (!g.contains(gp)) throw Error("genus of the compositum does not contain the product of genus fields");
  return {g, gp, g.order() / gp.order()};
}

namespace {

std::vector<std::vector<Int>> generator_vectors(const CharacterGroup& x) {
  std::vector<std::vector<Int>> out;
  for (const auto& c : x.generators()) out.push_back(c.exponents().exponents);
  return out;
}

}  // namespace

std::vector<PrimeRow> component_rows(const CharacterGroup& x) {
  std::vector<PrimeRow> rows;
  for (const auto& c : component_decompose(x)) {
    const Int e = c.group.order();
    if (e == 1) continue;
    const Int wild = p_part(e, c.prime);
    PrimeRow row{c.label, c.prime, e, e / wild, wild, e, 0};
    auto cond = conductor(c.group);
    if (const Int* n = std::get_if<Int>(&cond)) {
      for (Int v = *n; v % c.prime == 0; v /= c.prime) ++row.conductor_exponent;
    } else {
      FqPoly f = std::get<FqPoly>(cond);
      while (f.degree() > 0 && (f % *c.place).is_zero()) {
        f = f / *c.place;
        ++row.conductor_exponent;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

GenusReport genus_report(const CharacterGroup& x) {
  GenusReport r;
  r.kind = "number";
  r.modulus = x.ambient().modulus_string();
  auto y = extended_genus_characters(x);
  auto g = genus_characters(x);
  r.degree = x.order();
  r.genus_order = g.order();
  r.extended_order = y.order();
  r.genus_degree = g.order() / x.order();
  r.extended_degree = y.order() / x.order();
  r.gap = y.order() / g.order();
  r.primes = component_rows(y);
  r.conductor = conductor_string(conductor(y));
  r.genus_generators = generator_vectors(g);
  r.extended_generators = generator_vectors(y);
  return r;
}

}  // namespace genus
