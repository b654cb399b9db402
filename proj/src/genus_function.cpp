#include "genus/genus_function.hpp"

#include <cstdint>
#include <set>

#include "genus/errors.hpp"

namespace genus {

namespace {

void require_poly(const CharacterGroup& x) {
  if (x.ambient().is_numeric()) throw DomainError("expected characters of (F_q[T]/N)*");
}

Int field_units(Int q, int d) { return checked_pow(q, static_cast<unsigned>(d)) - 1; }

// Additive generators 1 + c T^i P^t of the kernel of reduction from P^{t+1}
// to P^t, with c running over an F_p-basis of F_q.
}  // namespace

std::vector<FqPoly> level_kernel_generators(const FqPoly& p, int t) {
  const auto& f = p.field();
  const FqPoly one = FqPoly::constant(f, 1);
  FqPoly pt = one;
  for (int i = 0; i < t; ++i) pt = pt * p;
  std::vector<FqPoly> out;
  Int c = 1;
  for (int j = 0; j < f->s(); ++j, c *= f->p())
    for (int i = 0; i < p.degree(); ++i)
      out.push_back(one + FqPoly::monomial(f, static_cast<FqPoly::Elem>(c), i) * pt);
  return out;
}

namespace {

// F_p-linear map between residue rings R/A -> R/B, acting on residue
// indices (encode_residue) through their base-p digits.
class DigitMap {
 public:
  template <class F>
  DigitMap(const FqFieldPtr& f, int in_degree, int out_degree, F&& fn)
      : p_(f->p()), in_dim_(in_degree * f->s()), out_dim_(out_degree * f->s()) {
    Int e = 1;
    for (int j = 0; j < in_dim_; ++j, e *= p_) {
      Int idx = encode_residue(fn(decode_residue(f, e, in_degree)), out_degree);
      cols_.push_back(idx);
      std::vector<std::uint8_t> d(out_dim_);
      for (int k = 0; k < out_dim_; ++k, idx /= p_) d[k] = static_cast<std::uint8_t>(idx % p_);
      digits_.push_back(std::move(d));
    }
  }

  Int apply(Int idx) const {
    if (p_ == 2) {
      Int out = 0;
      for (int j = 0; idx; ++j, idx >>= 1)
        if (idx & 1) out ^= cols_[j];
      return out;
    }
    acc_.assign(out_dim_, 0);
    for (int j = 0; j < in_dim_; ++j, idx /= p_) {
      const Int c = idx % p_;
      if (!c) continue;
      for (int k = 0; k < out_dim_; ++k) acc_[k] = (acc_[k] + c * digits_[j][k]) % p_;
    }
    Int out = 0;
    for (int k = out_dim_ - 1; k >= 0; --k) out = out * p_ + acc_[k];
    return out;
  }

 private:
  Int p_;
  int in_dim_, out_dim_;
  std::vector<Int> cols_;
  std::vector<std::vector<std::uint8_t>> digits_;
  mutable std::vector<Int> acc_;
};

}  // namespace

bool idele_quotient_check(const FactoredModulus& n, Int bound) {
  PolyUnitGroup global(n, bound);
  const auto& f = n.modulus.field();
  const Int q = f->q();
  const int deg = n.modulus.degree();
  // The local factors (R/P^a)*, each with its own cyclic presentation.
  struct Local {
    FqPoly modulus;
    std::vector<FqPoly> gens;
    std::vector<Int> orders;
  };
  std::vector<Local> locals;
  std::vector<Int> moduli;
  Int local_order = 1;
  if (global.blocks().size() != n.factors.size()) return false;
  for (std::size_t b = 0; b < global.blocks().size(); ++b) {
    Local l{global.local_modulus(b), global.local_generators(b), {}};
    for (std::size_t c : global.blocks()[b].coords) l.orders.push_back(global.group().moduli()[c]);
    if (l.orders.size() != l.gens.size()) return false;
    Int order = 1;
    for (Int o : l.orders) order = checked_mul(order, o);
    // |(R/P^a)*| = q^{d(a-1)} (q^d - 1).
    bool matched = false;
    for (const auto& [p, a] : n.factors) {
      FqPoly pa = FqPoly::constant(p.field(), 1);
      for (int i = 0; i < a; ++i) pa = pa * p;
      if (!(pa == l.modulus)) continue;
      matched = true;
      Int expect = checked_mul(checked_pow(q, static_cast<unsigned>(p.degree() * (a - 1))), field_units(q, p.degree()));
      if (order != expect) return false;
    }
    if (!matched) return false;
    moduli.insert(moduli.end(), l.orders.begin(), l.orders.end());
    local_order = checked_mul(local_order, order);
    locals.push_back(std::move(l));
  }
  FiniteAbelianGroup prod(moduli);
  if (global.group().order() != local_order) return false;
  const std::size_t rank = moduli.size();

  // Local discrete logs and unit flags, indexed by residue.
  std::vector<std::vector<std::int32_t>> tables;
  std::vector<std::vector<char>> local_units;
  std::vector<DigitMap> reduce;
  for (const auto& l : locals) {
    const FqPoly& m = l.modulus;
    const std::size_t r = l.gens.size();
    const int dm = m.degree();
    for (const auto& g : l.gens)
      if (!gcd(g, m).is_one()) return false;
    const auto count = static_cast<std::size_t>(checked_pow(q, static_cast<unsigned>(dm)));
    // Walk the products prod g_k^{e_k} in mixed-radix order of e; they must
    // be distinct, which makes the presentation exact.
    std::vector<Int> walk{encode_residue(FqPoly::constant(f, 1) % m, dm)};
    for (std::size_t k = 0; k < r; ++k) {
      DigitMap mul(f, dm, dm, [&](const FqPoly& u) { return (l.gens[k] * u) % m; });
      const Int order = l.orders[k];
      std::vector<Int> next;
      next.reserve(walk.size() * static_cast<std::size_t>(order));
      std::vector<Int> cur = walk;
      for (Int j = 0; j < order; ++j) {
        next.insert(next.end(), cur.begin(), cur.end());
        for (auto& x : cur) x = mul.apply(x);
      }
      walk = std::move(next);
    }
    std::vector<std::int32_t> t(count * r, 0);
    std::vector<char> flag(count, 0);
    for (std::size_t pos = 0; pos < walk.size(); ++pos) {
      const auto idx = static_cast<std::size_t>(walk[pos]);
      if (flag[idx]) return false;
      flag[idx] = 1;
      // pos = sum e_k * (m_0 ... m_{k-1}).
      std::size_t rest = pos;
      for (std::size_t k = 0; k < r; ++k) {
        const auto mk = static_cast<std::size_t>(l.orders[k]);
        t[idx * r + k] = static_cast<std::int32_t>(rest % mk);
        rest /= mk;
      }
    }
    tables.push_back(std::move(t));
    local_units.push_back(std::move(flag));
    reduce.emplace_back(f, deg, m.degree(), [&](const FqPoly& u) { return u % m; });
  }

  // Image of every residue in the product of the local groups.
  const Int size = checked_pow(q, static_cast<unsigned>(deg));
  if (size > bound) throw BoundExceeded("idele check enumerates " + std::to_string(size) + " residues");
  std::vector<std::int32_t> images(static_cast<std::size_t>(size) * rank, -1);
  std::vector<char> is_unit(static_cast<std::size_t>(size), 0);
  std::vector<char> seen(static_cast<std::size_t>(prod.order()), 0);
  Int units = 0;
  for (Int u = 0; u < size; ++u) {
    std::int32_t* img = &images[static_cast<std::size_t>(u) * rank];
    std::size_t c = 0;
    bool unit = true;
    for (std::size_t i = 0; i < locals.size() && unit; ++i) {
      const std::size_t r = locals[i].gens.size();
      const auto idx = static_cast<std::size_t>(reduce[i].apply(u));
      unit = local_units[i][idx];
      for (std::size_t k = 0; k < r; ++k) img[c++] = tables[i][idx * r + k];
    }
    if (!unit) continue;
    Int code = 0;
    for (std::size_t k = 0; k < rank; ++k) code = code * moduli[k] + img[k];
    if (seen[static_cast<std::size_t>(code)]) return false;
    seen[static_cast<std::size_t>(code)] = 1;
    is_unit[static_cast<std::size_t>(u)] = 1;
    ++units;
  }
  if (units != prod.order()) return false;

  // Homomorphism: image(g u) = image(g) + image(u) for generators g.
  const FqPoly& nm = n.modulus;
  for (const auto& g : global.generators()) {
    DigitMap mul(f, deg, deg, [&](const FqPoly& u) { return (g * u) % nm; });
    const Int gi = encode_residue(g % nm, deg);
    if (!is_unit[static_cast<std::size_t>(gi)]) return false;
    const std::int32_t* ig = &images[static_cast<std::size_t>(gi) * rank];
    for (Int u = 0; u < size; ++u) {
      if (!is_unit[static_cast<std::size_t>(u)]) continue;
      const Int gu = mul.apply(u);
      if (!is_unit[static_cast<std::size_t>(gu)]) return false;
      const std::int32_t* iu = &images[static_cast<std::size_t>(u) * rank];
      const std::int32_t* igu = &images[static_cast<std::size_t>(gu) * rank];
      for (std::size_t k = 0; k < rank; ++k)
        if ((ig[k] + iu[k]) % moduli[k] != igu[k]) return false;
    }
  }
  return true;
}

CharacterGroup extended_genus_characters_ff(const CharacterGroup& x) {
  require_poly(x);
  return extended_genus_characters(x);
}

CharacterGroup infinity_split_part(const CharacterGroup& x) {
  require_poly(x);
  const auto& amb = x.ambient();
  const auto& u = amb.poly_units();
  const auto& f = u.field();
  auto w = FqPoly::constant(f, f->primitive());
  auto constants = Subgroup::generated(amb.group(), {u.dlog(w)});
  return meet(x, annihilator(amb, constants));
}

CharacterGroup genus_characters_ff(const CharacterGroup& x) {
  return join(x, infinity_split_part(extended_genus_characters_ff(x)));
}

std::vector<ComponentField> component_fields(const CharacterGroup& x) {
  require_poly(x);
  std::vector<ComponentField> out;
  auto comps = component_decompose(x);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    for (std::size_t j = 0; j < i; ++j)
      if (meet(c.group, comps[j].group).order() != 1) throw Error("components of distinct primes intersect");
    ComponentField cf{*c.place, c.block, c.group.order(), 0};
    FqPoly cond = std::get<FqPoly>(conductor(c.group));
    while (cond.degree() > 0 && (cond % cf.place).is_zero()) {
      cond = cond / cf.place;
      ++cf.conductor_exponent;
    }
    if (cond.degree() != 0) throw Error("conductor of a component has a foreign factor");
    out.push_back(std::move(cf));
  }
  return out;
}

Int tame_ramification_ff(Int q, int d_p, Int e) {
  if (q < 2 || d_p < 1 || e < 1) throw DomainError("tame_ramification_ff needs q >= 2, d_P >= 1, e >= 1");
  return gcd(field_units(q, d_p), e);
}

EpDegree ep_degree_from_local(const FqPoly& p, int level, const std::vector<Subgroup>& norm_subgroups,
                              const std::vector<Int>& e) {
  if (p.degree() < 1 || !p.is_monic() || !is_irreducible(p)) throw DomainError("P must be monic irreducible");
  if (level < 1) throw DomainError("level must be >= 1");
  if (norm_subgroups.empty()) throw DomainError("no norm subgroups given");
  FqPoly pt = FqPoly::constant(p.field(), 1);
  for (int i = 0; i < level; ++i) pt = pt * p;
  PolyUnitGroup u(FactoredModulus{pt, {{p, level}}});
  std::optional<Subgroup> prod;
  for (const auto& h : norm_subgroups) {
    if (!(h.ambient() == u.group()))
      throw DomainError("norm subgroups are not all at level " + std::to_string(level) + " for P = " + p.to_string());
    prod = prod ? product(*prod, h) : h;
  }
  EpDegree out{prod->index(), std::nullopt};
  // The preimage one level up has the same index.
  PolyUnitGroup up(FactoredModulus{pt * p, {{p, level + 1}}});
  std::vector<GroupElement> gens;
  for (const auto& g : prod->generators()) gens.push_back(up.dlog(u.exp(g)));
  for (const auto& k : level_kernel_generators(p, level)) gens.push_back(up.dlog(k));
  if (Subgroup::generated(up.group(), gens).index() != out.degree)
    throw PrecisionError("E_P degree is not stable under raising the level");
  if (!e.empty()) {
    if (e.size() != norm_subgroups.size()) throw DomainError("one ramification index per norm subgroup is required");
    Int g = field_units(p.field()->q(), p.degree());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 1) throw DomainError("ramification indices must be positive");
      g = gcd(g, e[i]);
    }
    out.tame = g;
  }
  return out;
}

PolyUnitGroup infinity_unit_quotient(Int q, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  auto f = FqField::of_order(q);
  auto pi_n = FqPoly::monomial(f, 1, n_max);
  return PolyUnitGroup(FactoredModulus{pi_n, {{FqPoly::variable(f), n_max}}});
}

SFieldInvariants s_field_invariants(const InfinitePrimeData& data, Int q, int n_max) {
  if (data.primes.empty()) throw DomainError("no primes above infinity");
  SFieldInvariants out;
  Int t0 = 0, tl = 1;
  std::size_t with_norms = 0;
  for (const auto& pr : data.primes) {
    if (pr.t < 1 || pr.e < 1) throw DomainError("e_i and t_i must be positive");
    t0 = gcd(t0, pr.t);
    tl = lcm(tl, pr.t);
    with_norms += pr.norm_subgroup.has_value();
  }
  out.t0 = t0;
  if (with_norms == 0) return out;
  if (with_norms != data.primes.size()) throw DomainError("norm subgroups must be given for every prime above infinity");

  auto quot = infinity_unit_quotient(q, n_max);
  const auto& f = quot.field();
  const auto& qg = quot.group();
  const Int p = f->p();
  // k_inf^* / <pi^C> x U^(n_max) as Z/C x quot, with C large enough that
  // pi^C already lies in the product of the norm groups.
  const Int c = checked_mul(checked_mul(tl, std::max<Int>(qg.exponent(), 1)), 2);
  std::vector<Int> moduli{c};
  moduli.insert(moduli.end(), qg.moduli().begin(), qg.moduli().end());
  FiniteAbelianGroup g(moduli);
  auto embed = [&](Int k, const GroupElement& u) {
    std::vector<Int> v{k};
    v.insert(v.end(), u.exponents.begin(), u.exponents.end());
    return g.reduce(v);
  };
  auto zero_unit = qg.identity();
  std::vector<GroupElement> unit_gens;
  for (std::size_t i = 0; i < qg.rank(); ++i) unit_gens.push_back(embed(0, qg.generator(i)));
  auto units = Subgroup::generated(g, unit_gens);

  std::vector<GroupElement> gens;
  for (const auto& pr : data.primes) {
    if (!(pr.norm_subgroup->ambient() == qg))
      throw DomainError("norm subgroup is not a subgroup of F_q^* x U^(1)/U^(" + std::to_string(n_max) + ")");
    if (pr.norm_subgroup->index() != pr.e)
      throw DomainError("norm subgroup index " + std::to_string(pr.norm_subgroup->index()) + " does not match e = " +
                        std::to_string(pr.e));
    FqPoly un = pr.uniformizer_norm.value_or(FqPoly::constant(f, 1));
    gens.push_back(embed(pr.t, quot.dlog(un % quot.modulus().modulus)));
    for (const auto& h : pr.norm_subgroup->generators()) gens.push_back(embed(0, h));
  }
  // Adjoin the tame units F_q^*.
  gens.push_back(embed(0, quot.dlog(FqPoly::constant(f, f->primitive()))));
  auto s = Subgroup::generated(g, gens);

  auto s_units = intersect(s, units);
  const Int unit_index = units.order() / s_units.order();
  if (p_part(unit_index, p) != unit_index) throw Error("unit index of the S norm group is not a p-power");
  out.script_s_index = unit_index;
  int alpha = 0;
  for (Int v = unit_index; v > 1; v /= p) ++alpha;
  out.alpha = alpha;

  Int fv = c;
  for (const auto& r : s.generators()) fv = gcd(fv, r.exponents[0]);
  out.f_infinity = fv;
  if (fv != t0) throw Error("f_inf(S|k) differs from gcd(t_i)");

  // U^(n) for n >= 1 is generated by 1 + c pi^j, j >= n, c in an F_p-basis.
  auto higher_units = [&](int n) {
    if (n == 0) return units;
    std::vector<GroupElement> hg;
    const FqPoly one = FqPoly::constant(f, 1);
    for (int j = n; j < n_max; ++j) {
      Int b = 1;
      for (int k = 0; k < f->s(); ++k, b *= p)
        hg.push_back(embed(0, quot.dlog(one + FqPoly::monomial(f, static_cast<FqPoly::Elem>(b), j))));
    }
    return Subgroup::generated(g, hg);
  };
  int n0 = 0;
  while (n0 <= n_max && !s.contains(higher_units(n0))) ++n0;
  if (n0 >= n_max) throw PrecisionError("U^(n0) inside S not reached below n_max = " + std::to_string(n_max) + "; raise n_max");
  out.n0 = n0;

  Int m0 = 1;
  while (!s.contains(embed(m0, zero_unit))) ++m0;
  out.m0 = m0;
  auto s_wild = Subgroup::generated(g, [&] {
    auto v = s.generators();
    v.push_back(embed(1, zero_unit));
    return v;
  }());
  const Int e_wild = intersect(s_wild, units).order() / s_units.order();
  out.e_over_wild = e_wild;
  if (m0 != checked_mul(t0, e_wild)) throw Error("conductor of constants disagrees with t0 * e_inf(S | S cap L_n0)");
  return out;
}

GenusReport genus_report_ff(const FFAbelianDescriptor& d) {
  const auto& x = d.x;
  require_poly(x);
  if (!(x.ambient().poly_units().modulus().modulus == d.modulus.modulus))
    throw AmbientMismatch("character group is not over the descriptor modulus");
  if (d.constants_degree < 1) throw DomainError("constants degree must be >= 1");
  if (d.wild_infinity_index < 0) throw DomainError("wild infinity index must be >= 0");
  GenusReport r;
  r.kind = "function";
  r.modulus = x.ambient().modulus_string();
  auto y = extended_genus_characters_ff(x);
  auto gk = genus_characters_ff(x);
  r.degree = x.order();
  r.genus_order = gk.order();
  r.extended_order = y.order();
  r.genus_degree = gk.order() / x.order();
  r.extended_degree = y.order() / x.order();
  r.gap = y.order() / gk.order();
  r.primes = component_rows(y);
  r.conductor = conductor_string(conductor(y));
  for (const auto& c : gk.generators()) r.genus_generators.push_back(c.exponents().exponents);
  for (const auto& c : y.generators()) r.extended_generators.push_back(c.exponents().exponents);
  r.notes.push_back("constants_degree=" + std::to_string(d.constants_degree));
  r.notes.push_back("wild_infinity_index=" + std::to_string(d.wild_infinity_index));
  return r;
}

}  // namespace genus
