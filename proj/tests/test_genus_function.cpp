#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "genus/carlitz.hpp"
#include "genus/errors.hpp"
#include "genus/genus_function.hpp"
#include "genus/oracle.hpp"

using namespace genus;

namespace {

FqPoly poly(const FqFieldPtr& f, std::vector<FqPoly::Elem> c) { return FqPoly(f, std::move(c)); }

// All polynomials of degree <= d, zero included.
std::vector<FqPoly> all_polys(const FqFieldPtr& f, int d) {
  std::vector<FqPoly> out;
  const Int q = f->q();
  const Int count = checked_pow(q, static_cast<unsigned>(d + 1));
  for (Int i = 0; i < count; ++i) out.push_back(decode_residue(f, i, d + 1));
  return out;
}

FqPoly pow_poly(const FqPoly& p, int k) {
  FqPoly r = FqPoly::constant(p.field(), 1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

CharacterGroup random_group(const CharacterAmbient& amb, std::mt19937_64& rng) {
  auto elems = amb.group().elements();
  std::vector<Character> v;
  int k = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < k; ++i) v.emplace_back(amb, elems[rng() % elems.size()]);
  return CharacterGroup::generated(amb, v);
}

}  // namespace

TEST(Carlitz, Examples) {
  for (Int q : {2, 3, 4}) {
    auto f = FqField::of_order(q);
    auto t = FqPoly::variable(f);
    auto c = carlitz_action(t);
    ASSERT_EQ(c.coeffs().size(), 2u);
    EXPECT_EQ(c.coeffs()[0], t);
    EXPECT_TRUE(c.coeffs()[1].is_one());
    EXPECT_EQ(carlitz_action(FqPoly::constant(f, 1)), CarlitzPoly::identity(f));
    EXPECT_TRUE(carlitz_action(FqPoly(f)).is_zero());
  }
  auto f2 = FqField::of_order(2);
  auto t = FqPoly::variable(f2);
  auto c = carlitz_action(t * t);
  ASSERT_EQ(c.coeffs().size(), 3u);
  EXPECT_EQ(c.coeffs()[0], t * t);
  EXPECT_EQ(c.coeffs()[1], t * t + t);
  EXPECT_TRUE(c.coeffs()[2].is_one());
  EXPECT_EQ(c.to_string(), "T^2*x+(T^2+T)*x^2+x^4");
  EXPECT_EQ(carlitz_action(t).to_string(), "T*x+x^2");
}

TEST(Carlitz, DegreeAndLeadingCoefficient) {
  for (Int q : {2, 3, 4, 5}) {
    auto f = FqField::of_order(q);
    for (const auto& m : all_polys(f, 3)) {
      if (m.is_zero()) continue;
      auto c = carlitz_action(m);
      ASSERT_EQ(c.q_degree(), m.degree());
      ASSERT_EQ(c.coeffs().back(), FqPoly::constant(f, m.lead()));
      ASSERT_EQ(c.coeffs().front(), m);
    }
  }
}

TEST(Carlitz, AdditivityExhaustive) {
  for (Int q : {2, 3, 4}) {
    auto f = FqField::of_order(q);
    auto polys = all_polys(f, 4);
    std::vector<CarlitzPoly> cs;
    for (const auto& a : polys) cs.push_back(carlitz_action(a));
    std::map<std::vector<FqPoly::Elem>, std::size_t> where;
    for (std::size_t i = 0; i < polys.size(); ++i) where[polys[i].coefficients()] = i;
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = i; j < polys.size(); ++j) {
        auto k = where.at((polys[i] + polys[j]).coefficients());
        ASSERT_EQ(cs[i] + cs[j], cs[k]) << q << " " << polys[i] << " " << polys[j];
      }
  }
}

TEST(Carlitz, CompositionExhaustiveOverF2) {
  auto f = FqField::of_order(2);
  auto polys = all_polys(f, 4);
  std::vector<CarlitzPoly> cs;
  for (const auto& a : polys) cs.push_back(carlitz_action(a));
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < polys.size(); ++j)
      ASSERT_EQ(cs[i].compose(cs[j]), carlitz_action(polys[i] * polys[j])) << polys[i] << " " << polys[j];
}

TEST(Carlitz, CompositionOverF3AndF4) {
  for (Int q : {3, 4}) {
    auto f = FqField::of_order(q);
    // Every pair with deg A + deg B <= 4.
    for (int da = 0; da <= 4; ++da)
      for (const auto& a : all_polys(f, da)) {
        if (a.degree() != da) continue;
        auto ca = carlitz_action(a);
        for (const auto& b : all_polys(f, 4 - da))
          ASSERT_EQ(ca.compose(carlitz_action(b)), carlitz_action(a * b)) << a << " " << b;
      }
    // Scaled monomials c T^i, c' T^j up to degree 4 each. With additivity and
    // F_q-linearity these span all pairs of degree <= 4.
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j)
        for (Int c = 1; c < q; ++c) {
          auto a = FqPoly::monomial(f, static_cast<FqPoly::Elem>(c), i);
          auto b = FqPoly::monomial(f, f->primitive(), j);
          ASSERT_EQ(carlitz_action(a).compose(carlitz_action(b)), carlitz_action(a * b));
        }
    // Composition distributes over sums on both sides.
    std::mt19937_64 rng(51 + q);
    auto polys = all_polys(f, 4);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = polys[rng() % polys.size()], b = polys[rng() % polys.size()], c = polys[rng() % polys.size()];
      auto ca = carlitz_action(a), cb = carlitz_action(b), cc = carlitz_action(c);
      ASSERT_EQ(ca.compose(cb + cc), ca.compose(cb) + ca.compose(cc));
      ASSERT_EQ((ca + cb).compose(cc), ca.compose(cc) + cb.compose(cc));
    }
  }
}

TEST(Carlitz, EvaluationMatchesDenseForm) {
  std::mt19937_64 rng(52);
  for (Int q : {2, 3, 4}) {
    auto f = FqField::of_order(q);
    auto polys = all_polys(f, 2);
    for (int trial = 0; trial < 30; ++trial) {
      auto m = polys[rng() % polys.size()], u = polys[rng() % polys.size()];
      auto c = carlitz_action(m);
      FqPoly dense_value(f), upow = FqPoly::constant(f, 1);
      auto d = c.dense();
      for (const auto& coeff : d) {
        dense_value = dense_value + coeff * upow;
        upow = upow * u;
      }
      ASSERT_EQ(c.evaluate(u), dense_value);
      ASSERT_EQ(carlitz_apply(m, u), dense_value);
    }
  }
  auto f2 = FqField::of_order(2);
  auto t = FqPoly::variable(f2);
  EXPECT_EQ(carlitz_apply(t, t), t * t + t * t);
}

TEST(Torsion, Examples) {
  auto f2 = FqField::of_order(2);
  auto f3 = FqField::of_order(3);
  EXPECT_EQ(torsion_order_check(FqPoly::variable(f2)), 2);
  EXPECT_EQ(torsion_order_check(FqPoly::variable(f3)), 3);
  EXPECT_EQ(torsion_order_check(poly(f2, {1, 1, 1})), 4);
  EXPECT_EQ(torsion_order_check(FqPoly::constant(f3, 2)), 1);
  EXPECT_THROW(torsion_order_check(FqPoly(f2)), DomainError);
  EXPECT_THROW(torsion_order_check(FqPoly::monomial(f2, 1, 30)), BoundExceeded);
}

TEST(Torsion, CountsAllModuli) {
  for (Int q : {2, 3, 4}) {
    auto f = FqField::of_order(q);
    for (int d = 0; checked_pow(q, static_cast<unsigned>(d)) <= 256; ++d)
      for (const auto& n : monic_polynomials(f, d)) ASSERT_EQ(torsion_order_check(n), checked_pow(q, static_cast<unsigned>(d)));
  }
}

TEST(Torsion, PointsOverResidueFields) {
  // The Carlitz module over F_q[T]/Q is R_T/(Q - 1), so its N-torsion has
  // q^{deg gcd(N, Q - 1)} points.
  for (Int q : {2, 3}) {
    auto f = FqField::of_order(q);
    for (int dq = 1; dq <= 3; ++dq)
      for (const auto& qq : monic_irreducibles(f, dq))
        for (int dn = 1; dn <= 3; ++dn)
          for (const auto& n : monic_polynomials(f, dn)) {
            auto c = carlitz_action(n);
            Int roots = 0;
            for (const auto& u : all_polys(f, dq - 1)) roots += c.evaluate_mod(u, qq).is_zero();
            auto g = gcd(n, qq - FqPoly::constant(f, 1));
            ASSERT_EQ(roots, checked_pow(q, static_cast<unsigned>(g.degree()))) << n << " mod " << qq;
          }
  }
}

TEST(IdeleQuotient, Examples) {
  auto f2 = FqField::of_order(2);
  auto f3 = FqField::of_order(3);
  EXPECT_TRUE(idele_quotient_check(factor_modulus(poly(f2, {1, 1, 1}))));
  EXPECT_TRUE(idele_quotient_check(factor_modulus(poly(f2, {0, 0, 1}))));
  auto n = factor_modulus(poly(f3, {0, 1, 1}));
  EXPECT_TRUE(idele_quotient_check(n));
  EXPECT_EQ(PolyUnitGroup(n).group().invariant_factors(), (std::vector<Int>{2, 2}));
  EXPECT_THROW(idele_quotient_check(factor_modulus(FqPoly::monomial(f2, 1, 24)), 1 << 20), BoundExceeded);
}

TEST(IdeleQuotient, RandomSweep) {
  std::mt19937_64 rng(53);
  for (Int q : {2, 3}) {
    auto f = FqField::of_order(q);
    int max_d = 0;
    while (checked_pow(q, static_cast<unsigned>(max_d + 1)) <= (1 << 12)) ++max_d;
    for (int trial = 0; trial < 40; ++trial) {
      int d = 1 + static_cast<int>(rng() % max_d);
      auto all = monic_polynomials(f, d);
      ASSERT_TRUE(idele_quotient_check(factor_modulus(all[rng() % all.size()])));
    }
  }
}

TEST(ExtendedGenusFF, Examples) {
  auto f3 = FqField::of_order(3);
  auto p = poly(f3, {1, 0, 1});
  auto amb = CharacterAmbient::polynomial(p);
  EXPECT_EQ(extended_genus_characters_ff(CharacterGroup::full(amb)), CharacterGroup::full(amb));
  EXPECT_EQ(extended_genus_characters_ff(CharacterGroup::trivial(amb)), CharacterGroup::trivial(amb));

  auto n = poly(f3, {0, 1, 1});
  auto amb2 = CharacterAmbient::polynomial(n);
  auto x = CharacterGroup::generated(amb2, {Character::from_generator_values(amb2, {1, 1}, 2)});
  EXPECT_EQ(extended_genus_characters_ff(x), CharacterGroup::full(amb2));
  EXPECT_EQ(extended_genus_characters_ff(x).order(), 4);

  EXPECT_THROW(extended_genus_characters_ff(CharacterGroup::full(CharacterAmbient::numeric(5))), DomainError);
}

TEST(ExtendedGenusFF, CoprimeProductDecomposes) {
  std::mt19937_64 rng(54);
  for (Int q : {2, 3, 4}) {
    auto f = FqField::of_order(q);
    for (int trial = 0; trial < 20; ++trial) {
      auto as = monic_polynomials(f, 1 + static_cast<int>(rng() % 2));
      auto bs = monic_polynomials(f, 1 + static_cast<int>(rng() % 2));
      auto a = as[rng() % as.size()], b = bs[rng() % bs.size()];
      if (gcd(a, b).degree() != 0) continue;
      auto amb_a = CharacterAmbient::polynomial(a), amb_b = CharacterAmbient::polynomial(b);
      auto amb = CharacterAmbient::polynomial(a * b);
      auto xa = random_group(amb_a, rng), xb = random_group(amb_b, rng);
      auto x = join(lift(xa, amb), lift(xb, amb));
      auto ya = lift(extended_genus_characters_ff(xa), amb), yb = lift(extended_genus_characters_ff(xb), amb);
      EXPECT_EQ(extended_genus_characters_ff(x), join(ya, yb));
      EXPECT_EQ(meet(ya, yb).order(), 1);
      auto y = CharacterGroup::trivial(amb);
      for (const auto& c : component_decompose(x)) y = join(y, c.group);
      EXPECT_EQ(extended_genus_characters_ff(x), y);
    }
  }
}

TEST(GenusFF, GapDividesQMinusOne) {
  for (Int q : {3, 4, 5}) {
    auto f = FqField::of_order(q);
    for (int d = 1; d <= 2; ++d)
      for (const auto& n : monic_polynomials(f, d)) {
        auto amb = CharacterAmbient::polynomial(n);
        auto lat = enumerate_subfields(amb);
        for (const auto& e : lat.entries()) {
          auto g = genus_characters_ff(e.group);
          auto y = extended_genus_characters_ff(e.group);
          ASSERT_TRUE(y.contains(g));
          ASSERT_EQ((q - 1) % (y.order() / g.order()), 0);
          ASSERT_EQ(g, maximal_genus_search(e.group, &lat));
        }
      }
  }
}

TEST(ComponentFields, Examples) {
  auto f3 = FqField::of_order(3);
  auto n = poly(f3, {0, 1}) * poly(f3, {1, 0, 1});
  auto amb = CharacterAmbient::polynomial(n);
  auto cf = component_fields(CharacterGroup::full(amb));
  ASSERT_EQ(cf.size(), 2u);
  EXPECT_EQ(cf[0].place, poly(f3, {0, 1}));
  EXPECT_EQ(cf[0].degree, 2);
  EXPECT_EQ(cf[1].degree, 8);
  EXPECT_EQ(cf[0].conductor_exponent, 1);
  EXPECT_EQ(cf[1].conductor_exponent, 1);

  for (const auto& c : component_fields(CharacterGroup::trivial(amb))) {
    EXPECT_EQ(c.degree, 1);
    EXPECT_EQ(c.conductor_exponent, 0);
  }
  EXPECT_TRUE(ramification_exponents(CharacterGroup::trivial(amb)).empty());

  auto f2 = FqField::of_order(2);
  auto n2 = poly(f2, {0, 1}) * poly(f2, {1, 1, 1});
  auto amb2 = CharacterAmbient::polynomial(n2);
  auto cf2 = component_fields(CharacterGroup::full(amb2));
  ASSERT_EQ(cf2.size(), 2u);
  EXPECT_EQ(cf2[0].degree, 1);
  EXPECT_EQ(cf2[1].degree, 3);
  EXPECT_EQ(cf2[0].conductor_exponent, 0);

  auto amb3 = CharacterAmbient::polynomial(FqPoly::monomial(f2, 1, 3));
  auto cf3 = component_fields(CharacterGroup::full(amb3));
  EXPECT_EQ(cf3[0].degree, 4);
  EXPECT_EQ(cf3[0].conductor_exponent, 3);
}

TEST(ComponentFields, DegreesMultiplyToExtendedOrder) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    Int q = std::vector<Int>{2, 3, 4, 5}[rng() % 4];
    auto f = FqField::of_order(q);
    int d = 1 + static_cast<int>(rng() % 3);
    if (checked_pow(q, d) > 200) d = 2;
    auto all = monic_polynomials(f, d);
    auto amb = CharacterAmbient::polynomial(all[rng() % all.size()]);
    auto x = random_group(amb, rng);
    Int prod = 1;
    for (const auto& c : component_fields(x)) prod *= c.degree;
    EXPECT_EQ(prod, extended_genus_characters_ff(x).order());
  }
}

TEST(TameFF, Examples) {
  EXPECT_EQ(tame_ramification_ff(3, 1, 4), 2);
  EXPECT_EQ(tame_ramification_ff(5, 2, 24), 24);
  EXPECT_EQ(tame_ramification_ff(2, 2, 9), 3);
  EXPECT_THROW(tame_ramification_ff(2, 0, 1), DomainError);
}

TEST(TameFF, MatchesPrimeToPPartOfComponents) {
  std::mt19937_64 rng(56);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    Int q = std::vector<Int>{2, 3, 4, 5, 7}[rng() % 5];
    auto f = FqField::of_order(q);
    auto ps = monic_irreducibles(f, 1 + static_cast<int>(rng() % 2));
    auto p = ps[rng() % ps.size()];
    int a = 1 + static_cast<int>(rng() % 2);
    auto n = pow_poly(p, a);
    if (checked_pow(q, n.degree()) > 4096) continue;
    auto amb = CharacterAmbient::polynomial(n);
    auto x = random_group(amb, rng);
    for (const auto& e : ramification_exponents(x)) {
      EXPECT_EQ(tame_ramification_ff(q, p.degree(), e.e), e.tame);
      EXPECT_EQ(e.tame * p_part(e.e, f->p()), e.e);
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(EpDegree, Examples) {
  auto f3 = FqField::of_order(3);
  auto t = FqPoly::variable(f3);
  auto u = unit_group_mod(t);
  EXPECT_EQ(ep_degree_from_local(t, 1, {Subgroup::whole(u.group())}).degree, 1);
  EXPECT_EQ(ep_degree_from_local(t, 1, {Subgroup::trivial(u.group())}).degree, 2);

  auto f13 = FqField::of_order(13);
  auto t13 = FqPoly::variable(f13);
  auto u13 = unit_group_mod(t13);
  auto gen = u13.dlog(FqPoly::constant(f13, f13->primitive()));
  auto h4 = Subgroup::generated(u13.group(), {u13.group().scale(gen, 4)});
  auto h6 = Subgroup::generated(u13.group(), {u13.group().scale(gen, 6)});
  ASSERT_EQ(h4.index(), 4);
  ASSERT_EQ(h6.index(), 6);
  auto r = ep_degree_from_local(t13, 1, {h4, h6}, {4, 6});
  EXPECT_EQ(r.degree, 2);
  EXPECT_EQ(r.tame, 2);

  auto u2 = unit_group_mod(t * t);
  EXPECT_THROW(ep_degree_from_local(t, 1, {Subgroup::whole(u2.group())}), DomainError);
  EXPECT_THROW(ep_degree_from_local(t * t, 1, {Subgroup::whole(u2.group())}), DomainError);
}

TEST(EpDegree, ProductIndexMatchesEnumeration) {
  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 40; ++trial) {
    Int q = std::vector<Int>{2, 3, 4}[rng() % 3];
    auto f = FqField::of_order(q);
    auto ps = monic_irreducibles(f, 1);
    auto p = ps[rng() % ps.size()];
    int level = 1 + static_cast<int>(rng() % 3);
    auto pt = pow_poly(p, level);
    auto u = unit_group_mod(pt);
    auto elems = u.group().elements();
    std::vector<Subgroup> hs;
    std::set<FqPoly> prod{FqPoly::constant(f, 1)};
    for (int i = 0; i < 2; ++i) {
      hs.push_back(Subgroup::generated(u.group(), {elems[rng() % elems.size()]}));
      std::set<FqPoly> next;
      for (const auto& a : prod)
        for (const auto& h : hs.back().elements()) next.insert((a * u.exp(h)) % pt);
      prod = next;
    }
    EXPECT_EQ(ep_degree_from_local(p, level, hs).degree, u.group().order() / static_cast<Int>(prod.size()));
  }
}

namespace {

// S norm group by closure inside Z/C x (F_q[pi]/pi^n)*, as explicit pairs.
struct BruteS {
  Int c;
  FqPoly mod;
  std::set<std::pair<Int, FqPoly>> elems;
};

BruteS brute_s(const InfinitePrimeData& data, Int q, int n_max, const PolyUnitGroup& quot) {
  auto f = quot.field();
  const FqPoly mod = FqPoly::monomial(f, 1, n_max);
  Int tl = 1;
  for (const auto& p : data.primes) tl = lcm(tl, p.t);
  const Int c = checked_mul(checked_mul(tl, quot.group().exponent()), 2);
  std::vector<std::pair<Int, FqPoly>> gens;
  for (const auto& p : data.primes) {
    gens.push_back({p.t % c, p.uniformizer_norm.value_or(FqPoly::constant(f, 1)) % mod});
    for (const auto& h : p.norm_subgroup->elements()) gens.push_back({0, quot.exp(h)});
  }
  for (Int a = 1; a < q; ++a) gens.push_back({0, FqPoly::constant(f, static_cast<FqPoly::Elem>(a))});
  BruteS out{c, mod, {{0, FqPoly::constant(f, 1)}}};
  std::vector<std::pair<Int, FqPoly>> frontier(out.elems.begin(), out.elems.end());
  while (!frontier.empty()) {
    std::vector<std::pair<Int, FqPoly>> next;
    for (const auto& [k, u] : frontier)
      for (const auto& [gk, gu] : gens) {
        std::pair<Int, FqPoly> e{(k + gk) % c, (u * gu) % mod};
        if (out.elems.insert(e).second) next.push_back(e);
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST(SField, Examples) {
  InfinitePrimeData split;
  auto quot = infinity_unit_quotient(3, 2);
  for (int i = 0; i < 3; ++i) split.primes.push_back({1, 1, Subgroup::whole(quot.group()), std::nullopt});
  auto s = s_field_invariants(split, 3, 2);
  EXPECT_EQ(s.t0, 1);
  EXPECT_EQ(*s.alpha, 0);
  EXPECT_EQ(*s.script_s_index, 1);
  EXPECT_EQ(*s.n0, 0);
  EXPECT_EQ(*s.m0, 1);

  InfinitePrimeData ts;
  for (Int t : {2, 4, 6}) ts.primes.push_back({1, t, std::nullopt, std::nullopt});
  auto s2 = s_field_invariants(ts, 5, 3);
  EXPECT_EQ(s2.t0, 2);
  EXPECT_FALSE(s2.n0.has_value());

  // Wild quadratic at infinity over F_2: the norm group is U^(2).
  auto q2 = infinity_unit_quotient(2, 3);
  auto f2 = q2.field();
  auto u2 = Subgroup::generated(q2.group(), {q2.dlog(poly(f2, {1, 0, 1}))});
  ASSERT_EQ(u2.index(), 2);
  InfinitePrimeData wild{{{2, 1, u2, std::nullopt}}};
  auto s3 = s_field_invariants(wild, 2, 3);
  EXPECT_EQ(*s3.alpha, 1);
  EXPECT_EQ(*s3.script_s_index, 2);
  EXPECT_EQ(*s3.n0, 2);
  EXPECT_EQ(*s3.m0, 1);
  EXPECT_EQ(*s3.f_infinity, 1);

  // Same with pi (1 + pi) as the norm of a uniformizer.
  InfinitePrimeData twisted{{{2, 1, u2, poly(f2, {1, 1})}}};
  auto s4 = s_field_invariants(twisted, 2, 3);
  EXPECT_EQ(*s4.m0, 2);
  EXPECT_EQ(*s4.e_over_wild, 2);

  InfinitePrimeData partial{{{1, 1, Subgroup::whole(quot.group()), std::nullopt}, {1, 1, std::nullopt, std::nullopt}}};
  EXPECT_THROW(s_field_invariants(partial, 3, 2), DomainError);
  InfinitePrimeData wrong_e{{{3, 1, u2, std::nullopt}}};
  EXPECT_THROW(s_field_invariants(wrong_e, 2, 3), DomainError);
  InfinitePrimeData deep{{{4, 1, Subgroup::trivial(q2.group()), std::nullopt}}};
  EXPECT_THROW(s_field_invariants(deep, 2, 3), PrecisionError);
}

TEST(SField, T0IsGcdOnRandomTuples) {
  std::mt19937_64 rng(58);
  for (int trial = 0; trial < 100; ++trial) {
    InfinitePrimeData d;
    Int g = 0;
    int r = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < r; ++i) {
      Int t = 1 + static_cast<Int>(rng() % 24);
      g = gcd(g, t);
      d.primes.push_back({1, t, std::nullopt, std::nullopt});
    }
    EXPECT_EQ(s_field_invariants(d, 3, 2).t0, g);
  }
}

TEST(SField, MatchesExplicitClosure) {
  std::mt19937_64 rng(59);
  int done = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Int q = std::vector<Int>{2, 3, 4}[rng() % 3];
    int n_max = 2 + static_cast<int>(rng() % 2);
    auto quot = infinity_unit_quotient(q, n_max);
    auto elems = quot.group().elements();
    auto units = quot.units();
    InfinitePrimeData d;
    int r = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < r; ++i) {
      auto h = Subgroup::generated(quot.group(), {elems[rng() % elems.size()], elems[rng() % elems.size()]});
      Int t = 1 + static_cast<Int>(rng() % 4);
      d.primes.push_back({h.index(), t, h, units[rng() % units.size()]});
    }
    SFieldInvariants s;
    try {
      s = s_field_invariants(d, q, n_max);
    } catch (const PrecisionError&) {
      continue;
    }
    ++done;
    auto b = brute_s(d, q, n_max, quot);
    auto f = quot.field();
    const FqPoly one = FqPoly::constant(f, 1);
    Int unit_count = 0, fv = b.c;
    for (const auto& [k, u] : b.elems) {
      unit_count += k == 0;
      fv = gcd(fv, k);
    }
    EXPECT_EQ(*s.script_s_index, quot.group().order() / unit_count);
    EXPECT_EQ(*s.f_infinity, fv);
    EXPECT_EQ(*s.f_infinity, s.t0);
    // n0: least n with every 1 + pi^n r in the group.
    int n0 = 0;
    for (;; ++n0) {
      bool all_in = true;
      for (const auto& u : units) {
        bool in_level = n0 == 0 || (u - one).degree() < 0 || [&] {
          for (int j = 0; j < n0; ++j)
            if ((u - one).coeff(j) != 0) return false;
          return true;
        }();
        if (in_level && !b.elems.count({0, u})) all_in = false;
      }
      if (all_in) break;
    }
    EXPECT_EQ(*s.n0, n0);
    Int m0 = 1;
    while (!b.elems.count({m0 % b.c, one})) ++m0;
    EXPECT_EQ(*s.m0, m0);
    EXPECT_EQ(*s.m0, s.t0 * *s.e_over_wild);
  }
  EXPECT_GT(done, 30);
}

TEST(ReportFF, CyclotomicPrime) {
  auto f3 = FqField::of_order(3);
  auto p = poly(f3, {1, 0, 1});
  auto amb = CharacterAmbient::polynomial(p);
  FFAbelianDescriptor d{factor_modulus(p), CharacterGroup::full(amb), 1, 0};
  auto r = genus_report_ff(d);
  EXPECT_EQ(r.degree, 8);
  EXPECT_EQ(r.extended_degree, 1);
  EXPECT_EQ(r.extended_order, 8);
  ASSERT_EQ(r.primes.size(), 1u);
  EXPECT_EQ(r.primes[0].label, "T^2+1");
  EXPECT_EQ(r.primes[0].e, 8);
}
