#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "genus/errors.hpp"
#include "genus/fq_poly.hpp"
#include "genus/poly_unit_group.hpp"

using namespace genus;

namespace {

FqPoly poly(const FqFieldPtr& f, std::vector<FqPoly::Elem> c) { return FqPoly(f, std::move(c)); }

FqPoly random_poly(const FqFieldPtr& f, int degree, std::mt19937_64& rng, bool monic = false) {
  std::uniform_int_distribution<Int> coef(0, f->q() - 1);
  std::vector<FqPoly::Elem> c(degree + 1);
  for (auto& x : c) x = static_cast<FqPoly::Elem>(coef(rng));
  if (monic) c.back() = 1;
  else if (c.back() == 0) c.back() = 1;
  return FqPoly(f, std::move(c));
}

// Schoolbook remainder over a prime field on plain integer vectors.
std::vector<Int> schoolbook_mod(std::vector<Int> a, const std::vector<Int>& b, Int p) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  const int db = static_cast<int>(b.size()) - 1;
  Int inv = 1;
  while (inv * b.back() % p != 1) ++inv;
  while (static_cast<int>(a.size()) - 1 >= db) {
    Int c = a.back() * inv % p;
    int shift = static_cast<int>(a.size()) - 1 - db;
    for (int i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

bool irreducible_by_trial_division(const FqPoly& f) {
  for (int d = 1; 2 * d <= f.degree(); ++d)
    for (const auto& g : monic_polynomials(f.field(), d))
      if ((f % g).is_zero()) return false;
  return true;
}

Int mobius(Int n) {
  Int r = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    r = -r;
  }
  return r;
}

// Order of u given that u^group_order == 1, by stripping prime factors.
Int multiplicative_order(const FqPoly& u, const FqPoly& n, Int group_order) {
  EXPECT_TRUE(powmod(u, group_order, n).is_one());
  Int k = group_order;
  for (auto [l, e] : factorize(group_order))
    while (k % l == 0 && powmod(u, k / l, n).is_one()) k /= l;
  return k;
}

std::map<Int, Int> order_histogram(const FiniteAbelianGroup& g) {
  std::map<Int, Int> h;
  for (const auto& e : g.elements()) ++h[g.element_order(e)];
  return h;
}

}  // namespace

TEST(FqField, AxiomsExhaustiveSmall) {
  for (Int q : {2, 3, 4, 5, 7, 8, 9}) {
    auto f = FqField::of_order(q);
    for (Int a = 0; a < q; ++a) {
      auto ea = static_cast<FqField::Elem>(a);
      EXPECT_EQ(f->add(ea, f->neg(ea)), 0u);
      if (a) EXPECT_EQ(f->mul(ea, f->inv(ea)), 1u);
      for (Int b = 0; b < q; ++b) {
        auto eb = static_cast<FqField::Elem>(b);
        EXPECT_EQ(f->mul(ea, eb), f->mul(eb, ea));
        for (Int c = 0; c < q; ++c) {
          auto ec = static_cast<FqField::Elem>(c);
          EXPECT_EQ(f->mul(f->mul(ea, eb), ec), f->mul(ea, f->mul(eb, ec)));
          EXPECT_EQ(f->mul(ea, f->add(eb, ec)), f->add(f->mul(ea, eb), f->mul(ea, ec)));
        }
      }
    }
  }
}

TEST(FqField, PrimitiveElementHasFullOrder) {
  for (Int q : {2, 3, 4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 128, 256}) {
    auto f = FqField::of_order(q);
    std::set<FqField::Elem> seen;
    FqField::Elem x = 1;
    for (Int i = 0; i < q - 1; ++i) {
      seen.insert(x);
      x = f->mul(x, f->primitive());
    }
    EXPECT_EQ(static_cast<Int>(seen.size()), q - 1) << "q=" << q;
    EXPECT_EQ(x, 1u);
  }
}

TEST(FqField, DefiningPolynomialIsLowestIrreducible) {
  EXPECT_EQ(FqField::make(2, 2)->modulus(), (std::vector<Int>{1, 1, 1}));
  EXPECT_EQ(FqField::make(3, 2)->modulus(), (std::vector<Int>{1, 0, 1}));
  EXPECT_EQ(FqField::make(2, 3)->modulus(), (std::vector<Int>{1, 1, 0, 1}));
}

TEST(FqField, RejectsBadOrders) {
  EXPECT_THROW(FqField::of_order(6), DomainError);
  EXPECT_THROW(FqField::of_order(1), DomainError);
  EXPECT_THROW(FqField::of_order(Int{1} << 17), BoundExceeded);
}

TEST(PolyArith, SpecExamples) {
  auto f2 = FqField::make(2);
  auto t = FqPoly::variable(f2);
  EXPECT_EQ(poly_arith(poly(f2, {0, 1, 1}), t, PolyOp::Gcd), t);
  EXPECT_EQ(poly_arith(poly(f2, {1, 1}), poly(f2, {1, 1}), PolyOp::Mul), poly(f2, {1, 0, 1}));
  EXPECT_THROW(poly_arith(t, FqPoly(f2), PolyOp::Mod), DomainError);
}

TEST(PolyArith, ResidueTwoWaysOverF3) {
  auto f3 = FqField::make(3);
  auto a = poly(f3, {1, 1, 0, 1});
  auto b = poly(f3, {1, 0, 1});
  auto r = poly_arith(a, b, PolyOp::Mod);
  auto oracle = schoolbook_mod({1, 1, 0, 1}, {1, 0, 1}, 3);
  std::vector<Int> got(r.coefficients().begin(), r.coefficients().end());
  EXPECT_EQ(got, oracle);
  // Evaluate at a root w of T^2 + 1 in F_9 (which is the defining root).
  auto f9 = FqField::make(3, 2);
  FqPoly a9(f9, {1, 1, 0, 1}), r9(f9, std::vector<FqPoly::Elem>(r.coefficients()));
  const FqField::Elem w = 3;
  EXPECT_EQ(FqPoly(f9, {1, 0, 1}).evaluate(w), 0u);
  EXPECT_EQ(a9.evaluate(w), r9.evaluate(w));
}

TEST(PolyArith, RandomDivisionMatchesSchoolbook) {
  std::mt19937_64 rng(11);
  for (Int p : {2, 3, 5, 7, 13}) {
    auto f = FqField::make(p);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = random_poly(f, static_cast<int>(rng() % 12), rng);
      auto b = random_poly(f, static_cast<int>(rng() % 6), rng);
      auto [q, r] = a.divmod(b);
      EXPECT_EQ(q * b + r, a);
      EXPECT_LT(r.degree(), b.degree());
      std::vector<Int> av(a.coefficients().begin(), a.coefficients().end());
      std::vector<Int> bv(b.coefficients().begin(), b.coefficients().end());
      std::vector<Int> rv(r.coefficients().begin(), r.coefficients().end());
      EXPECT_EQ(rv, schoolbook_mod(av, bv, p));
    }
  }
}

TEST(PolyArith, RingLawsOverExtensionFields) {
  std::mt19937_64 rng(12);
  for (Int q : {4, 8, 9, 16, 25}) {
    auto f = FqField::of_order(q);
    for (int trial = 0; trial < 100; ++trial) {
      auto a = random_poly(f, static_cast<int>(rng() % 6), rng);
      auto b = random_poly(f, static_cast<int>(rng() % 6), rng);
      auto c = random_poly(f, static_cast<int>(rng() % 6), rng);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a - a, FqPoly(f));
      auto g = gcd(a, b);
      EXPECT_TRUE((a % g).is_zero());
      EXPECT_TRUE((b % g).is_zero());
      EXPECT_TRUE(g.is_monic());
      // Evaluation is a ring homomorphism.
      for (Int x = 0; x < q; ++x) {
        auto ex = static_cast<FqField::Elem>(x);
        EXPECT_EQ((a * b).evaluate(ex), f->mul(a.evaluate(ex), b.evaluate(ex)));
      }
    }
  }
}

TEST(PolyArith, InverseModAndPowmod) {
  auto f = FqField::make(3);
  auto m = poly(f, {2, 1, 0, 1});  // T^3 + T + 2
  for (Int idx = 1; idx < 27; ++idx) {
    auto a = decode_residue(f, idx, 3);
    if (!gcd(a, m).is_one()) {
      EXPECT_THROW(inverse_mod(a, m), DomainError);
      continue;
    }
    EXPECT_TRUE(((a * inverse_mod(a, m)) % m).is_one());
    EXPECT_EQ(powmod(a, 5, m), (a * a * a * a * a) % m);
  }
}

TEST(PolyArith, ResidueEncodingRoundTrip) {
  auto f = FqField::make(5);
  for (Int idx = 0; idx < 625; ++idx) EXPECT_EQ(encode_residue(decode_residue(f, idx, 4), 4), idx);
}

TEST(PolyArith, DerivativeAndToString) {
  auto f = FqField::make(3);
  auto a = poly(f, {1, 2, 0, 1, 1});  // T^4 + T^3 + 2T + 1
  EXPECT_EQ(a.derivative(), poly(f, {2, 0, 0, 1}));
  EXPECT_EQ(a.to_string(), "T^4+T^3+2*T+1");
  EXPECT_EQ(FqPoly(f).to_string(), "0");
}

TEST(Irreducible, SpecExamples) {
  auto f2 = FqField::make(2);
  EXPECT_TRUE(is_irreducible(poly(f2, {1, 1, 1})));
  EXPECT_FALSE(is_irreducible(poly(f2, {1, 0, 1})));
  auto f5 = FqField::make(5);
  auto g = poly(f5, {1, 1, 0, 1});
  bool has_root = false;
  for (FqField::Elem a = 0; a < 5; ++a) has_root |= g.evaluate(a) == 0;
  EXPECT_EQ(is_irreducible(g), !has_root);
  EXPECT_TRUE(is_irreducible(g));
  EXPECT_THROW(is_irreducible(FqPoly::constant(f2, 1)), DomainError);
}

TEST(Irreducible, MatchesTrialDivisionExhaustively) {
  std::vector<std::pair<Int, int>> cases = {{2, 8}, {3, 5}, {4, 4}, {5, 3}, {9, 3}};
  for (auto [q, max_deg] : cases) {
    auto f = FqField::of_order(q);
    for (int d = 1; d <= max_deg; ++d) {
      Int count = 0;
      for (const auto& g : monic_polynomials(f, d)) {
        bool fast = is_irreducible(g);
        EXPECT_EQ(fast, irreducible_by_trial_division(g)) << g << " q=" << q;
        count += fast;
      }
      // Number of monic irreducibles: (1/d) sum_{e|d} mu(e) q^{d/e}.
      Int expected = 0;
      for (Int e : divisors(d)) expected += mobius(e) * checked_pow(q, static_cast<unsigned>(d / e));
      EXPECT_EQ(count, expected / d) << "q=" << q << " d=" << d;
    }
  }
}

TEST(Factor, SpecExamples) {
  auto f2 = FqField::make(2);
  auto a = factor_modulus(poly(f2, {0, 1, 1}));
  ASSERT_EQ(a.factors.size(), 2u);
  EXPECT_EQ(a.factors[0], std::make_pair(poly(f2, {0, 1}), 1));
  EXPECT_EQ(a.factors[1], std::make_pair(poly(f2, {1, 1}), 1));

  auto f3 = FqField::make(3);
  auto b = factor_modulus(poly(f3, {0, 0, 1}));
  ASSERT_EQ(b.factors.size(), 1u);
  EXPECT_EQ(b.factors[0], std::make_pair(poly(f3, {0, 1}), 2));

  auto c = factor_modulus(poly(f2, {1, 0, 1, 0, 1}));
  ASSERT_EQ(c.factors.size(), 1u);
  EXPECT_EQ(c.factors[0], std::make_pair(poly(f2, {1, 1, 1}), 2));
  // Trial division by every monic irreducible of degree <= 2.
  for (int d = 1; d <= 2; ++d)
    for (const auto& g : monic_irreducibles(f2, d)) {
      int e = 0;
      FqPoly rest = poly(f2, {1, 0, 1, 0, 1});
      while ((rest % g).is_zero()) {
        rest = rest / g;
        ++e;
      }
      EXPECT_EQ(e, g == poly(f2, {1, 1, 1}) ? 2 : 0);
    }
}

TEST(Factor, RandomProductsReconstruct) {
  std::mt19937_64 rng(13);
  for (Int q : {2, 3, 4, 5, 7, 9}) {
    auto f = FqField::of_order(q);
    for (int trial = 0; trial < 60; ++trial) {
      int deg = 1 + static_cast<int>(rng() % 7);
      while (checked_pow(q, static_cast<unsigned>(deg)) > kDefaultFactorBound) --deg;
      auto n = random_poly(f, deg, rng);
      auto fm = factor_modulus(n);
      EXPECT_EQ(fm.product(), n.monic());
      std::set<FqPoly> distinct;
      for (const auto& [P, e] : fm.factors) {
        EXPECT_TRUE(P.is_monic());
        EXPECT_TRUE(irreducible_by_trial_division(P)) << P;
        EXPECT_GE(e, 1);
        distinct.insert(P);
      }
      EXPECT_EQ(distinct.size(), fm.factors.size());
    }
  }
}

TEST(Factor, BoundExceeded) {
  auto f = FqField::make(2);
  EXPECT_THROW(factor_modulus(FqPoly::monomial(f, 1, 12), Int{1} << 10), BoundExceeded);
  EXPECT_THROW(factor_modulus(FqPoly(f)), DomainError);
}

TEST(PolyUnits, SpecExamples) {
  auto f2 = FqField::make(2);
  auto a = unit_group_mod(poly(f2, {1, 1, 1}));
  EXPECT_EQ(a.group().invariant_factors(), (std::vector<Int>{3}));

  auto f3 = FqField::make(3);
  auto b = unit_group_mod(poly(f3, {0, 1, 1}));
  EXPECT_EQ(b.group().invariant_factors(), (std::vector<Int>{2, 2}));
  EXPECT_EQ(b.blocks().size(), 2u);

  auto c = unit_group_mod(poly(f2, {0, 0, 1}));
  EXPECT_EQ(c.group().order(), 2);
  std::set<FqPoly> units;
  for (Int idx = 0; idx < 4; ++idx) {
    auto r = decode_residue(f2, idx, 2);
    if (!(r % FqPoly::variable(f2)).is_zero()) units.insert(r);
  }
  EXPECT_EQ(units, (std::set<FqPoly>{poly(f2, {1}), poly(f2, {1, 1})}));
}

TEST(PolyUnits, OrderFormulaRandomModuli) {
  std::mt19937_64 rng(14);
  for (Int q : {2, 3, 4, 5, 7, 8, 9, 16}) {
    auto f = FqField::of_order(q);
    int max_deg = 0;
    while (checked_pow(q, static_cast<unsigned>(max_deg + 1)) <= (Int{1} << 14)) ++max_deg;
    for (int trial = 0; trial < 12; ++trial) {
      int deg = 1 + static_cast<int>(rng() % max_deg);
      auto fm = factor_modulus(random_poly(f, deg, rng, true));
      PolyUnitGroup u(fm);
      Int expected = 1;
      for (const auto& [P, a] : fm.factors) {
        Int qd = checked_pow(q, static_cast<unsigned>(P.degree()));
        expected *= (qd - 1) * checked_pow(qd, static_cast<unsigned>(a - 1));
      }
      EXPECT_EQ(u.group().order(), expected) << fm.to_string() << " q=" << q;
    }
  }
}

TEST(PolyUnits, StructureAndDlogAgainstEnumeration) {
  // Every monic N over F_2 and F_3 with q^deg N <= 2^9: element-order
  // histogram from brute-force multiplication equals the one predicted by
  // the cyclic decomposition, and dlog inverts exp on every unit.
  for (Int q : {2, 3, 4}) {
    auto f = FqField::of_order(q);
    for (int d = 1; checked_pow(q, static_cast<unsigned>(d)) <= 512; ++d) {
      for (const auto& n : monic_polynomials(f, d)) {
        PolyUnitGroup u(factor_modulus(n));
        auto units = u.units();
        ASSERT_EQ(static_cast<Int>(units.size()), u.group().order()) << n;
        std::map<Int, Int> brute;
        std::set<GroupElement> logs;
        for (const auto& x : units) {
          ++brute[multiplicative_order(x, n, static_cast<Int>(units.size()))];
          auto e = u.dlog(x);
          EXPECT_EQ(u.exp(e), x);
          logs.insert(e);
        }
        EXPECT_EQ(logs.size(), units.size());
        EXPECT_EQ(brute, order_histogram(u.group())) << n;
      }
    }
  }
}

TEST(PolyUnits, DlogIsHomomorphism) {
  std::mt19937_64 rng(15);
  auto f = FqField::make(3);
  auto n = poly(f, {0, 0, 1, 2, 0, 1});  // T^2 (T^3 + 2T + 1) style modulus
  PolyUnitGroup u(factor_modulus(n));
  auto units = u.units();
  for (int i = 0; i < 500; ++i) {
    const auto& a = units[rng() % units.size()];
    const auto& b = units[rng() % units.size()];
    EXPECT_EQ(u.dlog((a * b) % u.modulus().modulus), u.group().add(u.dlog(a), u.dlog(b)));
  }
  EXPECT_THROW(u.dlog(FqPoly::variable(f)), DomainError);
}

TEST(PolyUnits, CrtGeneratorsAreLocal) {
  auto f = FqField::make(2);
  auto n = poly(f, {0, 1, 1, 0, 1, 1});  // composite, several factors
  PolyUnitGroup u(factor_modulus(n));
  const auto& fm = u.modulus();
  for (std::size_t b = 0; b < u.blocks().size(); ++b) {
    for (std::size_t c : u.blocks()[b].coords) {
      const auto& g = u.generators()[c];
      for (std::size_t other = 0; other < u.blocks().size(); ++other) {
        if (other == b) continue;
        EXPECT_TRUE((g % u.local_modulus(other)).is_one());
      }
    }
  }
  EXPECT_EQ(fm.product(), fm.modulus);
}

TEST(PolyUnits, BoundExceeded) {
  auto f = FqField::make(2);
  EXPECT_THROW(PolyUnitGroup(factor_modulus(FqPoly::monomial(f, 1, 10)), 512), BoundExceeded);
}
