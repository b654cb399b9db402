#include "genus/selftest.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "genus/carlitz.hpp"
#include "genus/errors.hpp"
#include "genus/genus_function.hpp"
#include "genus/genus_number.hpp"
#include "genus/oracle.hpp"

namespace genus {

namespace {

// Counts checks and keeps the first failure.
struct Tally {
  long checks = 0;
  std::string failure;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && failure.empty()) failure = what();
  }
  bool ok() const { return failure.empty(); }
};

SuiteResult finish(int k, const Tally& t, const std::string& summary) {
  SuiteResult r;
  r.criterion = k;
  r.name = suite_name(k);
  r.pass = t.ok();
  r.detail = summary + ", " + std::to_string(t.checks) + " checks";
  if (!t.ok()) r.detail += "; first failure: " + t.failure;
  return r;
}

std::string str(Int v) { return std::to_string(v); }

CharacterGroup random_group(const CharacterAmbient& amb, std::mt19937_64& rng, int max_gens = 3) {
  const auto& m = amb.group().moduli();
  std::vector<Character> v;
  int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_gens));
  for (int i = 0; i < k; ++i) {
    std::vector<Int> e(m.size());
    for (std::size_t c = 0; c < m.size(); ++c) e[c] = static_cast<Int>(rng() % static_cast<std::uint64_t>(m[c]));
    v.emplace_back(amb, GroupElement(e));
  }
  return CharacterGroup::generated(amb, v);
}

// Even characters found by evaluating at -1.
CharacterGroup even_by_values(const CharacterGroup& y) {
  const Int n = y.ambient().numeric_units().modulus();
  std::vector<Character> even;
  for (const auto& chi : y.characters())
    if (chi.value(n - 1) == 0) even.push_back(chi);
  return CharacterGroup::generated(y.ambient(), even);
}

// ---------------------------------------------------------------- suite 1

SuiteResult suite1() {
  Tally t;
  Int groups = 0;
  for (Int n = 2; n <= 120; ++n) {
    auto amb = CharacterAmbient::numeric(n);
    auto lat = enumerate_subfields(amb);
    for (const auto& e : lat.entries()) {
      ++groups;
      auto y = extended_genus_characters(e.group);
      t.check(y == maximal_extended_search(e.group, &lat), [&] { return "n=" + str(n) + " X=" + e.group.to_string(); });
    }
  }
  return finish(1, t, "moduli 2..120, " + str(groups) + " character groups");
}

// ---------------------------------------------------------------- suite 2

SuiteResult suite2() {
  Tally t;
  std::mt19937_64 rng(2001);
  Int gap2 = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Int n = 3 + static_cast<Int>(rng() % 398);
    auto amb = CharacterAmbient::numeric(n);
    auto x = random_group(amb, rng);
    auto y = extended_genus_characters(x);
    auto g = genus_characters(x);
    t.check(g.contains(x) && y.contains(g), [&] { return "chain X <= gK <= geK, n=" + str(n); });
    Int gap = y.order() / g.order();
    gap2 += gap == 2;
    t.check(gap == 1 || gap == 2, [&] { return "gap " + str(gap) + " for n=" + str(n) + " X=" + x.to_string(); });
    t.check(g == join(x, even_by_values(y)), [&] { return "gK != X * even(Y), n=" + str(n) + " X=" + x.to_string(); });
  }
  // Fixtures from the subfield lattice search.
  struct Fixture {
    Int d, degree, gap;
  };
  for (const Fixture& f : {Fixture{-20, 4, 1}, Fixture{12, 2, 2}}) {
    auto chi = kronecker_character(f.d);
    auto x = CharacterGroup::generated(chi.ambient(), {chi});
    auto lat = enumerate_subfields(chi.ambient());
    auto gs = maximal_genus_search(x, &lat);
    auto ys = maximal_extended_search(x, &lat);
    t.check(gs.order() == f.degree, [&] { return "d=" + str(f.d) + ": [gK:Q] = " + str(gs.order()); });
    t.check(ys.order() / gs.order() == f.gap, [&] { return "d=" + str(f.d) + ": gap " + str(ys.order() / gs.order()); });
    t.check(genus_characters(x) == gs && extended_genus_characters(x) == ys,
            [&] { return "d=" + str(f.d) + ": library differs from lattice search"; });
  }
  return finish(2, t, "1000 random X with n <= 400 (" + str(gap2) + " with gap 2), fixtures Q(sqrt -5) and Q(sqrt 3)");
}

// ---------------------------------------------------------------- suite 3

SuiteResult suite3() {
  Tally t;
  auto even = [](Int n) { return even_by_values(CharacterGroup::full(CharacterAmbient::numeric(n))); };
  auto x1 = even(15), x2 = even(77);
  t.check(genus_characters(x1) == x1, [] { return "g(K1) != K1"; });
  t.check(genus_characters(x2) == x2, [] { return "g(K2) != K2"; });
  auto r = compose_genus(x1, x2);
  t.check(r.gap == 2, [&] { return "[gK : gK1 gK2] = " + str(r.gap); });
  t.check(r.genus == even(1155), [] { return "gK is not Q(zeta_1155)^+"; });
  t.check(r.genus.order() == 240, [&] { return "|gK| = " + str(r.genus.order()); });

  std::mt19937_64 rng(3001);
  Int gap2 = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Int n1 = 3 + static_cast<Int>(rng() % 398), n2 = 3 + static_cast<Int>(rng() % 398);
    auto x1r = random_group(CharacterAmbient::numeric(n1), rng, 2);
    auto x2r = random_group(CharacterAmbient::numeric(n2), rng, 2);
    auto c = compose_genus(x1r, x2r);
    gap2 += c.gap == 2;
    t.check(c.gap == 1 || c.gap == 2, [&] { return "gap " + str(c.gap) + " for moduli " + str(n1) + ", " + str(n2); });
    t.check(c.genus.contains(c.genus_product), [&] { return "gK1 gK2 not in gK, moduli " + str(n1) + ", " + str(n2); });
    auto amb = c.genus.ambient();
    auto l1 = lift(x1r, amb), l2 = lift(x2r, amb);
    t.check(extended_genus_characters(join(l1, l2)) ==
                join(extended_genus_characters(l1), extended_genus_characters(l2)),
            [&] { return "extended genus not multiplicative, moduli " + str(n1) + ", " + str(n2); });
  }
  return finish(3, t, "(3,5,7,11) example and 1000 random pairs (" + str(gap2) + " with gap 2)");
}

// ---------------------------------------------------------------- suite 4

using Marks = std::vector<char>;

Marks closure_add(Int n, const std::vector<Int>& gens) {
  Marks in(static_cast<std::size_t>(n), 0);
  std::vector<Int> stack{0};
  in[0] = 1;
  while (!stack.empty()) {
    Int x = stack.back();
    stack.pop_back();
    for (Int g : gens) {
      Int y = (x + g) % n;
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        stack.push_back(y);
      }
    }
  }
  return in;
}

Marks closure_mul(Int n, const std::vector<Int>& gens) {
  Marks in(static_cast<std::size_t>(n), 0);
  std::vector<Int> stack{1 % n};
  in[static_cast<std::size_t>(1 % n)] = 1;
  while (!stack.empty()) {
    Int x = stack.back();
    stack.pop_back();
    for (Int g : gens) {
      Int y = mulmod(x, g, n);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        stack.push_back(y);
      }
    }
  }
  return in;
}

Marks meet_marks(const Marks& a, const Marks& b) {
  Marks c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] && b[i];
  return c;
}

Int count(const Marks& m) { return static_cast<Int>(std::count(m.begin(), m.end(), 1)); }

// The library subgroup equals the marked set: same order, generators inside.
template <class ToIndex>
bool same_set(const Subgroup& s, const Marks& m, ToIndex&& to_index) {
  if (s.order() != count(m)) return false;
  for (const auto& g : s.generators())
    if (!m[static_cast<std::size_t>(to_index(g))]) return false;
  return true;
}

SuiteResult suite4() {
  Tally t;
  Int pairs = 0;
  // Cyclic groups: <s^j1> cap <s^j2> = <s^lcm>, <s^j1><s^j2> = <s^gcd>.
  for (Int n = 1; n <= 200; ++n) {
    auto g = FiniteAbelianGroup::cyclic(n);
    auto divs = divisors(n);
    auto idx = [](const GroupElement& e) { return e.size() ? e[0] : 0; };
    std::map<Int, Subgroup> sub;
    std::map<Int, Marks> set;
    for (Int j : divs) {
      sub.emplace(j, Subgroup::generated(g, {n == 1 ? g.identity() : g.reduce({j})}));
      set.emplace(j, closure_add(n, {j % n}));
    }
    for (Int j1 : divs)
      for (Int j2 : divs) {
        ++pairs;
        auto in = intersect(sub.at(j1), sub.at(j2));
        auto pr = product(sub.at(j1), sub.at(j2));
        const Marks in_set = meet_marks(set.at(j1), set.at(j2));
        const Marks pr_set = closure_add(n, {j1 % n, j2 % n});
        auto what = [&] { return "C_" + str(n) + " j=" + str(j1) + "," + str(j2); };
        t.check(same_set(in, in_set, idx) && same_set(pr, pr_set, idx), what);
        t.check(in == sub.at(lcm(j1, j2)) && pr == sub.at(gcd(j1, j2)), what);
        t.check(in.index() == lcm(j1, j2) && pr.index() == gcd(j1, j2), what);
      }
  }
  // (Z/p^m)* for odd p: the index of a product is the gcd of the indices.
  Int unit_groups = 0;
  for (Int pm = 3; pm <= 2000; ++pm) {
    auto f = factorize(pm);
    if (f.size() != 1 || f[0].first == 2) continue;
    ++unit_groups;
    ModularUnitGroup u(pm);
    const Int phi = u.group().order();
    t.check(u.group().rank() == 1, [&] { return "(Z/" + str(pm) + ")* not cyclic"; });
    const Int gen = u.generators()[0];
    auto idx = [&](const GroupElement& e) { return u.exp(e); };
    std::map<Int, Subgroup> sub;
    std::map<Int, Marks> set;
    for (Int j : divisors(phi)) {
      Int h = powmod(gen, j, pm);
      sub.emplace(j, Subgroup::generated(u.group(), {u.dlog(h)}));
      set.emplace(j, closure_mul(pm, {h}));
    }
    for (const auto& [j1, s1] : sub)
      for (const auto& [j2, s2] : sub) {
        ++pairs;
        auto in = intersect(s1, s2);
        auto pr = product(s1, s2);
        auto what = [&, j1 = j1, j2 = j2] { return "(Z/" + str(pm) + ")* j=" + str(j1) + "," + str(j2); };
        t.check(same_set(in, meet_marks(set.at(j1), set.at(j2)), idx), what);
        t.check(same_set(pr, closure_mul(pm, {powmod(gen, j1, pm), powmod(gen, j2, pm)}), idx), what);
        t.check(pr.index() == gcd(s1.index(), s2.index()) && in.index() == lcm(s1.index(), s2.index()), what);
      }
  }
  // (Z/2^m)*: exact identities hold, the gcd rule fails from 2^3 on.
  Int counterexamples = 0;
  for (int m = 1; (Int{1} << m) <= 2000; ++m) {
    const Int n = Int{1} << m;
    ModularUnitGroup u(n);
    auto idx = [&](const GroupElement& e) { return u.exp(e); };
    std::map<std::vector<char>, std::vector<Int>> found;  // residue set -> two generators
    std::vector<Int> odd;
    for (Int a = 1; a < n; a += 2) odd.push_back(a);
    std::set<std::vector<char>> cyclic;
    std::vector<std::pair<Int, Marks>> cyc;
    for (Int a : odd) {
      auto s = closure_mul(n, {a});
      if (cyclic.insert(s).second) cyc.emplace_back(a, s);
    }
    for (const auto& [a, sa] : cyc)
      for (const auto& [b, sb] : cyc) {
        auto s = closure_mul(n, {a, b});
        found.emplace(s, std::vector<Int>{a, b});
      }
    std::vector<std::pair<Subgroup, Marks>> subs;
    for (const auto& [s, g] : found)
      subs.emplace_back(Subgroup::generated(u.group(), {u.dlog(g[0]), u.dlog(g[1])}), s);
    Int local_counter = 0;
    for (const auto& [s1, m1] : subs)
      for (const auto& [s2, m2] : subs) {
        ++pairs;
        auto in = intersect(s1, s2);
        auto pr = product(s1, s2);
        std::vector<Int> gens;
        for (std::size_t r = 0; r < m1.size(); ++r)
          if (m1[r] || m2[r]) gens.push_back(static_cast<Int>(r));
        auto what = [&] { return "(Z/" + str(n) + ")* " + s1.to_string() + " / " + s2.to_string(); };
        t.check(same_set(in, meet_marks(m1, m2), idx) && same_set(pr, closure_mul(n, gens), idx), what);
        t.check(pr.order() * in.order() == s1.order() * s2.order(), what);
        local_counter += pr.index() != gcd(s1.index(), s2.index());
      }
    t.check(m >= 3 ? local_counter > 0 : local_counter == 0,
            [&] { return "gcd rule at 2^" + std::to_string(m) + ": " + str(local_counter) + " failures"; });
    counterexamples += local_counter;
  }
  // [S1 I cap S2 I : (S1 cap S2) I] divides 2 for |I| = 2.
  std::mt19937_64 rng(4001);
  int triples = 0;
  while (triples < 10000) {
    std::vector<Int> mod;
    Int order = 1;
    int rank = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < rank; ++i) {
      Int d = 2 + static_cast<Int>(rng() % 15);
      mod.push_back(d);
      order *= d;
    }
    std::vector<std::size_t> even;
    for (std::size_t i = 0; i < mod.size(); ++i)
      if (mod[i] % 2 == 0) even.push_back(i);
    if (order > 512 || even.empty()) continue;
    ++triples;
    FiniteAbelianGroup g(mod);
    auto code = [&](const GroupElement& e) {
      Int c = 0;
      for (std::size_t i = 0; i < mod.size(); ++i) c = c * mod[i] + e[i];
      return c;
    };
    auto random_element = [&] {
      std::vector<Int> v(mod.size());
      for (std::size_t i = 0; i < mod.size(); ++i) v[i] = static_cast<Int>(rng() % static_cast<std::uint64_t>(mod[i]));
      return g.reduce(v);
    };
    // Element sets by closure under addition of generators.
    auto closure = [&](const std::vector<GroupElement>& gens) {
      Marks in(static_cast<std::size_t>(order), 0);
      std::vector<GroupElement> stack{g.identity()};
      in[static_cast<std::size_t>(code(g.identity()))] = 1;
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (const auto& gg : gens) {
          auto y = g.add(x, gg);
          if (!in[static_cast<std::size_t>(code(y))]) {
            in[static_cast<std::size_t>(code(y))] = 1;
            stack.push_back(y);
          }
        }
      }
      return in;
    };
    std::vector<Int> tv(mod.size(), 0);
    tv[even[rng() % even.size()]] = 1;
    for (std::size_t i : even)
      if (rng() % 2) tv[i] = 1;
    for (std::size_t i = 0; i < mod.size(); ++i) tv[i] *= mod[i] / 2;
    GroupElement iel = g.reduce(tv);
    std::vector<GroupElement> a1{random_element()}, a2{random_element()};
    if (rng() % 2) a1.push_back(random_element());
    if (rng() % 2) a2.push_back(random_element());
    auto s1 = Subgroup::generated(g, a1), s2 = Subgroup::generated(g, a2), i = Subgroup::generated(g, {iel});
    auto lhs = intersect(product(s1, i), product(s2, i));
    auto rhs = product(intersect(s1, s2), i);
    auto m1 = closure(a1), m2 = closure(a2);
    auto with_i = [&](std::vector<GroupElement> v) {
      v.push_back(iel);
      return closure(v);
    };
    auto lhs_set = meet_marks(with_i(a1), with_i(a2));
    std::vector<GroupElement> meet_gens;
    const auto m12 = meet_marks(m1, m2);
    for (const auto& e : g.elements())
      if (m12[static_cast<std::size_t>(code(e))]) meet_gens.push_back(e);
    auto rhs_set = with_i(meet_gens);
    auto what = [&] { return g.to_string() + " S1=" + s1.to_string() + " S2=" + s2.to_string(); };
    t.check(same_set(lhs, lhs_set, code) && same_set(rhs, rhs_set, code), what);
    t.check(lhs.contains(rhs) && (lhs.order() == rhs.order() || lhs.order() == 2 * rhs.order()), what);
  }
  return finish(4, t,
                "cyclic n <= 200, " + str(unit_groups) + " odd (Z/p^m)*, (Z/2^m)* m <= 10 (" + str(counterexamples) +
                    " gcd-rule failures at p = 2), " + str(pairs) + " subgroup pairs, 10000 triples");
}

// ---------------------------------------------------------------- suite 5

std::set<Int> residues(const ModularUnitGroup& u, const Subgroup& h) {
  std::set<Int> out;
  for (const auto& e : h.elements()) out.insert(u.exp(e));
  return out;
}

SuiteResult suite5() {
  Tally t;
  Int classified = 0, precision = 0;
  for (int k = 2; k <= 7; ++k) {
    const Int n = Int{1} << k;
    ModularUnitGroup u(n);
    auto lat = enumerate_subfields(CharacterAmbient::numeric(n));
    for (const auto& e : lat.entries()) {
      auto h = e.group.kernel();
      int m = 0;
      while ((Int{1} << m) < h.index()) ++m;
      auto what = [&] { return "k=" + std::to_string(k) + " H=" + h.to_string(); };
      if (k < m + 2) {
        bool threw = false;
        try {
          classify_l2(u, h, m);
        } catch (const PrecisionError&) {
          threw = true;
        }
        t.check(threw, what);
        ++precision;
        continue;
      }
      // Norm groups of the three candidate fields, as residue sets.
      auto res = residues(u, h);
      const Int big = Int{1} << (m + 2), mid = Int{1} << (m + 1);
      std::set<Int> plus, fullc, minus;
      for (Int v = 1; v < n; v += 2) {
        if (v % big == 1 || v % big == big - 1) plus.insert(v);
        if (v % mid == 1) fullc.insert(v);
        if (v % big == 1 || v % big == mid - 1) minus.insert(v);
      }
      auto c = classify_l2(u, h, m);
      ++classified;
      int matches = (res == plus) + (res == fullc) + (res == minus);
      t.check(matches >= 1 && (m == 0 || matches == 1), what);
      const std::set<Int>& want = c.tag == L2Tag::PlusField ? plus : c.tag == L2Tag::FullCyclotomic ? fullc : minus;
      t.check(res == want, what);
    }
  }
  // Quotient shapes C_{2^m}, C_2 x C_{2^{m-1}}, C_{2^m} without -1.
  for (int m = 2; m <= 5; ++m) {
    ModularUnitGroup u(Int{1} << (m + 2));
    const Int big = Int{1} << (m + 2), mid = Int{1} << (m + 1);
    auto a = Subgroup::generated(u.group(), {u.dlog(big - 1)});
    auto b = Subgroup::generated(u.group(), {u.dlog(mid + 1)});
    auto c = Subgroup::generated(u.group(), {u.dlog(mid - 1)});
    auto what = [&] { return "shapes at m=" + std::to_string(m); };
    t.check(a.quotient_structure().invariant_factors() == std::vector<Int>{Int{1} << m}, what);
    t.check(b.quotient_structure().invariant_factors() == std::vector<Int>{2, Int{1} << (m - 1)}, what);
    t.check(c.quotient_structure().invariant_factors() == std::vector<Int>{Int{1} << m}, what);
    t.check(!c.contains(u.dlog(big - 1)), what);
    t.check(classify_l2(u, a, m).tag == L2Tag::PlusField && classify_l2(u, b, m).tag == L2Tag::FullCyclotomic &&
                classify_l2(u, c, m).tag == L2Tag::MinusField,
            what);
  }
  return finish(5, t,
                str(classified) + " subgroups of (Z/2^k)*, k <= 7, classified; " + str(precision) +
                    " below precision; three quotient shapes for m = 2..5");
}

// ---------------------------------------------------------------- suite 6

FqPoly power(const FqPoly& p, int k) {
  FqPoly r = FqPoly::constant(p.field(), 1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

SuiteResult suite6() {
  Tally t;
  std::mt19937_64 rng(6001);
  int fields = 0;
  Int number_rows = 0;
  while (fields < 50) {
    Int n = 3 + static_cast<Int>(rng() % 398);
    auto x = random_group(CharacterAmbient::numeric(n), rng);
    auto brute = brute_component_orders(x);
    bool any = false;
    for (const auto& c : component_decompose(x)) {
      if (c.prime == 2 || c.group.order() == 1) continue;
      any = true;
      ++number_rows;
      const Int e = brute[c.block];
      const Int tame = tame_degree(c.prime, {e});
      auto what = [&] { return "n=" + str(n) + " p=" + str(c.prime) + " X=" + x.to_string(); };
      t.check(e == c.group.order(), what);
      t.check(tame == gcd(e, c.prime - 1), what);
      t.check(tame == c.group.order() / p_part(c.group.order(), c.prime), what);
    }
    fields += any;
  }
  int ff_fields = 0;
  Int ff_rows = 0;
  while (ff_fields < 50) {
    Int q = std::vector<Int>{2, 3, 4, 5, 7}[rng() % 5];
    auto f = FqField::of_order(q);
    auto ps = monic_irreducibles(f, 1 + static_cast<int>(rng() % 2));
    auto p1 = ps[rng() % ps.size()], p2 = ps[rng() % ps.size()];
    FqPoly n = power(p1, 1 + static_cast<int>(rng() % 2));
    if (!(p1 == p2) && rng() % 2) n = n * p2;
    if (checked_pow(q, static_cast<unsigned>(n.degree())) > 4096) continue;
    auto x = random_group(CharacterAmbient::polynomial(n), rng, 2);
    auto brute = brute_component_orders(x);
    bool any = false;
    for (const auto& c : component_decompose(x)) {
      if (c.group.order() == 1) continue;
      any = true;
      ++ff_rows;
      const Int e = brute[c.block];
      const int d = c.place->degree();
      const Int tame = tame_ramification_ff(q, d, e);
      auto what = [&] { return "q=" + str(q) + " N=" + n.to_string() + " P=" + c.place->to_string(); };
      t.check(e == c.group.order(), what);
      t.check(tame == gcd(checked_pow(q, static_cast<unsigned>(d)) - 1, e), what);
      t.check(tame == e / p_part(e, f->p()), what);
    }
    ff_fields += any;
  }
  return finish(6, t,
                "50 abelian number fields (" + str(number_rows) + " odd ramified primes), 50 function fields (" +
                    str(ff_rows) + " ramified places)");
}

// ---------------------------------------------------------------- suite 7

std::vector<FqPoly> all_polys(const FqFieldPtr& f, int d) {
  std::vector<FqPoly> out;
  const Int count = checked_pow(f->q(), static_cast<unsigned>(d + 1));
  for (Int i = 0; i < count; ++i) out.push_back(decode_residue(f, i, d + 1));
  return out;
}

// Residues mod Q as indices; addition is digitwise in base p.
struct ResidueAdder {
  Int p;
  int dim;
  Int add(Int a, Int b) const {
    if (p == 2) return a ^ b;
    Int out = 0, scale = 1;
    for (int k = 0; k < dim; ++k, a /= p, b /= p, scale *= p) out += ((a % p + b % p) % p) * scale;
    return out;
  }
  // The F_p-linear map with the given images of the digit basis.
  Int apply(const std::vector<Int>& cols, Int v) const {
    Int out = 0;
    for (int j = 0; j < dim && v; ++j, v /= p)
      for (Int c = v % p; c > 0; --c) out = add(out, cols[static_cast<std::size_t>(j)]);
    return out;
  }
};

SuiteResult suite7() {
  Tally t;
  Int additive = 0, exact = 0, mapped = 0, torsion = 0;
  for (Int q : {2, 3, 4}) {
    auto f = FqField::of_order(q);
    auto polys = all_polys(f, 4);
    std::vector<CarlitzPoly> cs;
    for (const auto& a : polys) cs.push_back(carlitz_action(a));
    std::map<std::vector<FqPoly::Elem>, std::size_t> where;
    for (std::size_t i = 0; i < polys.size(); ++i) where[polys[i].coefficients()] = i;
    // C_{A+B} = C_A + C_B for all A, B of degree <= 4.
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = i; j < polys.size(); ++j) {
        ++additive;
        const auto k = where.at((polys[i] + polys[j]).coefficients());
        t.check(cs[i] + cs[j] == cs[k], [&] { return "additivity q=" + str(q) + " " + polys[i].to_string() + ", " + polys[j].to_string(); });
      }
    // C_{AB} = C_A o C_B exactly: all pairs over F_2; over F_3, F_4 the
    // pairs with deg A + deg B <= 4 and every scaled monomial pair.
    auto exact_pair = [&](const FqPoly& a, const FqPoly& b) {
      ++exact;
      t.check(carlitz_action(a).compose(carlitz_action(b)) == carlitz_action(a * b),
              [&] { return "composition q=" + str(q) + " " + a.to_string() + ", " + b.to_string(); });
    };
    if (q == 2) {
      for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = 0; j < polys.size(); ++j) {
          ++exact;
          t.check(cs[i].compose(cs[j]) == carlitz_action(polys[i] * polys[j]),
                  [&] { return "composition q=2 " + polys[i].to_string() + ", " + polys[j].to_string(); });
        }
    } else {
      for (const auto& a : polys)
        for (const auto& b : polys)
          if (std::max(a.degree(), 0) + std::max(b.degree(), 0) <= 4) exact_pair(a, b);
      for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
          for (Int c = 1; c < q; ++c)
            for (Int c2 = 1; c2 < q; ++c2)
              exact_pair(FqPoly::monomial(f, static_cast<FqPoly::Elem>(c), i),
                         FqPoly::monomial(f, static_cast<FqPoly::Elem>(c2), j));
    }
    // Every pair of degree <= 4 as maps on R/Q: C_A o C_B against
    // sum_i (AB)_i C_{T^i}, on an F_p-basis of R/Q.
    const int dq = 5;
    const FqPoly big_q = monic_irreducibles(f, dq).front();
    ResidueAdder add{f->p(), dq * f->s()};
    std::vector<FqPoly> basis;
    for (int j = 0; j < add.dim; ++j) basis.push_back(decode_residue(f, checked_pow(f->p(), static_cast<unsigned>(j)), dq));
    std::vector<std::vector<Int>> cols(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (const auto& e : basis) cols[i].push_back(encode_residue(cs[i].evaluate_mod(e, big_q), dq));
    // scaled[j][i][c] = c * C_{T^i}(e_j) mod Q.
    std::vector<std::vector<std::vector<Int>>> scaled(basis.size(), std::vector<std::vector<Int>>(9));
    for (int i = 0; i <= 8; ++i) {
      auto ct = carlitz_action(FqPoly::monomial(f, 1, i));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        auto w = ct.evaluate_mod(basis[j], big_q);
        for (Int c = 0; c < q; ++c) scaled[j][i].push_back(encode_residue(w.scaled(static_cast<FqPoly::Elem>(c)) % big_q, dq));
      }
    }
    for (std::size_t a = 0; a < polys.size(); ++a)
      for (std::size_t b = 0; b < polys.size(); ++b) {
        ++mapped;
        const FqPoly ab = polys[a] * polys[b];
        bool ok = true;
        for (std::size_t j = 0; j < basis.size() && ok; ++j) {
          Int rhs = 0;
          for (int i = 0; i <= ab.degree(); ++i) rhs = add.add(rhs, scaled[j][i][ab.coeff(i)]);
          ok = add.apply(cols[a], cols[b][j]) == rhs;
        }
        t.check(ok, [&] { return "C_A o C_B mod Q, q=" + str(q) + " " + polys[a].to_string() + ", " + polys[b].to_string(); });
      }
    // q^{deg N} torsion points.
    for (int d = 0; checked_pow(q, static_cast<unsigned>(d)) <= 256; ++d)
      for (const auto& n : monic_polynomials(f, d)) {
        ++torsion;
        t.check(torsion_order_check(n) == checked_pow(q, static_cast<unsigned>(d)), [&] { return "torsion " + n.to_string(); });
      }
  }
  return finish(7, t,
                "q in {2,3,4}, degree <= 4: " + str(additive) + " additive pairs, " + str(exact) + " exact compositions, " +
                    str(mapped) + " pairs as maps mod Q, " + str(torsion) + " torsion counts");
}

// ---------------------------------------------------------------- suite 8

SuiteResult suite8() {
  Tally t;
  Int moduli = 0;
  for (Int q : {2, 3}) {
    auto f = FqField::of_order(q);
    for (int d = 1; checked_pow(q, static_cast<unsigned>(d)) <= 4096; ++d)
      for (const auto& n : monic_polynomials(f, d)) {
        ++moduli;
        t.check(idele_quotient_check(factor_modulus(n)), [&] { return "q=" + str(q) + " N=" + n.to_string(); });
      }
  }
  return finish(8, t, str(moduli) + " moduli N with q^deg N <= 2^12, q in {2,3}");
}

// ---------------------------------------------------------------- suite 9

SuiteResult suite9() {
  Tally t;
  std::mt19937_64 rng(9001);
  for (int trial = 0; trial < 100; ++trial) {
    InfinitePrimeData d;
    Int g = 0;
    int r = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < r; ++i) {
      Int tt = 1 + static_cast<Int>(rng() % 24);
      g = gcd(g, tt);
      d.primes.push_back({1, tt, std::nullopt, std::nullopt});
    }
    Int t0 = s_field_invariants(d, 3, 2).t0;
    t.check(t0 == g, [&] { return "t0 " + str(t0) + " != gcd " + str(g); });
  }
  // With norm data: f_inf from the explicit closure of S in Z/C x U.
  int with_norms = 0;
  for (int trial = 0; with_norms < 100 && trial < 1000; ++trial) {
    Int q = std::vector<Int>{2, 3, 4}[rng() % 3];
    int n_max = 2 + static_cast<int>(rng() % 2);
    auto quot = infinity_unit_quotient(q, n_max);
    auto elems = quot.group().elements();
    auto units = quot.units();
    InfinitePrimeData d;
    int r = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < r; ++i) {
      auto h = Subgroup::generated(quot.group(), {elems[rng() % elems.size()], elems[rng() % elems.size()]});
      d.primes.push_back({h.index(), 1 + static_cast<Int>(rng() % 4), h, units[rng() % units.size()]});
    }
    SFieldInvariants s;
    try {
      s = s_field_invariants(d, q, n_max);
    } catch (const PrecisionError&) {
      continue;
    }
    ++with_norms;
    auto f = quot.field();
    const FqPoly mod = FqPoly::monomial(f, 1, n_max);
    Int tl = 1;
    for (const auto& p : d.primes) tl = lcm(tl, p.t);
    const Int c = 2 * tl * quot.group().exponent();
    std::vector<std::pair<Int, FqPoly>> gens;
    for (const auto& p : d.primes) {
      gens.push_back({p.t % c, *p.uniformizer_norm % mod});
      for (const auto& h : p.norm_subgroup->elements()) gens.push_back({0, quot.exp(h)});
    }
    for (Int a = 1; a < q; ++a) gens.push_back({0, FqPoly::constant(f, static_cast<FqPoly::Elem>(a))});
    std::set<std::pair<Int, std::vector<FqPoly::Elem>>> seen{{0, FqPoly::constant(f, 1).coefficients()}};
    std::vector<std::pair<Int, FqPoly>> frontier{{0, FqPoly::constant(f, 1)}};
    Int fv = c;
    while (!frontier.empty()) {
      std::vector<std::pair<Int, FqPoly>> next;
      for (const auto& [k, u] : frontier)
        for (const auto& [gk, gu] : gens) {
          std::pair<Int, FqPoly> e{(k + gk) % c, (u * gu) % mod};
          if (seen.insert({e.first, e.second.coefficients()}).second) {
            fv = gcd(fv, e.first);
            next.push_back(e);
          }
        }
      frontier = std::move(next);
    }
    auto what = [&] { return "q=" + str(q) + " n_max=" + std::to_string(n_max) + " trial " + std::to_string(trial); };
    t.check(s.f_infinity && *s.f_infinity == fv, what);
    t.check(fv == s.t0, what);
    t.check(s.m0 && s.e_over_wild && *s.m0 == s.t0 * *s.e_over_wild, what);
  }
  t.check(with_norms >= 100, [&] { return "only " + std::to_string(with_norms) + " norm-data samples"; });
  // Infinity splits completely.
  auto quot = infinity_unit_quotient(3, 2);
  InfinitePrimeData split;
  for (int i = 0; i < 3; ++i) split.primes.push_back({1, 1, Subgroup::whole(quot.group()), std::nullopt});
  auto s = s_field_invariants(split, 3, 2);
  t.check(s.t0 == 1 && s.n0 == 0 && s.m0 == Int{1} && s.alpha == 0,
          [] { return "split infinity is not (t0, n0, m0, alpha) = (1, 0, 1, 0)"; });
  return finish(9, t, "100 random t-tuples, " + std::to_string(with_norms) + " norm-data samples, split infinity");
}

}  // namespace

std::string suite_name(int criterion) {
  switch (criterion) {
    case 1:
      return "oracle equivalence";
    case 2:
      return "gap bound";
    case 3:
      return "composition";
    case 4:
      return "subgroup lattice laws";
    case 5:
      return "L2 trichotomy";
    case 6:
      return "tame formulas";
    case 7:
      return "Carlitz laws";
    case 8:
      return "idele quotient";
    case 9:
      return "S-field invariants";
    default:
      return "unknown";
  }
}

SuiteResult run_suite(int criterion) {
  try {
    switch (criterion) {
      case 1:
        return suite1();
      case 2:
        return suite2();
      case 3:
        return suite3();
      case 4:
        return suite4();
      case 5:
        return suite5();
      case 6:
        return suite6();
      case 7:
        return suite7();
      case 8:
        return suite8();
      case 9:
        return suite9();
      default:
        break;
    }
  } catch (const std::exception& e) {
    return {criterion, suite_name(criterion), false, std::string("exception: ") + e.what()};
  }
  return {criterion, suite_name(criterion), false, "no such suite"};
}

std::vector<SuiteResult> run_selftest() {
  std::vector<SuiteResult> out;
  for (int k = 1; k <= kSelftestSuites; ++k) out.push_back(run_suite(k));
  return out;
}

}  // namespace genus
