#include "genus/oracle.hpp"

#include <algorithm>
#include <set>

#include "genus/errors.hpp"

namespace genus {

namespace {

// For each block, the dlogs of the units congruent to 1 modulo the other
// blocks' prime powers.
std::vector<std::vector<GroupElement>> local_unit_sets(const CharacterAmbient& amb) {
  std::vector<std::vector<GroupElement>> out(amb.blocks().size());
  if (amb.is_numeric()) {
    const auto& u = amb.numeric_units();
    const Int n = u.modulus();
    for (std::size_t b = 0; b < out.size(); ++b) {
      const Int pk = checked_pow(u.block_primes()[b], static_cast<unsigned>(u.block_exponents()[b]));
      const Int cof = n / pk;
      for (Int v = 1; v < n; v += cof)
        if (gcd(v, n) == 1) out[b].push_back(u.dlog(v));
    }
    return out;
  }
  const auto& u = amb.poly_units();
  const auto& n = u.modulus().modulus;
  const FqPoly one = FqPoly::constant(n.field(), 1);
  auto units = u.units();
  for (std::size_t b = 0; b < out.size(); ++b) {
    const FqPoly cof = n / u.local_modulus(b);
    for (const auto& v : units)
      if (((v - one) % cof).is_zero()) out[b].push_back(u.dlog(v));
  }
  return out;
}

std::vector<Int> component_orders_from(const CharacterGroup& x, const std::vector<std::vector<GroupElement>>& local) {
  auto chars = x.characters();
  std::vector<Int> out;
  for (const auto& set : local) {
    std::set<std::vector<Int>> tables;
    for (const auto& chi : chars) {
      std::vector<Int> t;
      t.reserve(set.size());
      for (const auto& e : set) t.push_back(chi.value_on(e));
      tables.insert(std::move(t));
    }
    out.push_back(static_cast<Int>(tables.size()));
  }
  return out;
}

// Inertia at infinity: {1, -1} for Z, the constants F_q^* for F_q[T].
std::vector<GroupElement> infinity_inertia_set(const CharacterAmbient& amb) {
  if (amb.is_numeric()) {
    const auto& u = amb.numeric_units();
    return {u.dlog(1), u.dlog(u.modulus() - 1)};
  }
  const auto& u = amb.poly_units();
  std::vector<GroupElement> out;
  for (Int c = 1; c < u.field()->q(); ++c) out.push_back(u.dlog(FqPoly::constant(u.field(), static_cast<FqPoly::Elem>(c))));
  return out;
}

// Gaussian binomial [n choose k]_p.
Int gaussian_binomial(int n, int k, Int p) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<Int>> c(n + 1, std::vector<Int>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      c[i][j] = checked_add(c[i - 1][j - 1], j <= i - 1 ? checked_mul(checked_pow(p, j), c[i - 1][j]) : 0);
  }
  return c[n][k];
}

std::vector<int> conjugate(const std::vector<int>& lambda) {
  std::vector<int> out;
  int m = lambda.empty() ? 0 : lambda.front();
  for (int i = 1; i <= m; ++i) {
    int c = 0;
    for (int x : lambda) c += x >= i;
    out.push_back(c);
  }
  return out;
}

// Subgroups of type mu in the abelian p-group of type lambda.
Int birkhoff(const std::vector<int>& lambda, const std::vector<int>& mu, Int p) {
  auto lc = conjugate(lambda), mc = conjugate(mu);
  auto at = [](const std::vector<int>& v, std::size_t i) { return i < v.size() ? v[i] : 0; };
  Int r = 1;
  for (std::size_t i = 0; i < lc.size(); ++i) {
    int l = at(lc, i), m = at(mc, i), m1 = at(mc, i + 1);
    r = checked_mul(r, checked_pow(p, static_cast<unsigned>(m1 * (l - m))));
    r = checked_mul(r, gaussian_binomial(l - m1, m - m1, p));
  }
  return r;
}

void partitions_below(const std::vector<int>& lambda, std::size_t i, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (i == lambda.size()) {
    std::vector<int> mu;
    for (int x : cur)
      if (x > 0) mu.push_back(x);
    out.push_back(mu);
    return;
  }
  int hi = lambda[i];
  if (i > 0) hi = std::min(hi, cur[i - 1]);
  for (int x = 0; x <= hi; ++x) {
    cur.push_back(x);
    partitions_below(lambda, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Int> brute_component_orders(const CharacterGroup& x) {
  return component_orders_from(x, local_unit_sets(x.ambient()));
}

Int subgroup_count_formula(const FiniteAbelianGroup& g) {
  std::map<Int, std::vector<int>> types;
  for (Int d : g.invariant_factors())
    for (auto [p, e] : factorize(d)) types[p].push_back(e);
  Int total = 1;
  for (auto& [p, lambda] : types) {
    std::sort(lambda.rbegin(), lambda.rend());
    std::vector<std::vector<int>> mus;
    std::vector<int> cur;
    partitions_below(lambda, 0, cur, mus);
    Int count = 0;
    for (const auto& mu : mus) count = checked_add(count, birkhoff(lambda, mu, p));
    total = checked_mul(total, count);
  }
  return total;
}

SubfieldLattice enumerate_subfields(const CharacterAmbient& ambient, Int bound) {
  const auto& g = ambient.group();
  std::set<Subgroup> cyclic;
  for (const auto& e : g.elements()) cyclic.insert(Subgroup::generated(g, {e}));
  std::set<Subgroup> all(cyclic.begin(), cyclic.end());
  std::vector<Subgroup> frontier(cyclic.begin(), cyclic.end());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& s : frontier)
      for (const auto& c : cyclic) {
        if (s.contains(c)) continue;
        auto j = product(s, c);
        if (all.insert(j).second) {
          next.push_back(j);
          if (static_cast<Int>(all.size()) > bound)
            throw BoundExceeded("subgroup lattice exceeds " + std::to_string(bound) + " entries");
        }
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> sorted(all.begin(), all.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
  SubfieldLattice lat(ambient);
  auto local = local_unit_sets(ambient);
  std::vector<std::vector<GroupElement>> inf{infinity_inertia_set(ambient)};
  for (auto& s : sorted) {
    CharacterGroup x(ambient, s);
    SubfieldEntry e{x, component_orders_from(x, local), component_orders_from(x, inf)[0], std::nullopt};
    if (ambient.is_numeric()) e.even = e.infinity_inertia == 1;
    lat.index_.emplace(s, lat.entries_.size());
    lat.entries_.push_back(std::move(e));
  }
  return lat;
}

std::size_t SubfieldLattice::find(const CharacterGroup& x) const {
  if (!(x.ambient() == ambient_)) throw AmbientMismatch("character group is not in this lattice");
  auto it = index_.find(x.dual());
  if (it == index_.end()) throw DomainError("character group missing from lattice");
  return it->second;
}

std::size_t SubfieldLattice::join_index(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  auto key = std::make_pair(a, b);
  auto it = join_cache_.find(key);
  if (it != join_cache_.end()) return it->second;
  std::size_t r = index_.at(product(entries_[a].group.dual(), entries_[b].group.dual()));
  join_cache_.emplace(key, r);
  return r;
}

std::size_t SubfieldLattice::meet_index(std::size_t a, std::size_t b) const {
  return index_.at(intersect(entries_[a].group.dual(), entries_[b].group.dual()));
}

namespace {

CharacterGroup search(const CharacterGroup& x, const SubfieldLattice* lattice, bool genus) {
  std::optional<SubfieldLattice> own;
  if (!lattice) {
    own = enumerate_subfields(x.ambient());
    lattice = &*own;
  }
  const auto& entries = lattice->entries();
  const std::size_t xi = lattice->find(x);
  const auto& target = entries[xi].component_orders;
  const Int inertia = entries[xi].infinity_inertia;
  auto admissible = [&](std::size_t k) {
    if (entries[k].component_orders != target) return false;
    if (genus && entries[k].infinity_inertia != inertia) return false;
    return true;
  };
  std::size_t best = xi;
  for (std::size_t j = 0; j < entries.size(); ++j) {
    std::size_t k = lattice->join_index(xi, j);
    if (admissible(k)) best = lattice->join_index(best, k);
  }
  if (!admissible(best)) throw Error("admissible subgroups are not closed under join");
  return entries[best].group;
}

}  // namespace

CharacterGroup maximal_extended_search(const CharacterGroup& x, const SubfieldLattice* lattice) {
  return search(x, lattice, false);
}

CharacterGroup maximal_genus_search(const CharacterGroup& x, const SubfieldLattice* lattice) {
  return search(x, lattice, true);
}

}  // namespace genus
