#include "genus/abelian_group.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "genus/errors.hpp"

namespace genus {

namespace {

using Row = std::vector<Int>;
using Wide = __int128;

Int reduce_wide(Wide v, Int m) {
  Wide r = v % m;
  if (r < 0) r += m;
  return static_cast<Int>(r);
}

// Hermite basis of the lattice spanned by `gens` together with
// diag(moduli). Every coordinate j may be reduced modulo moduli[j] at any
// time since moduli[j] * e_j lies in the lattice.
std::vector<Row> echelon_mod(const std::vector<Row>& gens, const std::vector<Int>& moduli) {
  const std::size_t k = moduli.size();
  std::vector<Row> h(k, Row(k, 0));
  for (std::size_t i = 0; i < k; ++i) h[i][i] = moduli[i];

  for (const Row& g : gens) {
    Row v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = mod(g[j], moduli[j]);
    for (std::size_t c = 0; c < k; ++c) {
      if (v[c] == 0) continue;
      Row& piv = h[c];
      auto [g0, s, t] = ext_gcd(piv[c], v[c]);
      Int a = piv[c] / g0;
      Int b = v[c] / g0;
      Row new_piv(k, 0), rest(k, 0);
      for (std::size_t j = c; j < k; ++j) {
        Wide x = static_cast<Wide>(s) * piv[j] + static_cast<Wide>(t) * v[j];
        Wide y = static_cast<Wide>(b) * piv[j] - static_cast<Wide>(a) * v[j];
        new_piv[j] = (j == c) ? g0 : reduce_wide(x, moduli[j]);
        rest[j] = (j == c) ? 0 : reduce_wide(y, moduli[j]);
      }
      piv = std::move(new_piv);
      v = std::move(rest);
    }
  }

  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < c; ++r) {
      Int q = h[r][c] / h[c][c];
      if (h[r][c] - q * h[c][c] < 0) --q;
      if (q == 0) continue;
      for (std::size_t j = c; j < k; ++j) {
        Wide x = static_cast<Wide>(h[r][j]) - static_cast<Wide>(q) * h[c][j];
        h[r][j] = (j == c) ? static_cast<Int>(x) : reduce_wide(x, moduli[j]);
      }
    }
  }
  return h;
}

// Assembles an invariant-factor chain from prime-power cyclic factors.
std::vector<Int> chain_from_prime_powers(const std::map<Int, std::vector<Int>>& by_prime) {
  std::size_t len = 0;
  for (const auto& [p, powers] : by_prime) len = std::max(len, powers.size());
  std::vector<Int> chain(len, 1);
  for (const auto& [p, powers] : by_prime) {
    std::vector<Int> sorted = powers;
    std::sort(sorted.begin(), sorted.end());
    // Largest powers go to the end of the chain.
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      std::size_t pos = len - sorted.size() + i;
      chain[pos] = checked_mul(chain[pos], sorted[i]);
    }
  }
  return chain;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> cyclic_orders) : moduli_(std::move(cyclic_orders)) {
  for (Int d : moduli_) {
    if (d < 2) throw DomainError("cyclic factor orders must be >= 2");
    order_ = checked_mul(order_, d);
  }
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(Int n) {
  if (n < 1) throw DomainError("cyclic group order must be positive");
  if (n == 1) return FiniteAbelianGroup{};
  return FiniteAbelianGroup({n});
}

FiniteAbelianGroup FiniteAbelianGroup::from_invariant_factors(std::vector<Int> chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (chain[i + 1] % chain[i] != 0) throw DomainError("invariant factors must form a divisibility chain");
  return FiniteAbelianGroup(std::move(chain));
}

Int FiniteAbelianGroup::exponent() const {
  Int e = 1;
  for (Int d : moduli_) e = lcm(e, d);
  return e;
}

std::vector<Int> FiniteAbelianGroup::invariant_factors() const {
  std::map<Int, std::vector<Int>> by_prime;
  for (Int d : moduli_)
    for (auto [p, k] : factorize(d)) by_prime[p].push_back(checked_pow(p, static_cast<unsigned>(k)));
  return chain_from_prime_powers(by_prime);
}

bool FiniteAbelianGroup::is_isomorphic(const FiniteAbelianGroup& other) const {
  return invariant_factors() == other.invariant_factors();
}

GroupElement FiniteAbelianGroup::identity() const { return GroupElement(std::vector<Int>(rank(), 0)); }

GroupElement FiniteAbelianGroup::generator(std::size_t i) const {
  GroupElement g = identity();
  g[i] = 1;
  return g;
}

void FiniteAbelianGroup::check_dimension(const GroupElement& a) const {
  if (a.size() != rank())
    throw DimensionError("element has length " + std::to_string(a.size()) + ", ambient rank is " +
                         std::to_string(rank()));
}

GroupElement FiniteAbelianGroup::reduce(std::vector<Int> v) const {
  GroupElement e(std::move(v));
  check_dimension(e);
  for (std::size_t i = 0; i < rank(); ++i) e[i] = mod(e[i], moduli_[i]);
  return e;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  check_dimension(a);
  check_dimension(b);
  GroupElement r = identity();
  for (std::size_t i = 0; i < rank(); ++i) r[i] = mod(a[i] + b[i], moduli_[i]);
  return r;
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const {
  check_dimension(a);
  GroupElement r = identity();
  for (std::size_t i = 0; i < rank(); ++i) r[i] = mod(-a[i], moduli_[i]);
  return r;
}

GroupElement FiniteAbelianGroup::scale(const GroupElement& a, Int k) const {
  check_dimension(a);
  GroupElement r = identity();
  for (std::size_t i = 0; i < rank(); ++i) r[i] = mulmod(a[i], k, moduli_[i]);
  return r;
}

Int FiniteAbelianGroup::element_order(const GroupElement& a) const {
  check_dimension(a);
  Int o = 1;
  for (std::size_t i = 0; i < rank(); ++i) o = lcm(o, moduli_[i] / gcd(moduli_[i], a[i]));
  return o;
}

bool FiniteAbelianGroup::is_element(const GroupElement& a) const {
  if (a.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (a[i] < 0 || a[i] >= moduli_[i]) return false;
  return true;
}

std::vector<GroupElement> FiniteAbelianGroup::elements(Int bound) const {
  if (order_ > bound) throw BoundExceeded("group of order " + std::to_string(order_) + " exceeds enumeration bound");
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order_));
  GroupElement cur = identity();
  for (Int n = 0; n < order_; ++n) {
    out.push_back(cur);
    for (std::size_t i = rank(); i-- > 0;) {
      if (++cur[i] < moduli_[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

std::string FiniteAbelianGroup::to_string() const {
  if (moduli_.empty()) return "C1";
  std::ostringstream os;
  for (std::size_t i = 0; i < moduli_.size(); ++i) os << (i ? "xC" : "C") << moduli_[i];
  return os.str();
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(FiniteAbelianGroup ambient, std::vector<std::vector<Int>> rows)
    : ambient_(std::move(ambient)), rows_(std::move(rows)) {
  order_ = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) order_ *= ambient_.moduli()[i] / rows_[i][i];
}

Subgroup Subgroup::generated(const FiniteAbelianGroup& ambient, std::span<const GroupElement> gens) {
  std::vector<Row> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) {
    ambient.check_dimension(g);
    rows.push_back(g.exponents);
  }
  return Subgroup(ambient, echelon_mod(rows, ambient.moduli()));
}

Subgroup Subgroup::generated(const FiniteAbelianGroup& ambient, std::initializer_list<GroupElement> gens) {
  return generated(ambient, std::span<const GroupElement>(gens.begin(), gens.size()));
}

Subgroup Subgroup::trivial(const FiniteAbelianGroup& ambient) { return Subgroup(ambient, echelon_mod({}, ambient.moduli())); }

Subgroup Subgroup::whole(const FiniteAbelianGroup& ambient) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < ambient.rank(); ++i) rows.push_back(ambient.generator(i).exponents);
  return Subgroup(ambient, echelon_mod(rows, ambient.moduli()));
}

Subgroup Subgroup::kernel_of_functional(const FiniteAbelianGroup& ambient, std::span<const Int> weights, Int modulus) {
  const std::size_t k = ambient.rank();
  if (weights.size() != k) throw DimensionError("functional has wrong length");
  if (modulus < 1) throw DomainError("functional modulus must be positive");
  for (std::size_t i = 0; i < k; ++i)
    if (mulmod(weights[i], ambient.moduli()[i], modulus) != 0)
      throw DomainError("functional is not well defined on the ambient group");
  // Lattice of (w.x mod m, x); rows with zero first coordinate span the kernel.
  std::vector<Int> moduli{modulus};
  moduli.insert(moduli.end(), ambient.moduli().begin(), ambient.moduli().end());
  std::vector<Row> gens;
  for (std::size_t i = 0; i < k; ++i) {
    Row r(k + 1, 0);
    r[0] = mod(weights[i], modulus);
    r[i + 1] = 1;
    gens.push_back(std::move(r));
  }
  auto h = echelon_mod(gens, moduli);
  std::vector<Row> kernel_gens;
  for (std::size_t i = 1; i <= k; ++i) kernel_gens.emplace_back(h[i].begin() + 1, h[i].end());
  return Subgroup(ambient, echelon_mod(kernel_gens, ambient.moduli()));
}

bool Subgroup::contains(const GroupElement& x) const {
  if (x.size() != ambient_.rank()) return false;
  const auto& d = ambient_.moduli();
  std::vector<Int> v(x.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = mod(x[j], d[j]);
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] % rows_[c][c] != 0) return false;
    Int q = v[c] / rows_[c][c];
    for (std::size_t j = c; j < v.size(); ++j)
      v[j] = reduce_wide(static_cast<Wide>(v[j]) - static_cast<Wide>(q) * rows_[c][j], d[j]);
  }
  return true;
}

bool Subgroup::contains(const Subgroup& other) const {
  if (!(ambient_ == other.ambient_)) throw AmbientMismatch("subgroups live in different ambient groups");
  for (const auto& r : other.rows_)
    if (!contains(GroupElement(r))) return false;
  return true;
}

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i][i] != ambient_.moduli()[i]) out.emplace_back(rows_[i]);
  return out;
}

std::vector<GroupElement> Subgroup::elements(Int bound) const {
  if (order_ > bound) throw BoundExceeded("subgroup of order " + std::to_string(order_) + " exceeds enumeration bound");
  const auto& d = ambient_.moduli();
  const std::size_t k = d.size();
  std::vector<Int> counts(k);
  for (std::size_t i = 0; i < k; ++i) counts[i] = d[i] / rows_[i][i];
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order_));
  std::vector<Int> c(k, 0);
  for (Int n = 0; n < order_; ++n) {
    std::vector<Int> v(k, 0);
    for (std::size_t r = 0; r < k; ++r)
      if (c[r] != 0)
        for (std::size_t j = r; j < k; ++j)
          v[j] = reduce_wide(static_cast<Wide>(v[j]) + static_cast<Wide>(c[r]) * rows_[r][j], d[j]);
    out.emplace_back(std::move(v));
    for (std::size_t i = k; i-- > 0;) {
      if (++c[i] < counts[i]) break;
      c[i] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// The l^j-torsion subgroup G[l^j] of the ambient group.
Subgroup torsion_subgroup(const FiniteAbelianGroup& g, Int lj) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    GroupElement e = g.identity();
    e[i] = g.moduli()[i] / gcd(g.moduli()[i], lj);
    gens.push_back(std::move(e));
  }
  return Subgroup::generated(g, gens);
}

}  // namespace

bool Subgroup::is_cyclic() const {
  for (auto [l, k] : factorize(order_)) {
    (void)k;
    if (intersect(*this, torsion_subgroup(ambient_, l)).order() > l) return false;
  }
  return true;
}

FiniteAbelianGroup Subgroup::structure() const {
  std::map<Int, std::vector<Int>> by_prime;
  for (auto [l, k] : factorize(order_)) {
    Int full = checked_pow(l, static_cast<unsigned>(k));
    // ranks[j-1] = number of cyclic l-factors of exponent >= j.
    std::vector<int> ranks;
    Int prev = 1, lj = 1;
    while (prev < full) {
      lj = checked_mul(lj, l);
      Int cur = intersect(*this, torsion_subgroup(ambient_, lj)).order();
      int r = 0;
      for (Int q = cur / prev; q > 1; q /= l) ++r;
      ranks.push_back(r);
      prev = cur;
    }
    for (std::size_t j = 0; j < ranks.size(); ++j) {
      int exact = ranks[j] - (j + 1 < ranks.size() ? ranks[j + 1] : 0);
      for (int t = 0; t < exact; ++t) by_prime[l].push_back(checked_pow(l, static_cast<unsigned>(j + 1)));
    }
  }
  return FiniteAbelianGroup(chain_from_prime_powers(by_prime));
}

FiniteAbelianGroup Subgroup::quotient_structure() const {
  std::vector<Int> inv = smith_invariants(rows_);
  return FiniteAbelianGroup(std::move(inv));
}

std::string Subgroup::to_string() const {
  std::ostringstream os;
  os << "<";
  bool first = true;
  for (const auto& g : generators()) {
    os << (first ? "" : ", ") << "(";
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << ")";
    first = false;
  }
  os << "> order " << order_ << " in " << ambient_.to_string();
  return os.str();
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) throw AmbientMismatch("intersect: subgroups live in different ambient groups");
  const auto& d = a.ambient().moduli();
  const std::size_t k = d.size();
  // Zassenhaus: rows (x, x) for x in a, (y, 0) for y in b. Echelon rows
  // whose first block vanishes carry a basis of the intersection.
  std::vector<Int> moduli(d);
  moduli.insert(moduli.end(), d.begin(), d.end());
  std::vector<Row> gens;
  for (const auto& r : a.echelon()) {
    Row x(r);
    x.insert(x.end(), r.begin(), r.end());
    gens.push_back(std::move(x));
  }
  for (const auto& r : b.echelon()) {
    Row y(r);
    y.resize(2 * k, 0);
    gens.push_back(std::move(y));
  }
  auto h = echelon_mod(gens, moduli);
  std::vector<GroupElement> inter;
  for (std::size_t i = k; i < 2 * k; ++i) inter.emplace_back(std::vector<Int>(h[i].begin() + k, h[i].end()));
  return Subgroup::generated(a.ambient(), inter);
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) throw AmbientMismatch("product: subgroups live in different ambient groups");
  std::vector<GroupElement> gens;
  for (const auto& r : a.echelon()) gens.emplace_back(r);
  for (const auto& r : b.echelon()) gens.emplace_back(r);
  return Subgroup::generated(a.ambient(), gens);
}

std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m) {
  if (m.empty()) return {};
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  // Determinant-style modulus: for a full-rank square upper triangular
  // input the product of the diagonal kills the quotient, so every entry
  // may be reduced modulo it.
  Int big = 1;
  bool triangular = rows == cols;
  for (std::size_t i = 0; triangular && i < rows; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (m[i][j] != 0) triangular = false;
    if (triangular) {
      if (m[i][i] <= 0) triangular = false;
      else big = checked_mul(big, m[i][i]);
    }
  }
  auto red = [&](Wide v) -> Int {
    if (triangular) return reduce_wide(v, big);
    if (v > static_cast<Wide>(INT64_MAX) || v < static_cast<Wide>(INT64_MIN))
      throw OverflowError("smith normal form overflow");
    return static_cast<Int>(v);
  };

  std::vector<Int> diag;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    while (true) {
      // Pick the smallest nonzero entry of the trailing block as pivot.
      std::size_t pr = rows, pc = cols;
      Int best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
            best = std::llabs(m[i][j]);
            pr = i;
            pc = j;
          }
      if (pr == rows) break;
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        Int q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] = red(static_cast<Wide>(m[i][j]) - static_cast<Wide>(q) * m[t][j]);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        Int q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] = red(static_cast<Wide>(m[i][j]) - static_cast<Wide>(q) * m[i][t]);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Pivot must divide the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t c = t; c < cols; ++c) m[t][c] = red(static_cast<Wide>(m[t][c]) + m[i][c]);
            divides = false;
            break;
          }
      if (divides) break;
    }
    Int v = std::llabs(m[t][t]);
    if (triangular) v = gcd(v, big);
    diag.push_back(v);
  }
  for (; t < cols; ++t) diag.push_back(triangular ? big : 0);
  std::vector<Int> out;
  for (Int v : diag)
    if (v != 1) out.push_back(v);
  std::sort(out.begin(), out.end(), [](Int x, Int y) {
    if (x == 0) return false;
    if (y == 0) return true;
    return x < y;
  });
  return out;
}

}  // namespace genus
