#include "genus/characters.hpp"

#include <sstream>

#include "genus/errors.hpp"

namespace genus {

// ---------------------------------------------------------------------------
// CharacterAmbient

CharacterAmbient CharacterAmbient::numeric(Int n, Int bound) {
  return CharacterAmbient(std::make_shared<const ModularUnitGroup>(n, bound));
}

CharacterAmbient CharacterAmbient::polynomial(const FqPoly& n, Int bound) {
  return CharacterAmbient(std::make_shared<const PolyUnitGroup>(factor_modulus(n, bound), bound));
}

const ModularUnitGroup& CharacterAmbient::numeric_units() const {
  if (!is_numeric()) throw DomainError("expected a numeric ambient");
  return *std::get<0>(u_);
}

const PolyUnitGroup& CharacterAmbient::poly_units() const {
  if (is_numeric()) throw DomainError("expected a function-field ambient");
  return *std::get<1>(u_);
}

const FiniteAbelianGroup& CharacterAmbient::group() const {
  return is_numeric() ? std::get<0>(u_)->group() : std::get<1>(u_)->group();
}

const std::vector<UnitBlock>& CharacterAmbient::blocks() const {
  return is_numeric() ? std::get<0>(u_)->blocks() : std::get<1>(u_)->blocks();
}

std::string CharacterAmbient::modulus_string() const {
  if (is_numeric()) return std::to_string(std::get<0>(u_)->modulus());
  return std::get<1>(u_)->modulus().modulus.to_string();
}

bool CharacterAmbient::operator==(const CharacterAmbient& o) const {
  if (is_numeric() != o.is_numeric()) return false;
  if (is_numeric()) return std::get<0>(u_)->modulus() == std::get<0>(o.u_)->modulus();
  return std::get<1>(u_)->modulus().modulus == std::get<1>(o.u_)->modulus().modulus;
}

namespace {

void require_same(const CharacterAmbient& a, const CharacterAmbient& b) {
  if (!(a == b)) throw AmbientMismatch("characters on different unit groups: " + a.modulus_string() + " vs " +
                                       b.modulus_string());
}

}  // namespace

// ---------------------------------------------------------------------------
// Character

Character::Character(CharacterAmbient ambient, GroupElement exponents)
    : ambient_(std::move(ambient)), a_(std::move(exponents)) {
  ambient_.group().check_dimension(a_);
  a_ = ambient_.group().reduce(a_.exponents);
}

Character Character::trivial(const CharacterAmbient& ambient) { return Character(ambient, ambient.group().identity()); }

Character Character::from_generator_values(const CharacterAmbient& ambient, const std::vector<Int>& values,
                                           Int root_order) {
  const auto& d = ambient.group().moduli();
  if (values.size() != d.size()) throw DimensionError("one value per generator required");
  std::vector<Int> a(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    __int128 vd = static_cast<__int128>(mod(values[i], root_order)) * d[i];
    if (vd % root_order != 0) throw DomainError("character value inconsistent with generator order");
    a[i] = static_cast<Int>((vd / root_order) % d[i]);
  }
  return Character(ambient, GroupElement(std::move(a)));
}

Int Character::order() const { return ambient_.group().element_order(a_); }

bool Character::is_trivial() const {
  for (Int x : a_.exponents)
    if (x) return false;
  return true;
}

Int Character::value_on(const GroupElement& x) const {
  const auto& g = ambient_.group();
  g.check_dimension(x);
  const Int e = g.exponent();
  Int v = 0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    Int w = mulmod(a_[i], e / g.moduli()[i], e);
    v = (v + mulmod(w, mod(x[i], g.moduli()[i]), e)) % e;
  }
  return v;
}

Int Character::value(Int u) const { return value_on(ambient_.numeric_units().dlog(u)); }

Int Character::value(const FqPoly& u) const { return value_on(ambient_.poly_units().dlog(u)); }

Character Character::operator*(const Character& o) const {
  require_same(ambient_, o.ambient_);
  return Character(ambient_, ambient_.group().add(a_, o.a_));
}

Character Character::inverse() const { return Character(ambient_, ambient_.group().negate(a_)); }

Character Character::component(std::size_t block) const {
  const auto& blocks = ambient_.blocks();
  if (block >= blocks.size()) throw DimensionError("block index out of range");
  GroupElement out = ambient_.group().identity();
  for (std::size_t c : blocks[block].coords) out[c] = a_[c];
  return Character(ambient_, std::move(out));
}

std::string Character::to_string() const {
  std::ostringstream os;
  os << "chi mod " << ambient_.modulus_string() << " [";
  for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// CharacterGroup

CharacterGroup::CharacterGroup(CharacterAmbient ambient, Subgroup dual)
    : ambient_(std::move(ambient)), dual_(std::move(dual)) {
  if (!(dual_.ambient() == ambient_.group())) throw AmbientMismatch("dual subgroup lives in a different group");
}

CharacterGroup CharacterGroup::generated(const CharacterAmbient& ambient, const std::vector<Character>& gens) {
  std::vector<GroupElement> v;
  for (const auto& c : gens) {
    require_same(ambient, c.ambient());
    v.push_back(c.exponents());
  }
  return CharacterGroup(ambient, Subgroup::generated(ambient.group(), v));
}

CharacterGroup CharacterGroup::trivial(const CharacterAmbient& ambient) {
  return CharacterGroup(ambient, Subgroup::trivial(ambient.group()));
}

CharacterGroup CharacterGroup::full(const CharacterAmbient& ambient) {
  return CharacterGroup(ambient, Subgroup::whole(ambient.group()));
}

bool CharacterGroup::contains(const Character& chi) const {
  require_same(ambient_, chi.ambient());
  return dual_.contains(chi.exponents());
}

bool CharacterGroup::contains(const CharacterGroup& other) const {
  require_same(ambient_, other.ambient_);
  return dual_.contains(other.dual_);
}

std::vector<Character> CharacterGroup::generators() const {
  std::vector<Character> out;
  for (auto& g : dual_.generators()) out.emplace_back(ambient_, std::move(g));
  return out;
}

std::vector<Character> CharacterGroup::characters(Int bound) const {
  std::vector<Character> out;
  for (auto& g : dual_.elements(bound)) out.emplace_back(ambient_, std::move(g));
  return out;
}

namespace {

// Weights of the functional x -> chi_a(x) in Z/E.
std::vector<Int> character_weights(const FiniteAbelianGroup& g, const GroupElement& a) {
  const Int e = g.exponent();
  std::vector<Int> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = mulmod(a[i], e / g.moduli()[i], e);
  return w;
}

Subgroup common_kernel(const FiniteAbelianGroup& g, const std::vector<GroupElement>& functionals) {
  Subgroup k = Subgroup::whole(g);
  const Int e = g.exponent();
  for (const auto& a : functionals) {
    auto w = character_weights(g, a);
    k = intersect(k, Subgroup::kernel_of_functional(g, w, e));
  }
  return k;
}

}  // namespace

Subgroup CharacterGroup::kernel() const { return common_kernel(ambient_.group(), dual_.generators()); }

CharacterGroup CharacterGroup::component(std::size_t block) const {
  std::vector<Character> gens;
  for (const auto& c : generators()) gens.push_back(c.component(block));
  return generated(ambient_, gens);
}

std::string CharacterGroup::to_string() const {
  std::ostringstream os;
  os << "X mod " << ambient_.modulus_string() << " order " << order() << " " << dual_.to_string();
  return os.str();
}

CharacterGroup join(const CharacterGroup& a, const CharacterGroup& b) {
  require_same(a.ambient(), b.ambient());
  return CharacterGroup(a.ambient(), product(a.dual(), b.dual()));
}

CharacterGroup meet(const CharacterGroup& a, const CharacterGroup& b) {
  require_same(a.ambient(), b.ambient());
  return CharacterGroup(a.ambient(), intersect(a.dual(), b.dual()));
}

CharacterGroup annihilator(const CharacterAmbient& ambient, const Subgroup& h) {
  if (!(h.ambient() == ambient.group())) throw AmbientMismatch("subgroup lives in a different group");
  // chi_a(h) = sum a_i h_i E/d_i is symmetric in a and h.
  return CharacterGroup(ambient, common_kernel(ambient.group(), h.generators()));
}

// ---------------------------------------------------------------------------
// Lifting

Character lift(const Character& chi, const CharacterAmbient& target) {
  const auto& src = chi.ambient();
  if (src.is_numeric() != target.is_numeric()) throw AmbientMismatch("cannot lift across ambient kinds");
  std::vector<Int> values;
  if (src.is_numeric()) {
    Int n = src.numeric_units().modulus(), n2 = target.numeric_units().modulus();
    if (n2 % n != 0) throw AmbientMismatch(std::to_string(n) + " does not divide " + std::to_string(n2));
    for (Int g : target.numeric_units().generators()) values.push_back(chi.value(g));
  } else {
    const auto& n = src.poly_units().modulus().modulus;
    const auto& n2 = target.poly_units().modulus().modulus;
    if (!(*n.field() == *n2.field()) || !(n2 % n).is_zero())
      throw AmbientMismatch(n.to_string() + " does not divide " + n2.to_string());
    for (const auto& g : target.poly_units().generators()) values.push_back(chi.value(g));
  }
  return Character::from_generator_values(target, values, src.exponent());
}

CharacterGroup lift(const CharacterGroup& x, const CharacterAmbient& target) {
  std::vector<Character> gens;
  for (const auto& c : x.generators()) gens.push_back(lift(c, target));
  return CharacterGroup::generated(target, gens);
}

// ---------------------------------------------------------------------------
// Components, conductors, parity

std::vector<Component> component_decompose(const CharacterGroup& x) {
  const auto& amb = x.ambient();
  std::vector<Component> out;
  for (std::size_t b = 0; b < amb.blocks().size(); ++b) {
    Component c{amb.blocks()[b].label, 0, std::nullopt, b, x.component(b)};
    if (amb.is_numeric()) {
      c.prime = amb.numeric_units().block_primes()[b];
    } else {
      c.prime = amb.poly_units().field()->p();
      c.place = amb.poly_units().modulus().factors[b].first;
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// Lift of a local unit (residue mod the block's prime power) to the full
// modulus, 1 at every other block.
Int crt_lift_numeric(const ModularUnitGroup& u, std::size_t block, Int local) {
  const Int n = u.modulus();
  const Int pk = checked_pow(u.block_primes()[block], static_cast<unsigned>(u.block_exponents()[block]));
  const Int cof = n / pk;
  const Int t = mulmod(mod(local - 1, pk), inverse_mod(mod(cof, pk), pk), pk);
  return mod(1 + static_cast<Int>(static_cast<__int128>(cof) * t % n), n);
}

FqPoly crt_lift_poly(const PolyUnitGroup& u, std::size_t block, const FqPoly& local) {
  const auto& n = u.modulus().modulus;
  const auto& m = u.local_modulus(block);
  const FqPoly one = FqPoly::constant(n.field(), 1);
  const FqPoly cof = n / m;
  const FqPoly t = ((local - one) * inverse_mod(cof % m, m)) % m;
  return (one + cof * t) % n;
}

// Smallest j with the block component trivial on 1 + P^j.
int block_conductor_exponent(const Character& chi, std::size_t block) {
  const auto& amb = chi.ambient();
  Character c = chi.component(block);
  if (c.is_trivial()) return 0;
  if (amb.is_numeric()) {
    const auto& u = amb.numeric_units();
    const Int p = u.block_primes()[block];
    const int k = u.block_exponents()[block];
    for (int j = (p == 2 ? 2 : 1); j < k; ++j) {
      // 1 + p^j generates U^(j) here.
      Int g = 1 + checked_pow(p, static_cast<unsigned>(j));
      if (c.value(crt_lift_numeric(u, block, g)) == 0) return j;
    }
    return k;
  }
  const auto& u = amb.poly_units();
  const auto& [P, a] = u.modulus().factors[block];
  const auto& f = P.field();
  const FqPoly one = FqPoly::constant(f, 1);
  // Additive F_p-basis of F_q: w^t for t < s.
  std::vector<FqPoly::Elem> basis;
  {
    FqPoly::Elem w = 1;
    for (int t = 0; t < f->s(); ++t) {
      basis.push_back(w);
      w = static_cast<FqPoly::Elem>(w * f->p());
    }
  }
  for (int j = 1; j < a; ++j) {
    bool trivial = true;
    FqPoly pl = one;
    for (int l = 0; l < j; ++l) pl = pl * P;
    for (int l = j; l < a && trivial; ++l, pl = pl * P)
      for (int i = 0; i < P.degree() && trivial; ++i)
        for (auto b : basis) {
          FqPoly g = one + pl * FqPoly::monomial(f, b, i);
          if (c.value(crt_lift_poly(u, block, g)) != 0) {
            trivial = false;
            break;
          }
        }
    if (trivial) return j;
  }
  return a;
}

Conductor assemble_conductor(const CharacterAmbient& amb, const std::vector<int>& exps) {
  if (amb.is_numeric()) {
    Int c = 1;
    for (std::size_t b = 0; b < exps.size(); ++b)
      c *= checked_pow(amb.numeric_units().block_primes()[b], static_cast<unsigned>(exps[b]));
    return c;
  }
  const auto& fm = amb.poly_units().modulus();
  FqPoly c = FqPoly::constant(fm.modulus.field(), 1);
  for (std::size_t b = 0; b < exps.size(); ++b)
    for (int i = 0; i < exps[b]; ++i) c = c * fm.factors[b].first;
  return c;
}

}  // namespace

Conductor conductor(const Character& chi) {
  std::vector<int> exps;
  for (std::size_t b = 0; b < chi.ambient().blocks().size(); ++b) exps.push_back(block_conductor_exponent(chi, b));
  return assemble_conductor(chi.ambient(), exps);
}

Conductor conductor(const CharacterGroup& x) {
  std::vector<int> exps(x.ambient().blocks().size(), 0);
  for (const auto& chi : x.generators())
    for (std::size_t b = 0; b < exps.size(); ++b) exps[b] = std::max(exps[b], block_conductor_exponent(chi, b));
  return assemble_conductor(x.ambient(), exps);
}

std::string conductor_string(const Conductor& c) {
  if (std::holds_alternative<Int>(c)) return std::to_string(std::get<Int>(c));
  return std::get<FqPoly>(c).to_string();
}

Parity parity(const Character& chi) {
  if (!chi.ambient().is_numeric()) throw DomainError("parity is only defined for characters of (Z/nZ)*");
  Int n = chi.ambient().numeric_units().modulus();
  return chi.value(n - 1) == 0 ? Parity::Even : Parity::Odd;
}

// ---------------------------------------------------------------------------
// Quadratic characters

bool is_fundamental_discriminant(Int d) {
  if (d == 0 || d == 1) return false;
  Int r = mod(d, 4);
  if (r == 1) return is_squarefree(d < 0 ? -d : d);
  if (r != 0) return false;
  Int m = d / 4;
  Int rm = mod(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(m < 0 ? -m : m);
}

int kronecker_symbol(Int d, Int a) {
  if (a < 1) throw DomainError("Kronecker symbol needs a >= 1");
  int result = 1;
  while (a % 2 == 0) {
    a /= 2;
    Int r = mod(d, 8);
    if (r % 2 == 0) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (d / a), a odd.
  Int x = mod(d, a), y = a;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      Int r = y % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

Character kronecker_character(Int d, Int bound) {
  if (!is_fundamental_discriminant(d)) throw DomainError(std::to_string(d) + " is not a fundamental discriminant");
  auto amb = CharacterAmbient::numeric(d < 0 ? -d : d, bound);
  std::vector<Int> values;
  for (Int g : amb.numeric_units().generators()) values.push_back(kronecker_symbol(d, g) == 1 ? 0 : 1);
  return Character::from_generator_values(amb, values, 2);
}

std::vector<RamificationEntry> ramification_exponents(const CharacterGroup& x) {
  std::vector<RamificationEntry> out;
  for (const auto& c : component_decompose(x)) {
    Int e = c.group.order();
    if (e == 1) continue;
    Int wild = p_part(e, c.prime);
    out.push_back({c.label, c.prime, c.place, e, e / wild, wild});
  }
  return out;
}

}  // namespace genus
