#include "genus/fq_poly.hpp"

#include <algorithm>
#include <sstream>

#include "genus/errors.hpp"

namespace genus {

namespace {

using Digits = std::vector<Int>;

Digits to_digits(Int a, Int p, int s) {
  Digits d(s, 0);
  for (int i = 0; i < s; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

Int from_digits(const Digits& d, Int p) {
  Int a = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
  return a;
}

// Product of two F_p[x] residues modulo the monic polynomial `mod`.
Digits mul_digits(const Digits& a, const Digits& b, const std::vector<Int>& m, Int p) {
  const int s = static_cast<int>(m.size()) - 1;
  std::vector<Int> prod(2 * s, 0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (int k = 2 * s - 1; k >= s; --k) {
    Int c = prod[k];
    if (c == 0) continue;
    for (int i = 0; i <= s; ++i) prod[k - s + i] = mod(prod[k - s + i] - c * m[i], p);
  }
  return Digits(prod.begin(), prod.begin() + s);
}

// Irreducibility over F_p by trial division over monic polynomials of
// degree <= deg / 2; only used for tiny defining polynomials.
bool irreducible_over_prime(const std::vector<Int>& f, Int p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    Int count = checked_pow(p, static_cast<unsigned>(d));
    for (Int idx = 0; idx < count; ++idx) {
      std::vector<Int> g = to_digits(idx, p, d);
      g.push_back(1);
      std::vector<Int> r = f;
      for (int k = n; k >= d; --k) {
        Int c = r[k];
        if (c == 0) continue;
        for (int i = 0; i <= d; ++i) r[k - d + i] = mod(r[k - d + i] - c * g[i], p);
      }
      bool zero = std::all_of(r.begin(), r.begin() + d, [](Int x) { return x == 0; });
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

FqField::FqField(Int p, int s) : p_(p), s_(s) {
  if (!is_prime(p)) throw DomainError("field characteristic must be prime, got " + std::to_string(p));
  if (s < 1) throw DomainError("field degree must be positive");
  q_ = 1;
  for (int i = 0; i < s; ++i) {
    q_ = checked_mul(q_, p);
    if (q_ > kMaxFieldSize) throw BoundExceeded("field size exceeds " + std::to_string(kMaxFieldSize));
  }
  if (s == 1) {
    modulus_ = {0, 1};
  } else {
    Int count = q_;
    for (Int idx = 0; idx < count; ++idx) {
      std::vector<Int> f = to_digits(idx, p, s);
      f.push_back(1);
      if (f[0] != 0 && irreducible_over_prime(f, p)) {
        modulus_ = std::move(f);
        break;
      }
    }
  }
  auto slow_mul = [&](Int a, Int b) -> Int {
    if (s_ == 1) return a * b % p_;
    return from_digits(mul_digits(to_digits(a, p_, s_), to_digits(b, p_, s_), modulus_, p_), p_);
  };
  auto slow_pow = [&](Int a, Int e) {
    Int r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const Int order = q_ - 1;
  auto primes = factorize(order);
  Int g = 1;
  if (order > 1) {
    for (Int cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (auto [l, e] : primes) {
        if (slow_pow(cand, order / l) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g = cand;
        break;
      }
    }
  }
  primitive_ = static_cast<Elem>(g);
  exp_.assign(order, 0);
  log_.assign(q_, -1);
  Int x = 1;
  for (Int i = 0; i < order; ++i) {
    exp_[i] = static_cast<Elem>(x);
    log_[x] = i;
    x = slow_mul(x, g);
  }
}

std::shared_ptr<const FqField> FqField::make(Int p, int s) {
  return std::shared_ptr<const FqField>(new FqField(p, s));
}

std::shared_ptr<const FqField> FqField::of_order(Int q) {
  if (q < 2) throw DomainError("field order must be a prime power >= 2");
  auto f = factorize(q);
  if (f.size() != 1) throw DomainError("field order must be a prime power, got " + std::to_string(q));
  return make(f[0].first, f[0].second);
}

FqField::Elem FqField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (s_ == 1) return static_cast<Elem>((a + b) % p_);
  Elem r = 0, w = 1;
  for (int i = 0; i < s_; ++i) {
    r += static_cast<Elem>(((a % p_) + (b % p_)) % p_) * w;
    a /= static_cast<Elem>(p_);
    b /= static_cast<Elem>(p_);
    w *= static_cast<Elem>(p_);
  }
  return r;
}

FqField::Elem FqField::neg(Elem a) const {
  if (p_ == 2) return a;
  if (s_ == 1) return static_cast<Elem>((p_ - a) % p_);
  Elem r = 0, w = 1;
  for (int i = 0; i < s_; ++i) {
    r += static_cast<Elem>((p_ - a % p_) % p_) * w;
    a /= static_cast<Elem>(p_);
    w *= static_cast<Elem>(p_);
  }
  return r;
}

FqField::Elem FqField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FqField::Elem FqField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  Int e = log_[a] + log_[b];
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[e];
}

FqField::Elem FqField::inv(Elem a) const {
  if (a == 0) throw DomainError("division by zero in F_q");
  Int e = log_[a];
  return exp_[e == 0 ? 0 : q_ - 1 - e];
}

FqField::Elem FqField::pow(Elem a, Int e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw DomainError("division by zero in F_q");
    return 0;
  }
  Int k = mod(static_cast<Int>(mulmod(log_[a], mod(e, q_ - 1), q_ - 1)), q_ - 1);
  return exp_[k];
}

// ---------------------------------------------------------------------------

FqPoly::FqPoly(FqFieldPtr field) : field_(std::move(field)) {}

FqPoly::FqPoly(FqFieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (Elem c : c_)
    if (static_cast<Int>(c) >= field_->q()) throw DomainError("coefficient outside F_q");
  trim();
}

FqPoly FqPoly::constant(FqFieldPtr field, Elem c) { return FqPoly(std::move(field), {c}); }

FqPoly FqPoly::monomial(FqFieldPtr field, Elem c, int degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return FqPoly(std::move(field), std::move(v));
}

void FqPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  FqPoly out(field_);
  out.c_ = std::move(r);
  out.trim();
  return out;
}

FqPoly FqPoly::operator-() const {
  FqPoly out(field_);
  out.c_.reserve(c_.size());
  for (Elem c : c_) out.c_.push_back(field_->neg(c));
  return out;
}

FqPoly FqPoly::operator-(const FqPoly& o) const { return *this + (-o); }

FqPoly FqPoly::operator*(const FqPoly& o) const {
  if (is_zero() || o.is_zero()) return FqPoly(field_);
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = field_->add(r[i + j], field_->mul(c_[i], o.c_[j]));
  }
  FqPoly out(field_);
  out.c_ = std::move(r);
  out.trim();
  return out;
}

FqPoly FqPoly::scaled(Elem c) const {
  FqPoly out(field_);
  if (c == 0) return out;
  out.c_.reserve(c_.size());
  for (Elem x : c_) out.c_.push_back(field_->mul(x, c));
  return out;
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  if (degree() < d.degree()) return {FqPoly(field_), *this};
  std::vector<Elem> r = c_;
  std::vector<Elem> q(c_.size() - d.c_.size() + 1, 0);
  const Elem inv_lead = field_->inv(d.lead());
  const int dd = d.degree();
  for (int k = degree(); k >= dd; --k) {
    Elem c = r[k];
    if (c == 0) continue;
    Elem f = field_->mul(c, inv_lead);
    q[k - dd] = f;
    for (int i = 0; i <= dd; ++i) r[k - dd + i] = field_->sub(r[k - dd + i], field_->mul(f, d.c_[i]));
  }
  FqPoly qq(field_), rr(field_);
  qq.c_ = std::move(q);
  qq.trim();
  r.resize(dd);
  rr.c_ = std::move(r);
  rr.trim();
  return {qq, rr};
}

FqPoly FqPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(lead()));
}

FqPoly FqPoly::derivative() const {
  FqPoly out(field_);
  if (c_.size() <= 1) return out;
  out.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    Elem k = static_cast<Elem>(static_cast<Int>(i) % field_->p());
    out.c_[i - 1] = field_->mul(c_[i], k);
  }
  out.trim();
  return out;
}

FqPoly::Elem FqPoly::evaluate(Elem x) const {
  Elem r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_->add(field_->mul(r, x), *it);
  return r;
}

FqPoly FqPoly::inflate(Int k) const {
  if (k < 1) throw DomainError("inflate needs k >= 1");
  if (is_zero()) return *this;
  Int deg = checked_mul(degree(), k);
  if (deg > (Int{1} << 24)) throw BoundExceeded("inflated degree too large");
  std::vector<Elem> r(static_cast<std::size_t>(deg) + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * static_cast<std::size_t>(k)] = c_[i];
  return FqPoly(field_, std::move(r));
}

std::strong_ordering FqPoly::operator<=>(const FqPoly& o) const {
  if (auto c = degree() <=> o.degree(); c != 0) return c;
  for (int i = degree(); i >= 0; --i)
    if (auto c = c_[i] <=> o.c_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string FqPoly::to_string(char var) const {
  if (is_zero()) return "0";
  auto elem = [&](Elem c) {
    if (field_->s() == 1) return std::to_string(c);
    return "[" + std::to_string(c) + "]";
  };
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Elem c = c_[i];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << elem(c);
      continue;
    }
    if (c != 1) os << elem(c) << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

FqPoly gcd(const FqPoly& a, const FqPoly& b) {
  FqPoly x = a, y = b;
  while (!y.is_zero()) {
    FqPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FqPoly powmod(const FqPoly& base, Int exp, const FqPoly& m) {
  if (exp < 0) return powmod(inverse_mod(base, m), -exp, m);
  FqPoly result = FqPoly::constant(base.field(), 1) % m;
  FqPoly b = base % m;
  while (exp > 0) {
    if (exp & 1) result = (result * b) % m;
    exp >>= 1;
    if (exp > 0) b = (b * b) % m;
  }
  return result;
}

FqPoly inverse_mod(const FqPoly& a, const FqPoly& m) {
  const auto& f = a.field();
  FqPoly r0 = m, r1 = a % m;
  FqPoly s0(f), s1 = FqPoly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    FqPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw DomainError("polynomial not invertible modulo " + m.to_string());
  return (s0.scaled(f->inv(r0.lead()))) % m;
}

FqPoly poly_arith(const FqPoly& a, const FqPoly& b, PolyOp op) {
  if (!(*a.field() == *b.field())) throw AmbientMismatch("polynomials over different fields");
  switch (op) {
    case PolyOp::Add:
      return a + b;
    case PolyOp::Mul:
      return a * b;
    case PolyOp::Mod:
      return a % b;
    case PolyOp::Gcd:
      return gcd(a, b);
  }
  throw DomainError("unknown polynomial operation");
}

Int encode_residue(const FqPoly& r, int degree) {
  if (r.degree() >= degree) throw DomainError("residue degree too large");
  const Int q = r.field()->q();
  Int idx = 0;
  for (int i = r.degree(); i >= 0; --i) idx = idx * q + r.coeff(i);
  return idx;
}

FqPoly decode_residue(const FqFieldPtr& field, Int index, int degree) {
  const Int q = field->q();
  std::vector<FqPoly::Elem> c(degree, 0);
  for (int i = 0; i < degree; ++i) {
    c[i] = static_cast<FqPoly::Elem>(index % q);
    index /= q;
  }
  return FqPoly(field, std::move(c));
}

bool is_irreducible(const FqPoly& f) {
  const int n = f.degree();
  if (n < 1) throw DomainError("irreducibility test needs degree >= 1");
  const auto& field = f.field();
  const FqPoly t = FqPoly::variable(field);
  FqPoly h = t % f;
  for (int i = 1; i <= n / 2; ++i) {
    h = powmod(h, field->q(), f);
    if (!gcd(h - t, f).is_one()) return false;
  }
  return true;
}

std::vector<FqPoly> monic_polynomials(const FqFieldPtr& field, int degree) {
  if (degree < 0) return {};
  Int count = 1;
  for (int i = 0; i < degree; ++i) {
    count = checked_mul(count, field->q());
    if (count > (Int{1} << 22)) throw BoundExceeded("too many monic polynomials to enumerate");
  }
  std::vector<FqPoly> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Int idx = 0; idx < count; ++idx) {
    FqPoly low = decode_residue(field, idx, degree);
    out.push_back(low + FqPoly::monomial(field, 1, degree));
  }
  return out;
}

std::vector<FqPoly> monic_irreducibles(const FqFieldPtr& field, int degree) {
  std::vector<FqPoly> out;
  for (auto& f : monic_polynomials(field, degree))
    if (is_irreducible(f)) out.push_back(std::move(f));
  return out;
}

FqPoly FactoredModulus::product() const {
  FqPoly r = FqPoly::constant(modulus.field(), 1);
  for (const auto& [pp, e] : factors)
    for (int i = 0; i < e; ++i) r = r * pp;
  return r;
}

std::string FactoredModulus::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [pp, e] : factors) {
    if (!first) os << " * ";
    first = false;
    os << '(' << pp.to_string() << ')';
    if (e > 1) os << '^' << e;
  }
  if (first) os << "1";
  return os.str();
}

FactoredModulus factor_modulus(const FqPoly& n, Int bound) {
  if (n.is_zero()) throw DomainError("cannot factor the zero polynomial");
  const auto& field = n.field();
  Int size = 1;
  for (int i = 0; i < n.degree(); ++i) {
    size = checked_mul(size, field->q());
    if (size > bound) throw BoundExceeded("q^deg N exceeds bound " + std::to_string(bound));
  }
  FactoredModulus out{n.monic(), {}};
  FqPoly rest = out.modulus;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    for (const auto& pp : monic_polynomials(field, d)) {
      if (2 * d > rest.degree()) break;
      if (!(rest % pp).is_zero()) continue;
      if (!is_irreducible(pp)) continue;
      int e = 0;
      while (true) {
        auto [qq, r] = rest.divmod(pp);
        if (!r.is_zero()) break;
        rest = std::move(qq);
        ++e;
      }
      out.factors.emplace_back(pp, e);
    }
  }
  if (rest.degree() > 0) out.factors.emplace_back(rest, 1);
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

}  // namespace genus
