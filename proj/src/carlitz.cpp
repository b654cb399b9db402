#include "genus/carlitz.hpp"

#include "genus/errors.hpp"

namespace genus {

CarlitzPoly::CarlitzPoly(FqFieldPtr field, std::vector<FqPoly> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!(*c.field() == *field_)) throw AmbientMismatch("Carlitz coefficient over a different field");
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

CarlitzPoly CarlitzPoly::zero(FqFieldPtr field) { return CarlitzPoly(std::move(field), {}); }

CarlitzPoly CarlitzPoly::identity(FqFieldPtr field) {
  auto one = FqPoly::constant(field, 1);
  return CarlitzPoly(std::move(field), {one});
}

CarlitzPoly CarlitzPoly::operator+(const CarlitzPoly& o) const {
  if (!(*field_ == *o.field_)) throw AmbientMismatch("Carlitz polynomials over different fields");
  std::vector<FqPoly> r(std::max(coeffs_.size(), o.coeffs_.size()), FqPoly(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] = r[i] + o.coeffs_[i];
  return CarlitzPoly(field_, std::move(r));
}

CarlitzPoly CarlitzPoly::operator-(const CarlitzPoly& o) const {
  std::vector<FqPoly> neg;
  for (const auto& c : o.coeffs_) neg.push_back(-c);
  return *this + CarlitzPoly(o.field_, std::move(neg));
}

CarlitzPoly CarlitzPoly::compose(const CarlitzPoly& other) const {
  if (!(*field_ == *other.field_)) throw AmbientMismatch("Carlitz polynomials over different fields");
  if (is_zero() || other.is_zero()) return zero(field_);
  const Int q = field_->q();
  std::vector<FqPoly> r(coeffs_.size() + other.coeffs_.size() - 1, FqPoly(field_));
  Int qi = 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero())
      for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
        r[i + j] = r[i + j] + coeffs_[i] * other.coeffs_[j].inflate(qi);
    if (i + 1 < coeffs_.size()) qi = checked_mul(qi, q);
  }
  return CarlitzPoly(field_, std::move(r));
}

FqPoly CarlitzPoly::evaluate(const FqPoly& u) const {
  const Int q = field_->q();
  FqPoly r(field_);
  Int qi = 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    r = r + coeffs_[i] * u.inflate(qi);
    if (i + 1 < coeffs_.size()) qi = checked_mul(qi, q);
  }
  return r;
}

FqPoly CarlitzPoly::evaluate_mod(const FqPoly& u, const FqPoly& modulus) const {
  FqPoly r(field_);
  FqPoly power = u % modulus;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    r = (r + (coeffs_[i] % modulus) * power) % modulus;
    power = powmod(power, field_->q(), modulus);
  }
  return r;
}

std::vector<FqPoly> CarlitzPoly::dense(Int bound) const {
  if (is_zero()) return {};
  const Int q = field_->q();
  Int top = 1;
  for (int i = 0; i < q_degree(); ++i) {
    top = checked_mul(top, q);
    if (top > bound) throw BoundExceeded("x-degree q^" + std::to_string(q_degree()) + " exceeds bound");
  }
  std::vector<FqPoly> r(static_cast<std::size_t>(top) + 1, FqPoly(field_));
  Int qi = 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    r[static_cast<std::size_t>(qi)] = coeffs_[i];
    if (i + 1 < coeffs_.size()) qi *= q;
  }
  return r;
}

std::string CarlitzPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  Int qi = 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    if (!c.is_zero()) {
      if (!out.empty()) out += "+";
      std::string x = qi == 1 ? "x" : "x^" + std::to_string(qi);
      if (c.is_one()) {
        out += x;
      } else {
        std::string cs = c.to_string();
        int terms = 0;
        for (auto v : c.coefficients()) terms += v != 0;
        out += (terms > 1 ? "(" + cs + ")" : cs) + "*" + x;
      }
    }
    if (i + 1 < coeffs_.size()) qi *= field_->q();
  }
  return out;
}

CarlitzPoly carlitz_action(const FqPoly& m) {
  const auto& f = m.field();
  // C_{T^k} from C_{T^{k-1}} via C_T(y) = T y + y^q.
  const FqPoly t = FqPoly::variable(f);
  CarlitzPoly power = CarlitzPoly::identity(f);
  CarlitzPoly acc = CarlitzPoly::zero(f);
  for (int k = 0; k <= m.degree(); ++k) {
    if (k > 0) {
      std::vector<FqPoly> next(power.coeffs().size() + 1, FqPoly(f));
      for (std::size_t i = 0; i < power.coeffs().size(); ++i) {
        next[i] = next[i] + t * power.coeffs()[i];
        next[i + 1] = next[i + 1] + power.coeffs()[i].inflate(f->q());
      }
      power = CarlitzPoly(f, std::move(next));
    }
    if (m.coeff(k) != 0) {
      std::vector<FqPoly> scaled;
      for (const auto& c : power.coeffs()) scaled.push_back(c.scaled(m.coeff(k)));
      acc = acc + CarlitzPoly(f, std::move(scaled));
    }
  }
  return acc;
}

FqPoly carlitz_apply(const FqPoly& m, const FqPoly& u) { return carlitz_action(m).evaluate(u); }

Int torsion_order_check(const FqPoly& n, Int bound) {
  if (n.is_zero()) throw DomainError("torsion of the zero polynomial is not finite");
  const Int q = n.field()->q();
  Int expected = 1;
  for (int i = 0; i < n.degree(); ++i) {
    expected = checked_mul(expected, q);
    if (expected > bound) throw BoundExceeded("q^deg N exceeds bound " + std::to_string(bound));
  }
  auto d = carlitz_action(n).dense(bound);
  if (static_cast<Int>(d.size()) - 1 != expected) throw Error("C_N has the wrong x-degree");
  if (!(d.back() == FqPoly::constant(n.field(), n.lead()))) throw Error("C_N has the wrong leading coefficient");
  // d/dx C_N: only x^1 survives since p | q^i for i >= 1.
  const Int p = n.field()->p();
  FqPoly deriv(n.field());
  bool constant_in_x = true;
  for (std::size_t j = 1; j < d.size(); ++j) {
    if (d[j].is_zero() || static_cast<Int>(j) % p == 0) continue;
    if (j == 1)
      deriv = d[j];
    else
      constant_in_x = false;
  }
  if (!constant_in_x || !(deriv == n)) throw Error("derivative of C_N is not the constant N");
  // gcd(C_N, N) over F_q(T)[x] is 1 since N is a nonzero constant in x, so
  // the roots are simple.
  return expected;
}

}  // namespace genus
