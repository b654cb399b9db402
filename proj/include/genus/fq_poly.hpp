#pragma once

// Arithmetic in F_q and R_T = F_q[T].
//
// Elements of F_q (q = p^s) are integers in [0, q): the base-p digits
// a_0 + a_1 p + ... are the coordinates in the basis 1, w, ..., w^{s-1},
// where w is a root of the field's defining polynomial. The defining
// polynomial is the monic irreducible of degree s over F_p whose lower
// coefficient vector, read as a base-p integer (constant term least
// significant), is smallest.

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "genus/arith.hpp"

namespace genus {

inline constexpr Int kMaxFieldSize = Int{1} << 16;

class FqField {
 public:
  using Elem = std::uint32_t;

  static std::shared_ptr<const FqField> make(Int p, int s = 1);
  // Accepts any prime power q.
  static std::shared_ptr<const FqField> of_order(Int q);

  Int p() const { return p_; }
  int s() const { return s_; }
  Int q() const { return q_; }
  // Defining polynomial over F_p, low-to-high, monic of degree s (just
  // {0, 1} when s == 1).
  const std::vector<Int>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, Int e) const;
  // A fixed generator of F_q^*.
  Elem primitive() const { return primitive_; }

  bool operator==(const FqField& o) const { return p_ == o.p_ && s_ == o.s_; }

 private:
  FqField(Int p, int s);

  Int p_;
  int s_;
  Int q_;
  std::vector<Int> modulus_;
  Elem primitive_ = 1;
  std::vector<Elem> exp_;
  std::vector<Int> log_;
};

using FqFieldPtr = std::shared_ptr<const FqField>;

class FqPoly {
 public:
  using Elem = FqField::Elem;

  explicit FqPoly(FqFieldPtr field);
  FqPoly(FqFieldPtr field, std::vector<Elem> coeffs_low_to_high);

  static FqPoly constant(FqFieldPtr field, Elem c);
  static FqPoly monomial(FqFieldPtr field, Elem c, int degree);
  static FqPoly variable(FqFieldPtr field) { return monomial(std::move(field), 1, 1); }

  const FqFieldPtr& field() const { return field_; }
  const std::vector<Elem>& coefficients() const { return c_; }
  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem coeff(int i) const { return i < static_cast<int>(c_.size()) && i >= 0 ? c_[i] : 0; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator-() const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly operator/(const FqPoly& o) const { return divmod(o).first; }
  FqPoly operator%(const FqPoly& o) const { return divmod(o).second; }
  FqPoly scaled(Elem c) const;
  std::pair<FqPoly, FqPoly> divmod(const FqPoly& divisor) const;

  FqPoly monic() const;
  FqPoly derivative() const;
  Elem evaluate(Elem x) const;
  // f(T) -> f(T^k).
  FqPoly inflate(Int k) const;

  bool operator==(const FqPoly& o) const { return *field_ == *o.field_ && c_ == o.c_; }
  // Orders by degree, then by coefficients from the top down.
  std::strong_ordering operator<=>(const FqPoly& o) const;

  std::string to_string(char var = 'T') const;

 private:
  void trim();

  FqFieldPtr field_;
  std::vector<Elem> c_;
};

inline std::ostream& operator<<(std::ostream& os, const FqPoly& f) { return os << f.to_string(); }

// Monic gcd (zero only when both inputs are zero).
FqPoly gcd(const FqPoly& a, const FqPoly& b);
FqPoly powmod(const FqPoly& base, Int exp, const FqPoly& m);
// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
FqPoly inverse_mod(const FqPoly& a, const FqPoly& m);

enum class PolyOp { Add, Mul, Mod, Gcd };
FqPoly poly_arith(const FqPoly& a, const FqPoly& b, PolyOp op);

// Residues modulo a polynomial of degree d are encoded as integers
// sum c_i q^i with 0 <= c_i < q, i < d.
Int encode_residue(const FqPoly& r, int degree);
FqPoly decode_residue(const FqFieldPtr& field, Int index, int degree);

// Ben-Or test: f of degree n >= 1 is irreducible iff
// gcd(f, T^{q^i} - T) == 1 for every i <= n / 2. Throws DomainError for
// constants.
bool is_irreducible(const FqPoly& f);

// All monic polynomials of exact degree d, in encoding order.
std::vector<FqPoly> monic_polynomials(const FqFieldPtr& field, int degree);
std::vector<FqPoly> monic_irreducibles(const FqFieldPtr& field, int degree);

struct FactoredModulus {
  FqPoly modulus;  // monic
  std::vector<std::pair<FqPoly, int>> factors;

  FqPoly product() const;
  int degree() const { return modulus.degree(); }
  std::string to_string() const;
};

inline constexpr Int kDefaultFactorBound = Int{1} << 20;

// Complete factorization by trial division over monic irreducibles of
// increasing degree. The input is normalized to be monic first.
FactoredModulus factor_modulus(const FqPoly& n, Int bound = kDefaultFactorBound);

}  // namespace genus
