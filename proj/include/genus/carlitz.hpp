#pragma once

// Carlitz module over F_q[T]: C_T(x) = T x + x^q.

#include <string>
#include <vector>

#include "genus/fq_poly.hpp"
#include "genus/poly_unit_group.hpp"

namespace genus {

// An F_q-linear polynomial sum_i a_i(T) x^{q^i}.
class CarlitzPoly {
 public:
  CarlitzPoly(FqFieldPtr field, std::vector<FqPoly> coeffs);
  static CarlitzPoly zero(FqFieldPtr field);
  static CarlitzPoly identity(FqFieldPtr field);

  const FqFieldPtr& field() const { return field_; }
  // Coefficient of x^{q^i}.
  const std::vector<FqPoly>& coeffs() const { return coeffs_; }
  // Largest i with a_i != 0, -1 for the zero map.
  int q_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  CarlitzPoly operator+(const CarlitzPoly& o) const;
  CarlitzPoly operator-(const CarlitzPoly& o) const;
  // (this o other)(x) = this(other(x)).
  CarlitzPoly compose(const CarlitzPoly& other) const;

  FqPoly evaluate(const FqPoly& u) const;
  FqPoly evaluate_mod(const FqPoly& u, const FqPoly& modulus) const;
  // Coefficients of x^0, ..., x^{q^deg} in F_q[T]. Throws BoundExceeded
  // when q^deg > bound.
  std::vector<FqPoly> dense(Int bound = kDefaultPolyUnitBound) const;

  bool operator==(const CarlitzPoly& o) const { return coeffs_ == o.coeffs_; }
  std::string to_string() const;

 private:
  FqFieldPtr field_;
  std::vector<FqPoly> coeffs_;
};

// C_M as an additive polynomial.
CarlitzPoly carlitz_action(const FqPoly& m);
// C_M(u) for u in F_q[T].
FqPoly carlitz_apply(const FqPoly& m, const FqPoly& u);

// Number of N-torsion points q^{deg N}, after checking that the expanded
// C_N has x-degree q^{deg N} and derivative the nonzero constant N.
Int torsion_order_check(const FqPoly& n, Int bound = kDefaultPolyUnitBound);

}  // namespace genus
