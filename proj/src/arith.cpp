#include "genus/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "genus/errors.hpp"

namespace genus {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer addition overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer multiplication overflow");
  return r;
}

Int checked_pow(Int base, unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = gcd(a, b);
  return checked_mul(std::llabs(a) / g, std::llabs(b));
}

Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Int mulmod(Int a, Int b, Int m) {
  return static_cast<Int>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

Int powmod(Int base, Int exp, Int m) {
  if (m == 1) return 0;
  Int result = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

Int inverse_mod(Int a, Int m) {
  auto [g, s, t] = ext_gcd(mod(a, m), m);
  (void)t;
  if (g != 1) throw DomainError("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
  return mod(s, m);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n < 1) throw DomainError("factorize: nonpositive argument");
  std::vector<std::pair<Int, int>> out;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> divisors(Int n) {
  std::vector<Int> out{1};
  for (auto [p, k] : factorize(n)) {
    std::size_t base = out.size();
    Int pk = 1;
    for (int i = 1; i <= k; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Int euler_phi(Int n) {
  Int r = n;
  for (auto [p, k] : factorize(n)) r = r / p * (p - 1);
  return r;
}

Int p_part(Int n, Int p) {
  Int r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_squarefree(Int n) {
  for (auto [p, k] : factorize(n < 0 ? -n : n))
    if (k > 1) return false;
  return true;
}

Int primitive_root(Int p, int k) {
  Int phi_p = p - 1;
  auto fac = factorize(phi_p);
  Int pk = checked_pow(p, static_cast<unsigned>(k));
  for (Int g = 2; g < p * p + 2; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [f, e] : fac)
      if (powmod(g, phi_p / f, p) == 1) ok = false;
    if (!ok) continue;
    // A root mod p lifts to p^k (k >= 2) iff g^(p-1) != 1 mod p^2.
    if (k >= 2 && powmod(g, p - 1, p * p) == 1) continue;
    return mod(g, pk);
  }
  throw DomainError("no primitive root found");
}

}  // namespace genus
