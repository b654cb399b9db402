#pragma once

// Small exact integer helpers shared by every module. All arithmetic is
// 64-bit with explicit overflow checks.

#include <cstdint>
#include <utility>
#include <vector>

namespace genus {

using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_pow(Int base, unsigned exp);

Int gcd(Int a, Int b);
Int lcm(Int a, Int b);

// Nonnegative residue of a mod m (m > 0).
Int mod(Int a, Int m);

// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
struct ExtGcd {
  Int g, s, t;
};
ExtGcd ext_gcd(Int a, Int b);

Int mulmod(Int a, Int b, Int m);
Int powmod(Int base, Int exp, Int m);
Int inverse_mod(Int a, Int m);

bool is_prime(Int n);

// Prime factorization by trial division, primes ascending.
std::vector<std::pair<Int, int>> factorize(Int n);
std::vector<Int> divisors(Int n);
Int euler_phi(Int n);

// Largest power of p dividing n, as p^k.
Int p_part(Int n, Int p);

bool is_squarefree(Int n);

// Smallest primitive root modulo p^k for odd prime p.
Int primitive_root(Int p, int k);

}  // namespace genus
