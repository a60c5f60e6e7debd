#pragma once

// Shared arithmetic: primes, residues, quadratic characters and
// discriminant factoring. Everything here is a pure function.

#include <cstdint>
#include <utility>
#include <vector>

namespace ellsum::arith {

/// Primes in [2, limit], ascending. Empty for limit < 2.
std::vector<std::int64_t> sieve_primes(std::int64_t limit);

bool is_prime(std::int64_t n);

/// Least nonnegative residue of a mod m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::int64_t e, std::int64_t m);
std::int64_t ipow(std::int64_t base, int e);

/// Jacobi symbol (a|n). Throws std::invalid_argument unless n is odd and positive.
int jacobi(std::int64_t a, std::int64_t n);

/// Largest e with l^e | n. Throws std::invalid_argument for n == 0 or l < 2.
int ord_at(std::int64_t n, std::int64_t l);

/// Prime factorization by trial division, ascending primes with exponents.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// Positive divisors of n, ascending.
std::vector<std::int64_t> divisors(std::int64_t n);

/// True for D < 0 with D = 0 or 1 mod 4.
constexpr bool is_negative_discriminant(std::int64_t d) {
  return d < 0 && (mod(d, 4) == 0 || mod(d, 4) == 1);
}

/// disc = conductor^2 * fundamental, with fundamental a fundamental discriminant.
struct DiscriminantFactorization {
  std::int64_t disc = 0;
  std::int64_t fundamental = 0;
  std::int64_t conductor = 0;

  friend bool operator==(const DiscriminantFactorization&, const DiscriminantFactorization&) = default;
};

/// Trial-division factoring of a negative discriminant.
DiscriminantFactorization factor_discriminant(std::int64_t d);

bool is_fundamental_discriminant(std::int64_t d);

}  // namespace ellsum::arith
