#pragma once

// Counting F_p-rational cyclic subgroups of order M on ordinary elliptic
// curves with trace a and conductor gap f, by three closed forms and a
// brute-force Frobenius-matrix oracle.
//
// Throughout: M odd, 0 < a^2 < 4p, f a valid conductor gap for (a, p).

#include <array>
#include <cstdint>
#include <vector>

#include "ellsum/arith.hpp"

namespace ellsum::isogeny {

struct FrobeniusClass {
  std::int64_t a = 0;
  std::int64_t p = 0;
  arith::DiscriminantFactorization disc;

  /// Validates p prime and 0 < a^2 < 4p.
  static FrobeniusClass make(std::int64_t a, std::int64_t p);
};

struct ConductorGap {
  std::int64_t f = 1;
  int eps_a = 0;  // ord_l(c_a)
  int eps_e = 0;  // ord_l(c_a / f)

  static ConductorGap make(const FrobeniusClass& frob, std::int64_t f, std::int64_t l);
};

/// f > 0 with f^2 | D and D / f^2 = 0, 1 mod 4; ascending. Accepts any
/// negative discriminant, including D = -4p at a = 0.
std::vector<std::int64_t> conductor_gaps(std::int64_t d);

/// conductor_gaps(a^2 - 4p) for ordinary (a, p).
std::vector<std::int64_t> valid_conductor_gaps(std::int64_t a, std::int64_t p);

/// #{x mod M : x^2 - a x + p = 0 mod gcd(M, f) * M}.
std::int64_t sigma(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m);

/// psi(M) / psi(M / gcd(M, f)) * sigma(a, f, p, M) with no ordinarity check;
/// this is the multiplicity the trace formula attaches to (a, f).
std::int64_t subgroup_weight(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m);

/// N_{a,f,p}(M) via the psi-ratio times sigma.
std::int64_t count_mine(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m);

/// N_{a,f,p}(l^eps) from the three-case prime-power formula; l odd prime.
std::int64_t count_ito(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t l, int eps);

/// prod over primes q | M of (1 + (a^2 - 4p | q)); requires gcd(M, 2(a^2 - 4p)) = 1.
std::int64_t count_ogg(std::int64_t a, std::int64_t p, std::int64_t m);

/// #{x mod l^m : x^2 - aa x + bb = 0 mod l^target}, l odd prime.
/// Closed forms when the discriminant's l-adic valuation settles the count,
/// direct enumeration otherwise.
std::int64_t quad_roots_count(std::int64_t aa, std::int64_t bb, std::int64_t l, int m, int target);

/// Same count by direct enumeration of x mod l^m.
std::int64_t quad_roots_count_naive(std::int64_t aa, std::int64_t bb, std::int64_t l, int m, int target);

/// One generator per cyclic subgroup of order M in (Z/M)^2, found by scanning
/// vectors of exact order M and skipping members of subgroups already seen.
/// The count equals psi(M).
std::vector<std::array<std::int64_t, 2>> cyclic_subgroup_generators(std::int64_t m);

/// Integer matrix of Frobenius on the basis {1, w} of the order of
/// discriminant (a^2 - 4p) / f^2, column-major {{m00, m10}, {m01, m11}}.
std::array<std::int64_t, 4> frobenius_matrix(std::int64_t a, std::int64_t f, std::int64_t p);

/// Number of cyclic order-M subgroups stable under the Frobenius matrix.
std::int64_t frobenius_subgroup_oracle(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m);
std::int64_t frobenius_subgroup_oracle(std::int64_t a, std::int64_t f, std::int64_t p, std::int64_t m,
                                       const std::vector<std::array<std::int64_t, 2>>& generators);

}  // namespace ellsum::isogeny
