#pragma once

// Class-number-weighted moments of Frobenius traces, the Eichler-Selberg
// trace formula for T_p on S_2k(Gamma_0(M)) (M odd, p not dividing M), and
// the brute-force and eta-product oracles that check them.
//
// Hurwitz-weighted quantities are carried in exact sixths.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellsum/bigint.hpp"
#include "ellsum/classnum.hpp"
#include "ellsum/polynomial.hpp"

namespace ellsum::moments {

/// An exact rational with denominator dividing 6, stored as its numerator.
struct Sixths {
  BigInt sixths = 0;

  bool is_integer() const { return sixths % 6 == 0; }
  /// Reduced "n" or "n/d".
  std::string to_string() const;
  double to_double() const { return sixths.convert_to<double>() / 6.0; }
  friend bool operator==(const Sixths&, const Sixths&) = default;
};

/// Q(pi, k) = (pi^{2k+1} - conj^{2k+1}) / (pi - conj) for pi a root of x^2 - a x + p.
BigInt q_weight(std::int64_t a, std::int64_t p, int k);

/// (2i+1) (2n)! / ((n-i)! (n+i+1)!), so c_p(n, i) = coefficient * p^(n-i).
std::int64_t c_coeff_constant(int n, int i);
BigInt c_coeff(int n, int i, std::int64_t p);

/// c_p(n, i) as polynomials in p from the two-step recurrence; row n holds
/// entries i = 0..n. Independent of the closed form.
std::vector<std::vector<Poly>> c_coeff_recurrence(int max_n);

/// p^{n/2+1} n! / ((n/2)! (n/2+1)!), n even.
BigInt main_term(std::int64_t p, int n);

/// (1/2) sum_{0 < a^2 < 4p} a^n sum_f h_w((a^2-4p)/f^2) psi(M)/psi(M/M_f) sigma(a,f,p,M).
/// Requires p > 3 prime, M odd, p not dividing M. The table, when given,
/// must cover |D| <= 4p.
Sixths weighted_moment(std::int64_t p, int n, std::int64_t m);
Sixths weighted_moment(std::int64_t p, int n, std::int64_t m, const classnum::HurwitzTable& table);

/// counts[a + bound] = #{(A, B) in F_p^2 : 4A^3 + 27B^2 != 0, ap = a}, bound = floor(2 sqrt p).
struct ApHistogram {
  std::int64_t p = 0;
  std::int64_t bound = 0;
  std::vector<std::int64_t> counts;

  std::int64_t count(std::int64_t a) const;
};

ApHistogram ap_histogram(std::int64_t p);

/// Sum over all nonsingular (A, B) in F_p^2 of ap^n.
BigInt brute_moment(std::int64_t p, int n);
BigInt brute_moment(const ApHistogram& histogram, int n);

/// sum_f h_w((a^2 - 4p)/f^2) in sixths (the Hurwitz class number H(4p - a^2)).
std::int64_t hurwitz_mass_sixths(std::int64_t a, std::int64_t p);

/// sum over c | M with gcd(c, M/c) | gcd(M, p-1) of phi(gcd(c, M/c)).
std::int64_t hyperbolic_correction(std::int64_t p, std::int64_t m);

/// trace(T_p, S_weight(Gamma_0(M))), weight even >= 2, M odd, p prime not dividing M.
Sixths eichler_selberg_trace(std::int64_t p, int weight, std::int64_t m);

/// sum_{i=0}^{n/2} c_p(n/2, i) [-trace(T_p, S_{2i+2}) - correction + (p+1 if i = 0)], n even.
Sixths moment_via_trace(std::int64_t p, int n, std::int64_t m);

/// tau(1..limit) from q prod (1 - q^m)^24; index 0 holds 0.
std::vector<BigInt> eta_tau(int limit);

struct MomentReport {
  std::int64_t p = 0;
  int n = 0;
  std::int64_t m = 1;
  std::optional<BigInt> brute;        // only for M = 1
  Sixths weighted;
  std::optional<Sixths> via_trace;    // even n only
  std::optional<BigInt> main_term;    // even n only
  bool ok = false;
};

/// All moment expressions at (p, n, M) and whether the exact identities hold:
/// 6 brute = (p-1) weighted when brute is present, weighted = via_trace for
/// even n, weighted = 0 for odd n.
MomentReport moment_report(std::int64_t p, int n, std::int64_t m, const ApHistogram* histogram = nullptr);

}  // namespace ellsum::moments
