#pragma once

// Elliptic fibrations over the affine t-line and their fibers over F_p.
//
// Trace convention for singular fibers: ap = 1 (split node), -1 (nonsplit
// node), 0 (cusp). This is p + 1 minus the number of projective points of the
// singular cubic, so the Legendre-symbol sum -sum_x chi(x^3 + Ax + B) gives
// the right value for every fiber, singular or not.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ellsum/bigint.hpp"
#include "ellsum/polynomial.hpp"

namespace ellsum::curves {

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

std::string_view to_string(ReductionKind kind);

struct FiberReduction {
  ReductionKind kind = ReductionKind::Good;
  std::int64_t ap = 0;

  friend bool operator==(const FiberReduction&, const FiberReduction&) = default;
};

/// One byte per residue: chi(0) = 0, chi(square) = 1, chi(nonsquare) = -1.
class QuadraticCharacter {
 public:
  /// p must be an odd prime.
  explicit QuadraticCharacter(std::int64_t p);

  std::int64_t prime() const { return p_; }
  /// residue must lie in [0, p).
  int operator()(std::int64_t residue) const { return table_[static_cast<std::size_t>(residue)]; }
  std::span<const std::int8_t> table() const { return table_; }

 private:
  std::int64_t p_;
  std::vector<std::int8_t> table_;
};

/// sum over x in F_p of chi(x^3 + A x + B), A and B already reduced to [0, p).
std::int64_t cubic_character_sum(std::int64_t a, std::int64_t b, const QuadraticCharacter& chi);

/// Trace and reduction type of y^2 = x^3 + A x + B over F_p, p > 3.
FiberReduction ap_short(std::int64_t a, std::int64_t b, std::int64_t p);
FiberReduction ap_short(std::int64_t a, std::int64_t b, const QuadraticCharacter& chi);

/// Elliptic fibration y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
/// a_i in Z[t]. The discriminant must not vanish identically.
class WeierstrassFamily {
 public:
  WeierstrassFamily(Poly a1, Poly a2, Poly a3, Poly a4, Poly a6, std::string label = {});

  /// y^2 = x^3 + A(t) x + B(t).
  static WeierstrassFamily from_short(Poly a, Poly b, std::string label = {});

  const std::string& label() const { return label_; }
  const Poly& a1() const { return a_[0]; }
  const Poly& a2() const { return a_[1]; }
  const Poly& a3() const { return a_[2]; }
  const Poly& a4() const { return a_[3]; }
  const Poly& a6() const { return a_[4]; }

  const Poly& c4() const { return c4_; }
  const Poly& c6() const { return c6_; }
  const Poly& discriminant() const { return disc_; }

  /// Short model over Z[1/6]: y^2 = x^3 - 27 c4 x - 54 c6, isomorphic to the
  /// long model over F_p for p > 3.
  const Poly& short_a() const { return short_a_; }
  const Poly& short_b() const { return short_b_; }

  /// p > 3, p does not divide the leading coefficient of the discriminant,
  /// and p does not divide the content of a nonzero c4.
  bool is_good_prime(std::int64_t p) const;

 private:
  std::array<Poly, 5> a_;
  std::string label_;
  Poly c4_, c6_, disc_;
  Poly short_a_, short_b_;
};

/// Reduce the fiber at t mod p and classify. std::nullopt when p is bad for F.
std::optional<FiberReduction> specialize(const WeierstrassFamily& family, std::int64_t t, std::int64_t p);

/// ap of every affine fiber t = 0..p-1, or std::nullopt when p is bad for F.
/// Every good fiber is checked against the Hasse bound.
std::optional<std::vector<std::int32_t>> fiber_traces(const WeierstrassFamily& family, std::int64_t p);

/// Exact sum of ap^n over the traces; 128-bit accumulation when
/// (2 sqrt p)^n * p < 2^126, arbitrary precision otherwise.
BigInt power_sum(std::span<const std::int32_t> traces, std::int64_t p, int n);

/// A_p(n) = sum over t in F_p of ap(E_t)^n.
std::optional<BigInt> fiber_power_sum(const WeierstrassFamily& family, std::int64_t p, int n);

/// Several powers from one pass over the fibers.
std::optional<std::vector<BigInt>> fiber_power_sums(const WeierstrassFamily& family, std::int64_t p,
                                                    std::span<const int> powers);

/// p + 1 - #X(F_p) for y^2 = f(x) with f of odd degree, p > 2.
std::int64_t ap_hyperelliptic(const Poly& f, std::int64_t p);

/// Naive projective count of a long Weierstrass model with integer
/// coefficients {a1, a2, a3, a4, a6}; any prime, including 2 and 3.
std::int64_t ap_long_naive(const std::array<std::int64_t, 5>& a, std::int64_t p);

}  // namespace ellsum::curves
