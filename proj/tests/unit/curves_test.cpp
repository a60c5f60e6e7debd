#include <gtest/gtest.h>

#include "ellsum/arith.hpp"
#include "ellsum/curves.hpp"

using namespace ellsum;
using curves::ReductionKind;

namespace {

// y^2 = x(x-1)(x-t)
curves::WeierstrassFamily legendre() { return {Poly{}, Poly{-1, -1}, Poly{}, Poly{0, 1}, Poly{}, "legendre"}; }

// y^2 = x(x-1)(x - t(2-t))
curves::WeierstrassFamily section_family() {
  return {Poly{}, Poly{-1, -2, 1}, Poly{}, Poly{0, 2, -1}, Poly{}, "section"};
}

curves::WeierstrassFamily quadratic_family() {
  return curves::WeierstrassFamily::from_short(Poly{0, 0, -1}, Poly{0, 0, 0, 1}, "quadratic");
}

std::array<std::int64_t, 5> fiber_coefficients(const curves::WeierstrassFamily& f, std::int64_t t, std::int64_t p) {
  return {f.a1().eval_mod(t, p), f.a2().eval_mod(t, p), f.a3().eval_mod(t, p), f.a4().eval_mod(t, p),
          f.a6().eval_mod(t, p)};
}

}  // namespace

TEST(ApShort, Examples) {
  EXPECT_EQ(curves::ap_short(1, 0, 5), (curves::FiberReduction{ReductionKind::Good, 2}));
  EXPECT_EQ(curves::ap_short(0, 1, 5), (curves::FiberReduction{ReductionKind::Good, 0}));
  EXPECT_EQ(curves::ap_short(0, 0, 5), (curves::FiberReduction{ReductionKind::Additive, 0}));
  EXPECT_THROW(curves::ap_short(1, 1, 3), std::invalid_argument);
}

TEST(ApShort, MatchesProjectivePointCount) {
  for (const std::int64_t p : arith::sieve_primes(50)) {
    if (p <= 3) continue;
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        const auto red = curves::ap_short(a, b, p);
        ASSERT_EQ(red.ap, curves::ap_long_naive({0, 0, 0, a, b}, p)) << a << " " << b << " " << p;
        const bool singular = arith::mod(4 * a * a * a + 27 * b * b, p) == 0;
        ASSERT_EQ(red.kind != ReductionKind::Good, singular);
        if (red.kind == ReductionKind::Good) ASSERT_LT(red.ap * red.ap, 4 * p);
      }
    }
  }
}

TEST(ApShort, QuadraticTwistFlipsSign) {
  for (const std::int64_t p : arith::sieve_primes(50)) {
    if (p <= 3) continue;
    std::int64_t d = 2;
    while (arith::jacobi(d, p) != -1) ++d;
    const std::int64_t d2 = d * d % p;
    const std::int64_t d3 = d2 * d % p;
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        if (arith::mod(4 * a * a * a + 27 * b * b, p) == 0) continue;
        EXPECT_EQ(curves::ap_short(d2 * a % p, d3 * b % p, p).ap, -curves::ap_short(a, b, p).ap);
      }
    }
  }
}

TEST(Specialize, LegendreFibers) {
  const auto f = legendre();
  for (const std::int64_t p : {5, 7, 11, 13, 17}) {
    const auto red = curves::specialize(f, 0, p);
    ASSERT_TRUE(red);
    EXPECT_TRUE(red->kind == ReductionKind::SplitMultiplicative || red->kind == ReductionKind::NonsplitMultiplicative);
    EXPECT_EQ(std::abs(red->ap), 1);
    // Tangent cone y^2 = -x^2 at the origin.
    EXPECT_EQ(red->ap, arith::jacobi(-1, p));
  }
  const auto red = curves::specialize(f, 2, 7);
  ASSERT_TRUE(red);
  EXPECT_EQ(red->kind, ReductionKind::Good);
  EXPECT_LE(std::abs(red->ap), 5);
  EXPECT_EQ(red->ap, curves::ap_long_naive({0, -3, 0, 2, 0}, 7));
}

TEST(Specialize, ConstantFamily) {
  const auto f = curves::WeierstrassFamily::from_short(Poly{}, Poly{1});
  for (std::int64_t t = 0; t < 5; ++t) EXPECT_EQ(*curves::specialize(f, t, 5), (curves::FiberReduction{ReductionKind::Good, 0}));
}

TEST(Specialize, BadPrimeSignalled) {
  const auto f = quadratic_family();
  EXPECT_FALSE(f.is_good_prime(23));
  EXPECT_FALSE(curves::specialize(f, 1, 23).has_value());
  EXPECT_FALSE(curves::fiber_power_sum(f, 23, 2).has_value());
  EXPECT_FALSE(f.is_good_prime(3));
  EXPECT_TRUE(f.is_good_prime(29));
}

TEST(Family, InvariantsOfLegendre) {
  const auto f = legendre();
  // Discriminant 16 t^2 (t - 1)^2.
  EXPECT_EQ(f.discriminant(), (Poly{0, 0, 16, -32, 16}));
  EXPECT_THROW(curves::WeierstrassFamily::from_short(Poly{}, Poly{}), std::invalid_argument);
}

TEST(FiberPowerSum, ConstantFamilyAtFive) {
  const auto f = curves::WeierstrassFamily::from_short(Poly{}, Poly{1});
  EXPECT_EQ(*curves::fiber_power_sum(f, 5, 1), BigInt(0));
  EXPECT_EQ(*curves::fiber_power_sum(f, 5, 2), BigInt(0));
}

TEST(FiberPowerSum, LegendreAtFiveFrozen) {
  // ap over t = 0..4 is 1, 1, -2, 2, -2 by direct projective counting.
  EXPECT_EQ(*curves::fiber_power_sum(legendre(), 5, 2), BigInt(14));
}

TEST(FiberPowerSum, MatchesNaiveLongModelCount) {
  for (const auto& f : {legendre(), section_family(), quadratic_family()}) {
    for (const std::int64_t p : arith::sieve_primes(100)) {
      if (!f.is_good_prime(p)) continue;
      const auto traces = curves::fiber_traces(f, p);
      ASSERT_TRUE(traces);
      std::int64_t s1 = 0, s2 = 0, s3 = 0;
      for (std::int64_t t = 0; t < p; ++t) {
        const std::int64_t ap = curves::ap_long_naive(fiber_coefficients(f, t, p), p);
        ASSERT_EQ((*traces)[static_cast<std::size_t>(t)], ap) << f.label() << " p=" << p << " t=" << t;
        s1 += ap;
        s2 += ap * ap;
        s3 += ap * ap * ap;
      }
      const std::vector<int> powers{1, 2, 3};
      const auto sums = curves::fiber_power_sums(f, p, powers);
      EXPECT_EQ((*sums)[0], BigInt(s1));
      EXPECT_EQ((*sums)[1], BigInt(s2));
      EXPECT_EQ((*sums)[2], BigInt(s3));
    }
  }
}

TEST(FiberPowerSum, EvenPowersNonnegative) {
  const auto f = quadratic_family();
  for (const std::int64_t p : arith::sieve_primes(200)) {
    if (!f.is_good_prime(p)) continue;
    for (const int n : {2, 4, 6}) EXPECT_GE(*curves::fiber_power_sum(f, p, n), 0);
  }
}

TEST(PowerSum, WidePathMatchesNarrow) {
  const std::vector<std::int32_t> traces{-3, 2, 5, -1, 0, 4};
  for (int n = 1; n <= 40; ++n) {
    BigInt expected = 0;
    for (const auto a : traces) expected += boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(n));
    EXPECT_EQ(curves::power_sum(traces, 7, n), expected) << n;
  }
  // (2 sqrt p)^n p overflows 126 bits here, forcing the arbitrary-precision path.
  const std::vector<std::int32_t> big{199, -199, 198};
  EXPECT_EQ(curves::power_sum(big, 9973, 20), boost::multiprecision::pow(BigInt(199), 20) * 2 +
                                                  boost::multiprecision::pow(BigInt(198), 20));
}

TEST(Hyperelliptic, Examples) {
  EXPECT_EQ(curves::ap_hyperelliptic(Poly{0, 1, 0, 1}, 5), 2);
  EXPECT_EQ(curves::ap_hyperelliptic(Poly{0, 0, 0, 1}, 5), 0);
  const std::int64_t w = curves::ap_hyperelliptic(Poly{1, 0, 0, 0, 0, 1}, 7);
  EXPECT_LE(std::abs(w), 10);
  EXPECT_EQ(w, 0);
  EXPECT_THROW(curves::ap_hyperelliptic(Poly{1, 0, 1}, 7), std::invalid_argument);
}

TEST(Hyperelliptic, AgreesWithShortModel) {
  for (const std::int64_t p : {5, 7, 11, 13}) {
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        EXPECT_EQ(curves::ap_hyperelliptic(Poly{b, a, 0, 1}, p), curves::ap_short(a, b, p).ap);
      }
    }
  }
}

TEST(LongModel, LevelElevenCurve) {
  // Traces of y^2 + y = x^3 - x^2 - 10x - 20 from standard tables.
  const std::array<std::int64_t, 5> model{0, -1, 1, -10, -20};
  const std::vector<std::pair<std::int64_t, std::int64_t>> known{
      {2, -2}, {3, -1}, {5, 1}, {7, -2}, {13, 4}, {17, -2}, {19, 0}, {23, -1}, {29, 0}, {31, 7}};
  for (const auto& [p, ap] : known) EXPECT_EQ(curves::ap_long_naive(model, p), ap) << p;
}
