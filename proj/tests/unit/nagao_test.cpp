#include <gtest/gtest.h>

#include <cmath>

#include "ellsum/arith.hpp"
#include "ellsum/nagao.hpp"

using namespace ellsum;
using nagao::TwistOrder;

namespace {

curves::WeierstrassFamily legendre() { return {Poly{}, Poly{-1, -1}, Poly{}, Poly{0, 1}, Poly{}, "legendre"}; }
curves::WeierstrassFamily short_family(Poly a, Poly b) { return curves::WeierstrassFamily::from_short(a, b); }

}  // namespace

TEST(Presets, Exponents) {
  EXPECT_EQ(nagao::preset_exponent(nagao::Preset::ThmE2, 4), (series::Exponent{4, 1}));
  EXPECT_EQ(nagao::preset_exponent(nagao::Preset::ThmModular, 4), (series::Exponent{3, 1}));
  EXPECT_EQ(nagao::preset_exponent(nagao::Preset::ThmModular, 2), nagao::preset_exponent(nagao::Preset::ThmE2, 2));
  EXPECT_EQ(nagao::parse_preset("thm-e2"), nagao::Preset::ThmE2);
  EXPECT_THROW(nagao::parse_preset("thm-3"), std::invalid_argument);
}

TEST(Classify, IsotrivialExamples) {
  const auto sextic = nagao::classify_isotrivial(short_family(Poly{}, Poly{0, 1}));
  EXPECT_EQ(sextic.twist_order, TwistOrder::Sextic);
  EXPECT_EQ(sextic.predicted_residue, 0);
  const auto quartic = nagao::classify_isotrivial(short_family(Poly{0, 1}, Poly{}));
  EXPECT_EQ(quartic.twist_order, TwistOrder::Quartic);
  EXPECT_EQ(quartic.predicted_residue, 0);
  const auto quadratic = nagao::classify_isotrivial(short_family(Poly{0, 0, -1}, Poly{0, 0, 0, 1}));
  EXPECT_EQ(quadratic.twist_order, TwistOrder::Quadratic);
  EXPECT_EQ(quadratic.predicted_residue, -1);
}

TEST(Classify, OtherShapes) {
  EXPECT_EQ(nagao::classify_isotrivial(legendre()).twist_order, TwistOrder::NotIsotrivial);
  EXPECT_FALSE(nagao::classify_isotrivial(legendre()).predicted_residue);
  EXPECT_EQ(nagao::classify_isotrivial(short_family(Poly{}, Poly{0, 0, 1})).twist_order, TwistOrder::Cubic);
  EXPECT_EQ(nagao::classify_isotrivial(short_family(Poly{}, Poly{0, 0, 0, 1})).twist_order, TwistOrder::Quadratic);
  EXPECT_EQ(nagao::classify_isotrivial(short_family(Poly{0, 0, 1}, Poly{})).twist_order, TwistOrder::Quadratic);
  EXPECT_EQ(nagao::classify_isotrivial(short_family(Poly{}, Poly{1})).twist_order, TwistOrder::Split);
  EXPECT_EQ(nagao::classify_isotrivial(short_family(Poly{}, Poly{0, 0, 0, 0, 0, 0, 1})).twist_order, TwistOrder::Split);
  // (t^2 + 1)^2 A0, (t^2 + 1)^3 B0 with j not 0 or 1728.
  const Poly g{1, 0, 1};
  EXPECT_EQ(nagao::classify_isotrivial(short_family(g.pow(2) * BigInt(-3), g.pow(3) * BigInt(5))).twist_order,
            TwistOrder::Quadratic);
  EXPECT_EQ(nagao::classify_isotrivial(short_family(g.pow(4) * BigInt(-3), g.pow(6) * BigInt(5))).twist_order,
            TwistOrder::Split);
  EXPECT_EQ(nagao::classify_isotrivial(short_family(Poly{-3}, Poly{0, 1})).twist_order, TwistOrder::NotIsotrivial);
}

TEST(RankSum, EqualsResidueEstimateAtFirstPower) {
  const auto f = short_family(Poly{0, -1}, Poly{1, 0, 1});
  const auto series = nagao::residue_estimate(f, 1, {1, 1}, 500);
  EXPECT_EQ(nagao::nagao_rank_sum(f, 500), series.last().raw);
  EXPECT_EQ(series.last().x, 500);
  EXPECT_THROW(nagao::nagao_rank_sum(f, 4), std::invalid_argument);
}

TEST(RankSum, LegendreFirstMomentVanishes) {
  // sum_t chi(x - t) = 0 forces A_p(1) = 0 at every good prime.
  EXPECT_EQ(nagao::nagao_rank_sum(legendre(), 300), 0.0);
}

TEST(ResidueEstimate, WorkerCountIndependent) {
  const auto f = legendre();
  const auto a = nagao::residue_estimate(f, 2, {2, 1}, 400, {}, 1);
  const auto b = nagao::residue_estimate(f, 2, {2, 1}, 400, {}, 4);
  ASSERT_EQ(a.checkpoints.size(), b.checkpoints.size());
  for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
    EXPECT_EQ(a.checkpoints[i].raw, b.checkpoints[i].raw);
    EXPECT_EQ(a.checkpoints[i].smoothed, b.checkpoints[i].smoothed);
  }
}

TEST(ResidueEstimate, ConstantFamilyFactorsThroughOneCurve) {
  // A_p(1) = p ap(E_0) for the constant family, so raw(X) = -(1/X) sum log p ap(E_0).
  const auto f = short_family(Poly{}, Poly{1});
  const auto s = nagao::residue_estimate(f, 1, {1, 1}, 200);
  double expected = 0;
  for (const std::int64_t p : arith::sieve_primes(200)) {
    if (p > 3) expected += std::log(static_cast<double>(p)) * static_cast<double>(curves::ap_short(0, 1, p).ap);
  }
  EXPECT_NEAR(s.last().raw, -expected / 200.0, 1e-12);
}

TEST(WeightedResidue, Preconditions) {
  EXPECT_THROW(nagao::weighted_residue_estimate(1, 3, 100), std::invalid_argument);
  EXPECT_THROW(nagao::weighted_residue_estimate(2, 2, 100), std::invalid_argument);
}

TEST(WeightedResidue, ApproachesCatalanConstant) {
  const auto s = nagao::weighted_residue_estimate(1, 2, 3000);
  EXPECT_NEAR(s.last().smoothed, 1.0, 0.1);
  const auto s4 = nagao::weighted_residue_estimate(3, 4, 3000);
  EXPECT_NEAR(s4.last().smoothed, 2.0, 0.2);
}

TEST(WeightedResidue, OddMomentsStayBounded) {
  // The odd weighted moment is exactly zero, so the estimator never leaves 0.
  const classnum::HurwitzTable table(4 * 2000);
  series::SeriesAccumulator acc({}, 2000, {2, 1}, +1, 1.0 / 6.0);
  nagao::drive(acc, nagao::weighted_moment_term(5, 3, table), 1);
  for (const auto& c : acc.checkpoints()) EXPECT_EQ(c.raw, 0.0);
}
