#include <gtest/gtest.h>

#include "ellsum/polynomial.hpp"

using ellsum::BigInt;
using ellsum::Poly;

TEST(Poly, ZeroAndDegree) {
  EXPECT_EQ(Poly{}.degree(), -1);
  EXPECT_TRUE((Poly{0, 0}).is_zero());
  EXPECT_EQ((Poly{1, 0, 3}).degree(), 2);
}

TEST(Poly, Arithmetic) {
  const Poly a{1, 1};   // 1 + t
  const Poly b{-1, 1};  // t - 1
  EXPECT_EQ(a * b, (Poly{-1, 0, 1}));
  EXPECT_EQ(a + b, (Poly{0, 2}));
  EXPECT_EQ(a - a, Poly{});
  EXPECT_EQ(a.pow(3), (Poly{1, 3, 3, 1}));
  EXPECT_EQ((Poly{5, 4, 3}).derivative(), (Poly{4, 6}));
}

TEST(Poly, ContentAndPrimitivePart) {
  const Poly p{-6, 0, -4};
  EXPECT_EQ(p.content(), BigInt(2));
  EXPECT_EQ(p.primitive_part(), (Poly{3, 0, 2}));
}

TEST(Poly, EvalMod) {
  const Poly p{3, -2, 1};
  for (std::int64_t t = -10; t < 10; ++t) EXPECT_EQ(p.eval_mod(t, 7), ((3 - 2 * t + t * t) % 7 + 7) % 7);
}

TEST(Poly, GcdAndExactDivision) {
  const Poly f = Poly{-1, 1}.pow(2) * Poly{2, 0, 1};
  const Poly g = Poly{-1, 1} * Poly{3, 1};
  EXPECT_EQ(ellsum::poly_gcd(f, g), (Poly{-1, 1}));
  EXPECT_EQ(ellsum::divide_exact(f, (Poly{-1, 1})), (Poly{-1, 1} * Poly{2, 0, 1}));
  EXPECT_THROW(ellsum::divide_exact(f, Poly{3, 1}), std::domain_error);
}

TEST(Squarefree, Reconstructs) {
  const std::vector<Poly> cases{
      Poly{0, 0, 16, -32, 16},                    // 16 t^2 (t - 1)^2
      Poly{0, 0, -432},                           // -432 t^2
      Poly{0, 1} * Poly{1, 1}.pow(3) * Poly{2, 0, 1}.pow(2),
      Poly{-1, 0, 0, 1},                          // squarefree
      Poly{7},
  };
  for (const Poly& f : cases) {
    const auto parts = ellsum::squarefree_decomposition(f);
    Poly product{1};
    for (const auto& part : parts) {
      EXPECT_GT(part.factor.degree(), 0);
      EXPECT_EQ(ellsum::poly_gcd(part.factor, part.factor.derivative()).degree(), 0);
      product *= part.factor.pow(part.multiplicity);
    }
    // Equal up to a rational constant.
    EXPECT_EQ(product.degree(), f.degree());
    EXPECT_EQ(product.primitive_part(), f.primitive_part());
  }
  EXPECT_THROW(ellsum::squarefree_decomposition(Poly{}), std::invalid_argument);
}

TEST(Squarefree, Multiplicities) {
  const auto parts = ellsum::squarefree_decomposition(Poly{0, 1} * Poly{1, 1}.pow(3) * Poly{2, 0, 1}.pow(3));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].multiplicity, 1);
  EXPECT_EQ(parts[0].factor, (Poly{0, 1}));
  EXPECT_EQ(parts[1].multiplicity, 3);
  EXPECT_EQ(parts[1].factor.degree(), 3);
}
