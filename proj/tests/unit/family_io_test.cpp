#include <gtest/gtest.h>

#include "ellsum/family_io.hpp"

using namespace ellsum;

TEST(FamilyIo, ShortForm) {
  const auto f = io::parse_family_text("A = [0, -1]\nB = [0, 0, 1]\n");
  EXPECT_EQ(f.a4(), (Poly{0, -1}));
  EXPECT_EQ(f.a6(), (Poly{0, 0, 1}));
  EXPECT_TRUE(f.a1().is_zero());
}

TEST(FamilyIo, LongFormDefaultsToZero) {
  const auto f = io::parse_family_text("a1 = [1]\na6 = [0, 1]\n");
  EXPECT_EQ(f.a1(), (Poly{1}));
  EXPECT_TRUE(f.a2().is_zero());
  EXPECT_TRUE(f.a3().is_zero());
}

TEST(FamilyIo, CommentsAndLabel) {
  const auto f = io::parse_family_text("# Legendre\nlabel = legendre\na2 = [-1, -1]  # x^2 term\na4 = [0, 1]\n");
  EXPECT_EQ(f.label(), "legendre");
  EXPECT_EQ(f.a2(), (Poly{-1, -1}));
}

TEST(FamilyIo, ErrorsNameTheLine) {
  try {
    io::parse_family_text("label = bad\nA = [x]\n");
    FAIL() << "expected a parse error";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(io::parse_family_text("A = [1]\nfoo = [1]\n"), io::ParseError);
  EXPECT_THROW(io::parse_family_text("A = [1]\nA = [2]\n"), io::ParseError);
  EXPECT_THROW(io::parse_family_text("A = [1]\na1 = [2]\n"), io::ParseError);
  EXPECT_THROW(io::parse_family_text("label = empty\n"), io::ParseError);
  EXPECT_THROW(io::parse_family_text("A = 1, 2\n"), io::ParseError);
  EXPECT_THROW(io::parse_family_text("A = []\nB = []\n"), io::ParseError);
}

TEST(FamilyIo, FormatRoundTrips) {
  const auto f = io::parse_family_text("label = sec\na2 = [-1, -2, 1]\na4 = [0, 2, -1]\n");
  const auto g = io::parse_family_text(io::format_family(f));
  EXPECT_EQ(g.label(), f.label());
  EXPECT_EQ(g.a2(), f.a2());
  EXPECT_EQ(g.a4(), f.a4());
  EXPECT_EQ(g.discriminant(), f.discriminant());
}

TEST(FamilyIo, MissingFile) { EXPECT_THROW(io::parse_family("/nonexistent/family.txt"), io::ParseError); }
