#include <gtest/gtest.h>

#include "zmd/rational.hpp"

using namespace zmd;

TEST(ParseRational, Decimals) {
  EXPECT_EQ(parse_rational("0.3"), Rational(3, 10));
  EXPECT_EQ(parse_rational("0.8"), Rational(4, 5));
  EXPECT_EQ(parse_rational("0.10"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("+0.09"), Rational(9, 100));
  EXPECT_EQ(parse_rational("2e-3"), Rational(1, 500));
  EXPECT_EQ(parse_rational("012"), Rational(12));
}

TEST(ParseRational, Fractions) {
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" -3/9 "), Rational(-1, 3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(ParseGaussian, Forms) {
  EXPECT_EQ(parse_gaussian("0.6+0.8i"), GaussianRational(Rational(3, 5), Rational(4, 5)));
  EXPECT_EQ(parse_gaussian("0.5-0.08i"), GaussianRational(Rational(1, 2), Rational(-2, 25)));
  EXPECT_EQ(parse_gaussian("2i"), GaussianRational(Rational(0), Rational(2)));
  EXPECT_EQ(parse_gaussian("-i"), GaussianRational(Rational(0), Rational(-1)));
  EXPECT_EQ(parse_gaussian("1/3"), GaussianRational(Rational(1, 3)));
}

TEST(Gaussian, Arithmetic) {
  const GaussianRational a(Rational(1), Rational(2)), b(Rational(3), Rational(-1));
  EXPECT_EQ(a * b, GaussianRational(Rational(5), Rational(5)));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(to_string(a.conj()), "1/1-2/1i");
}

TEST(Rational, Helpers) {
  EXPECT_EQ(to_fraction_string(Rational(4)), "4/1");
  EXPECT_EQ(rising(Rational(1, 2), 3), Rational(15, 8));
  EXPECT_EQ(factorial(10), Rational(3628800));
  EXPECT_EQ(pow(Rational(-2, 3), 3), Rational(-8, 27));
}
