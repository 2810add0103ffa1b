#include <gtest/gtest.h>

#include "exqmc/rational.hpp"

using exqmc::BigInt;
using exqmc::Rational;

TEST(Rational, ParsesAndPrintsReducedForm) {
  EXPECT_EQ(Rational::parse("6/8").str(), "3/4");
  EXPECT_EQ(Rational::parse("-10/5").str(), "-2");
  EXPECT_EQ(Rational::parse("0/7").str(), "0");
  EXPECT_EQ(Rational::parse("17").str(), "17");
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/-2"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("a/2"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
}

TEST(Rational, StringRoundTrip) {
  for (const char* s : {"1/3", "-7/12", "123456789012345678901234567890/7", "0", "-1"}) {
    const Rational r = Rational::parse(s);
    EXPECT_EQ(Rational::parse(r.str()), r) << s;
  }
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(-3, 4).abs(), Rational(3, 4));
  EXPECT_EQ(Rational(-3, 4).sign(), -1);
  EXPECT_TRUE(Rational(0).is_zero());
}

TEST(Rational, PowersAndRounding) {
  EXPECT_EQ(exqmc::rational_pow(Rational(2, 3), 3), Rational(8, 27));
  EXPECT_EQ(exqmc::rational_pow(Rational(2), -4), Rational(1, 16));
  EXPECT_EQ(exqmc::rational_pow(Rational(5), 0), Rational(1));
  EXPECT_EQ(exqmc::big_pow(12, 6), BigInt(2985984));
  EXPECT_EQ(exqmc::floor(Rational(7, 2)), BigInt(3));
  EXPECT_EQ(exqmc::floor(Rational(-7, 2)), BigInt(-4));
  EXPECT_EQ(exqmc::ceil(Rational(7, 2)), BigInt(4));
  EXPECT_EQ(exqmc::ceil(Rational(-7, 2)), BigInt(-3));
  EXPECT_EQ(exqmc::ceil(Rational(4)), BigInt(4));
}

TEST(Rational, U64ConversionIsChecked) {
  EXPECT_EQ(exqmc::to_u64(BigInt(42)), 42U);
  EXPECT_THROW(exqmc::to_u64(exqmc::big_pow(2, 64)), std::overflow_error);
  EXPECT_THROW(exqmc::to_u64(BigInt(-1)), std::overflow_error);
}

TEST(Rational, DecimalIsDisplayOnly) {
  EXPECT_EQ(Rational(1, 4).decimal(3), "0.25");
  EXPECT_EQ(Rational(1, 3).to_double(), 1.0 / 3.0);
}
