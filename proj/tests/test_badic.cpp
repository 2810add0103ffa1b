#include <gtest/gtest.h>

#include "exqmc/badic.hpp"

using namespace exqmc;

namespace {

BAdicNumber num(unsigned b, std::vector<Digit> d) { return BAdicNumber(b, std::move(d)); }

}  // namespace

TEST(BAdicNumber, RejectsBadInput) {
  EXPECT_THROW(num(1, {0}), std::invalid_argument);
  EXPECT_THROW(num(3, {0, 3}), std::invalid_argument);
  EXPECT_THROW(BAdicNumber::from_rational(Rational(1), 2, 4), std::invalid_argument);
  EXPECT_THROW(BAdicNumber::from_rational(Rational(-1, 2), 2, 4), std::invalid_argument);
  EXPECT_THROW(BAdicNumber::from_fraction(16, 2, 4), std::invalid_argument);
}

TEST(BAdicNumber, DigitsPastPrecisionReadZero) {
  const auto x = num(3, {2, 1});
  EXPECT_EQ(x.digit(1), 2U);
  EXPECT_EQ(x.digit(2), 1U);
  EXPECT_EQ(x.digit(3), 0U);
  EXPECT_EQ(x.digit(100), 0U);
  EXPECT_EQ(x, x.extended(6));
  EXPECT_EQ(x.extended(6).precision(), 6U);
}

TEST(BAdicNumber, RationalConversions) {
  EXPECT_EQ(to_rational(num(3, {2, 1})), Rational(7, 9));
  EXPECT_EQ(BAdicNumber::from_rational(Rational(5, 8), 2, 3), num(2, {1, 0, 1}));
  EXPECT_EQ(BAdicNumber::from_fraction(5, 2, 3), num(2, {1, 0, 1}));
  // 1/3 in base 2 truncated: floor(16/3) = 5 = 0101.
  EXPECT_EQ(BAdicNumber::from_rational(Rational(1, 3), 2, 4), num(2, {0, 1, 0, 1}));
  for (std::uint64_t k = 0; k < 81; ++k) {
    EXPECT_EQ(to_rational(BAdicNumber::from_fraction(k, 3, 4)), Rational(BigInt(k), BigInt(81)));
  }
}

TEST(BAdicNumber, Truncation) {
  const auto x = num(2, {1, 1, 0, 1});
  EXPECT_EQ(truncate(x, 2), num(2, {1, 1}));
  EXPECT_EQ(truncate(x, 0), BAdicNumber::zero(2, 0));
  EXPECT_EQ(truncate(x, 9), x);
}

TEST(BAdicNumber, ShiftWithoutCarries) {
  const auto x = num(3, {2, 2, 1});
  const auto s = num(3, {1, 2});
  EXPECT_EQ(digit_add(x, s), num(3, {0, 1, 1}));
  EXPECT_EQ(digit_sub(x, s), num(3, {1, 0, 1}));
  EXPECT_EQ(digit_add(digit_add(x, s), num(3, {2, 1})), x);
  EXPECT_THROW(digit_add(x, num(2, {1})), BaseMismatch);
}

TEST(BAdicNumber, Valuation) {
  EXPECT_EQ(valuation(num(2, {0, 0, 1, 1})), Rational(1, 8));
  EXPECT_EQ(valuation(num(5, {3})), Rational(1, 5));
  EXPECT_EQ(valuation(num(3, {0, 0, 0})), Rational(0));
  EXPECT_EQ(num(3, {0, 0, 2}).leading_zeros(), 2U);
  EXPECT_EQ(num(3, {0, 0, 0}).leading_zeros(), 3U);
}

TEST(BAdicNumber, CompareAgreesWithRationals) {
  for (std::uint64_t a = 0; a < 27; ++a) {
    for (std::uint64_t c = 0; c < 27; ++c) {
      const auto x = BAdicNumber::from_fraction(a, 3, 3);
      const auto y = BAdicNumber::from_fraction(c, 3, 3);
      const int expected = a < c ? -1 : (a > c ? 1 : 0);
      EXPECT_EQ(compare(x, y), expected);
    }
  }
  EXPECT_EQ(compare(num(2, {1}), num(2, {1, 0, 0})), 0);
}

TEST(BAdicNumber, FirstDifference) {
  EXPECT_EQ(first_difference(num(2, {1, 0, 1}), num(2, {1, 0, 0})), 3U);
  EXPECT_EQ(first_difference(num(2, {1, 0}), num(2, {1, 0, 0})), std::nullopt);
  EXPECT_EQ(first_difference(num(5, {4}), num(5, {1})), 1U);
}

TEST(BAdicPoint, ProductValuation) {
  const BAdicPoint p({num(2, {0, 1}), num(2, {1, 1})});
  EXPECT_EQ(point_valuation(p), Rational(1, 8));
  const BAdicPoint mixed({num(2, {1}), num(3, {1})});
  EXPECT_THROW(point_valuation(mixed), BaseMismatch);
  EXPECT_EQ(mixed.common_base(), std::nullopt);
  EXPECT_EQ(mixed.to_rationals(), (std::vector<Rational>{Rational(1, 2), Rational(1, 3)}));
}

TEST(BAdicPoint, ShiftRoundTrip) {
  const BAdicPoint p({num(3, {1, 2, 0}), num(3, {2, 2, 2})});
  const BAdicPoint w({num(3, {2, 1}), num(3, {0, 0, 1})});
  EXPECT_EQ(digit_sub(digit_add(p, w), w), p);
}
