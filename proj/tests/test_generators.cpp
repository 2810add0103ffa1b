#include <gtest/gtest.h>

#include "exqmc/generators.hpp"

using namespace exqmc;

namespace {

// Radical inverse from the integer digits, summed in rationals.
Rational radical_oracle(std::uint64_t n, unsigned b) {
  Rational sum;
  Rational scale(1, b);
  while (n > 0) {
    sum += Rational(static_cast<long long>(n % b)) * scale;
    scale /= Rational(b);
    n /= b;
  }
  return sum;
}

}  // namespace

TEST(RadicalInverse, FrozenValues) {
  EXPECT_EQ(to_rational(radical_inverse(5, 3, 4)), Rational(7, 9));
  EXPECT_EQ(to_rational(radical_inverse(5, 2, 4)), Rational(5, 8));
  EXPECT_EQ(to_rational(radical_inverse(0, 7, 2)), Rational(0));
  const HaltonSpec spec({2, 3});
  EXPECT_EQ(halton_point(5, spec, 6).to_rationals(),
            (std::vector<Rational>{Rational(5, 8), Rational(7, 9)}));
}

TEST(RadicalInverse, MatchesOracle) {
  for (unsigned b : {2U, 3U, 5U, 7U}) {
    for (std::uint64_t n = 0; n < 400; ++n) {
      EXPECT_EQ(to_rational(radical_inverse(n, b, 12)), radical_oracle(n, b)) << n << " " << b;
    }
  }
}

TEST(RadicalInverse, PrecisionIsChecked) {
  EXPECT_THROW(radical_inverse(8, 2, 3), std::invalid_argument);
  EXPECT_NO_THROW(radical_inverse(7, 2, 3));
  EXPECT_EQ(digit_count(0, 2), 0U);
  EXPECT_EQ(digit_count(8, 2), 4U);
  EXPECT_EQ(digit_count(80, 3), 4U);
}

TEST(HaltonSpec, Validation) {
  EXPECT_THROW(HaltonSpec({2, 4}), std::invalid_argument);
  EXPECT_THROW(HaltonSpec({1, 3}), std::invalid_argument);
  EXPECT_THROW(HaltonSpec(std::vector<unsigned>{}), std::invalid_argument);
  EXPECT_EQ(HaltonSpec({2, 3, 5}).product(), BigInt(30));
}

TEST(HaltonPoints, WindowMatchesPointwise) {
  const HaltonSpec spec({2, 3, 5});
  const auto set = halton_points(17, 30, spec, 8);
  ASSERT_EQ(set.size(), 30U);
  for (std::uint64_t i = 0; i < 30; ++i) {
    const auto coords = set[i].to_rationals();
    EXPECT_EQ(coords[0], radical_oracle(17 + i, 2));
    EXPECT_EQ(coords[1], radical_oracle(17 + i, 3));
    EXPECT_EQ(coords[2], radical_oracle(17 + i, 5));
  }
}

TEST(Hammersley, LayoutAndSize) {
  const auto net = hammersley_net(3, 3);
  ASSERT_EQ(net.size(), 27U);
  for (std::uint64_t n = 0; n < 27; ++n) {
    const auto c = net[n].to_rationals();
    EXPECT_EQ(c[0], radical_oracle(n, 3));
    EXPECT_EQ(c[1], Rational(BigInt(n), BigInt(27)));
  }
  const auto vdc = van_der_corput_net(4, 2);
  ASSERT_EQ(vdc.size(), 16U);
  EXPECT_EQ(vdc[3].to_rationals()[0], Rational(3, 16));
}

TEST(DigitalShift, AppliesToEveryPoint) {
  const auto net = hammersley_net(2, 2);
  const BAdicPoint w({BAdicNumber(2, {1, 1}), BAdicNumber(2, {0, 1})});
  const auto shifted = digital_shift_set(net, w);
  ASSERT_EQ(shifted.size(), net.size());
  for (std::size_t i = 0; i < net.size(); ++i) EXPECT_EQ(shifted[i], digit_add(net[i], w));
  const BAdicPoint wrong({BAdicNumber(3, {1}), BAdicNumber(3, {1})});
  EXPECT_THROW(digital_shift_set(net, wrong), BaseMismatch);
}

TEST(CopiesFixture, DuplicatesEachPoint) {
  const auto fx = copies_fixture(3, 2, 2);
  ASSERT_EQ(fx.size(), 8U);
  const auto base = hammersley_net(2, 2);
  for (std::size_t i = 0; i < fx.size(); ++i) {
    EXPECT_EQ(fx[i].to_rationals(), base[i % base.size()].to_rationals());
  }
}

TEST(PointSet, RejectsMismatchedPoints) {
  PointSet set({2, 2}, 3);
  EXPECT_THROW(set.push_back(BAdicPoint({BAdicNumber(2, {1})})), std::invalid_argument);
  EXPECT_THROW(set.push_back(BAdicPoint({BAdicNumber(2, {1}), BAdicNumber(3, {1})})),
               std::invalid_argument);
  EXPECT_THROW(set.push_back(BAdicPoint({BAdicNumber(2, {1, 0, 0, 1}), BAdicNumber(2, {1})})),
               std::invalid_argument);
}
