#include <gtest/gtest.h>

#include <functional>

#include "exqmc/netcheck.hpp"

using namespace exqmc;

namespace {

// Net check by rationals: for every shape with |d| = m - t and every cell,
// count points with a_j / b^d_j <= x_j < (a_j + 1) / b^d_j.
bool net_oracle(const PointSet& points, unsigned t, unsigned m, unsigned s, unsigned b) {
  std::vector<std::vector<Rational>> xs;
  for (const auto& p : points) xs.push_back(p.to_rationals());
  const unsigned order = m - t;
  const std::uint64_t expected = to_u64(big_pow(b, t));
  bool ok = true;
  std::vector<unsigned> d(s);
  std::function<void(std::size_t, unsigned)> shapes = [&](std::size_t j, unsigned left) {
    if (!ok) return;
    if (j + 1 == s) {
      d[j] = left;
      std::vector<std::uint64_t> a(s, 0);
      std::function<void(std::size_t)> cells = [&](std::size_t i) {
        if (!ok) return;
        if (i == s) {
          std::uint64_t count = 0;
          for (const auto& x : xs) {
            bool in = true;
            for (std::size_t c = 0; c < s && in; ++c) {
              const Rational w(BigInt(1), big_pow(b, d[c]));
              const Rational lo = Rational(BigInt(a[c])) * w;
              in = lo <= x[c] && x[c] < lo + w;
            }
            count += in ? 1 : 0;
          }
          ok = count == expected;
          return;
        }
        const std::uint64_t n = to_u64(big_pow(b, d[i]));
        for (a[i] = 0; a[i] < n; ++a[i]) cells(i + 1);
      };
      cells(0);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      d[j] = v;
      shapes(j + 1, left - v);
    }
  };
  shapes(0, order);
  return ok;
}

PointSet swap_last_two(const PointSet& set) {
  PointSet out(set.bases(), set.precision());
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::size_t k = i;
    if (i + 2 == set.size()) k = 0;
    if (i == 0) k = set.size() - 2;
    const auto& p = set[i];
    const auto& q = set[k];
    out.push_back(BAdicPoint({p[0], q[1]}));
  }
  return out;
}

}  // namespace

TEST(IsNet, HammersleyIsZeroNet) {
  for (unsigned b : {2U, 3U}) {
    for (unsigned m = 1; m <= (b == 2 ? 6U : 4U); ++m) {
      const auto net = hammersley_net(m, b);
      EXPECT_TRUE(is_net(net, 0, m, 2, b).is_net) << b << " " << m;
      EXPECT_TRUE(net_oracle(net, 0, m, 2, b));
    }
  }
}

TEST(IsNet, WitnessForBrokenSet) {
  const auto broken = swap_last_two(hammersley_net(4, 2));
  const auto verdict = is_net(broken, 0, 4, 2, 2);
  EXPECT_FALSE(verdict.is_net);
  EXPECT_FALSE(net_oracle(broken, 0, 4, 2, 2));
  ASSERT_TRUE(verdict.witness.has_value());
  EXPECT_NE(verdict.witness->count, 1U);
  EXPECT_EQ(verdict.witness->count, count_in_box(broken, verdict.witness->box));
}

TEST(IsNet, CopiesFixtureHasQualityOne) {
  const auto fx = copies_fixture(4, 2, 2);
  EXPECT_FALSE(is_net(fx, 0, 4, 2, 2).is_net);
  EXPECT_TRUE(is_net(fx, 1, 4, 2, 2).is_net);
  EXPECT_TRUE(net_oracle(fx, 1, 4, 2, 2));
  const auto fx1 = copies_fixture(3, 3, 1);
  EXPECT_TRUE(is_net(fx1, 1, 3, 1, 3).is_net);
  EXPECT_FALSE(is_net(fx1, 0, 3, 1, 3).is_net);
}

TEST(IsNet, ArgumentChecks) {
  const auto net = hammersley_net(3, 2);
  EXPECT_THROW(is_net(net, 0, 4, 2, 2), std::invalid_argument);
  EXPECT_THROW(is_net(net, 0, 3, 3, 2), std::invalid_argument);
  EXPECT_THROW(is_net(net, 0, 3, 2, 3), BaseMismatch);
  EXPECT_THROW(is_net(net, 4, 3, 2, 2), std::invalid_argument);
}

TEST(ElementaryBox, VolumeAndContainment) {
  const ElementaryBox box{3, {1, 2}, {2, 4}};
  EXPECT_EQ(box.order(), 3U);
  EXPECT_EQ(box.volume(), Rational(1, 27));
  const BAdicPoint inside({BAdicNumber(3, {2, 2}), BAdicNumber(3, {1, 1, 2})});
  const BAdicPoint outside({BAdicNumber(3, {2, 2}), BAdicNumber(3, {1, 2})});
  EXPECT_TRUE(box.contains(inside));
  EXPECT_FALSE(box.contains(outside));
}

TEST(Valuation, PairwiseMatchesRationalOracle) {
  for (unsigned m = 1; m <= 5; ++m) {
    const auto net = hammersley_net(m, 2);
    Rational oracle(1);
    for (std::size_t i = 0; i < net.size(); ++i) {
      for (std::size_t k = 0; k < i; ++k) {
        Rational prod(1);
        for (std::size_t j = 0; j < 2; ++j) {
          // First differing binary digit, read off the integers x * 2^m.
          const auto scale = Rational(big_pow(2, m));
          const BigInt u = floor(net[i].to_rationals()[j] * scale);
          const BigInt v = floor(net[k].to_rationals()[j] * scale);
          unsigned pos = 0;
          for (unsigned q = 1; q <= m && pos == 0; ++q) {
            const BigInt div = big_pow(2, m - q);
            if ((u / div) % 2 != (v / div) % 2) pos = q;
          }
          prod *= pos ? Rational(BigInt(1), big_pow(2, pos)) : Rational(0);
        }
        if (prod < oracle) oracle = prod;
      }
    }
    EXPECT_EQ(min_pairwise_valuation(net), oracle) << m;
  }
}

TEST(Admissibility, HammersleyLevels) {
  // Two points of a (0,m,2)-net never share an elementary box of order m,
  // so the level is bounded by the dimension.
  for (unsigned m = 2; m <= 6; ++m) {
    const auto net = hammersley_net(m, 2);
    const auto level = admissibility_level(net, m);
    ASSERT_TRUE(level.has_value());
    EXPECT_LE(*level, 2);
    EXPECT_TRUE(is_d_admissible(net, m, *level));
    EXPECT_FALSE(is_d_admissible(net, m, *level - 1));
  }
}

TEST(Admissibility, DuplicatesAreNeverAdmissible) {
  const auto fx = copies_fixture(3, 2, 2);
  EXPECT_EQ(min_pairwise_valuation(fx), Rational(0));
  EXPECT_EQ(admissibility_level(fx, 3), std::nullopt);
  EXPECT_FALSE(is_d_admissible(fx, 3, 100));
}
