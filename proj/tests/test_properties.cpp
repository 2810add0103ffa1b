#include <gtest/gtest.h>

#include "exqmc/discrepancy.hpp"
#include "exqmc/levin_halton.hpp"
#include "exqmc/levin_net.hpp"
#include "prop.hpp"

using namespace exqmc;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2018;
constexpr int kTrials = 200;

}  // namespace

TEST(Property, ShiftIsInvertibleAndCommutes) {
  prop::Gen gen(kSeed);
  for (int t = 0; t < kTrials; ++t) {
    const unsigned b = static_cast<unsigned>(gen.range(2, 7));
    const std::size_t p = gen.range(1, 12);
    const auto x = gen.number(b, p);
    const auto y = gen.number(b, gen.range(1, 12));
    SCOPED_TRACE(t);
    EXPECT_EQ(digit_sub(digit_add(x, y), y), x);
    EXPECT_EQ(digit_add(digit_sub(x, y), y), x);
    EXPECT_EQ(digit_add(x, y), digit_add(y, x));
    EXPECT_EQ(valuation(digit_sub(x, y)), valuation(digit_sub(y, x)));
    EXPECT_EQ(valuation(digit_sub(x, x)), Rational(0));
  }
}

TEST(Property, CompareMatchesRationalOrder) {
  prop::Gen gen(kSeed + 1);
  for (int t = 0; t < kTrials; ++t) {
    const unsigned b = static_cast<unsigned>(gen.range(2, 5));
    const auto x = gen.number(b, gen.range(1, 10));
    const auto y = gen.number(b, gen.range(1, 10));
    const Rational rx = to_rational(x);
    const Rational ry = to_rational(y);
    EXPECT_EQ(compare(x, y), rx < ry ? -1 : (ry < rx ? 1 : 0)) << t;
    EXPECT_EQ(BAdicNumber::from_rational(rx, b, x.precision()), x) << t;
  }
}

TEST(Property, ValuationBoundsDistance) {
  // x and y share the first k digits, so |x - y| < b^-k = b * valuation.
  prop::Gen gen(kSeed + 2);
  for (int t = 0; t < kTrials; ++t) {
    const unsigned b = static_cast<unsigned>(gen.range(2, 5));
    const auto x = gen.number(b, 8);
    const auto y = gen.number(b, 8);
    const Rational v = valuation(digit_sub(x, y));
    const Rational d = (to_rational(x) - to_rational(y)).abs();
    if (v.is_zero()) {
      EXPECT_TRUE(d.is_zero());
    } else {
      EXPECT_LT(d, v * Rational(b)) << t;
    }
  }
}

TEST(Property, ShiftedNetsStayNets) {
  prop::Gen gen(kSeed + 3);
  for (int t = 0; t < 40; ++t) {
    const unsigned b = static_cast<unsigned>(gen.range(2, 3));
    const unsigned m = static_cast<unsigned>(gen.range(2, b == 2 ? 7 : 4));
    const auto net = hammersley_net(m, b);
    const auto shifted = digital_shift_set(net, gen.point(b, 2, gen.range(1, m + 3)));
    SCOPED_TRACE(t);
    EXPECT_TRUE(is_net(shifted, 0, m, 2, b).is_net);
    EXPECT_EQ(min_pairwise_valuation(shifted), min_pairwise_valuation(net));
  }
}

TEST(Property, ExactStarDiscrepancyMatchesOracle) {
  prop::Gen gen(kSeed + 4);
  for (int t = 0; t < 60; ++t) {
    const unsigned b = static_cast<unsigned>(gen.range(2, 3));
    const std::size_t n = gen.range(1, 24);
    PointSet set({b, b}, 4);
    for (std::size_t i = 0; i < n; ++i) set.push_back(gen.point(b, 2, 4));
    EXPECT_EQ(star_discrepancy_exact(set).value, star_discrepancy_oracle(set).value) << t;
  }
}

TEST(Property, DecompositionOfRandomCorners) {
  prop::Gen gen(kSeed + 5);
  for (int t = 0; t < 40; ++t) {
    const unsigned b = static_cast<unsigned>(gen.range(2, 3));
    const unsigned m = static_cast<unsigned>(gen.range(2, b == 2 ? 6 : 4));
    std::vector<std::vector<GammaSpec::Term>> terms(2);
    for (auto& list : terms) {
      for (unsigned r = 1; r <= m; ++r) {
        if (gen.range(0, 1) == 1) list.push_back({r, static_cast<Digit>(gen.range(1, b - 1))});
      }
      if (list.empty()) list.push_back({static_cast<unsigned>(gen.range(1, m)), 1});
    }
    const GammaSpec g(b, m, terms);
    const auto p = digital_shift_set(hammersley_net(m, b), gen.point(b, 2, m));
    const auto d = delta_decomposition(p, g);
    SCOPED_TRACE(t);
    EXPECT_TRUE(d.delta1.is_zero());
    EXPECT_EQ(d.sum, d.direct);
    Rational vol;
    for (const auto& pb : partition_boxes(g)) vol += pb.box.volume();
    const auto y = g.point().to_rationals();
    EXPECT_EQ(vol, y[0] * y[1]);
  }
}

TEST(Property, ScalarRadicalCongruence) {
  // phi_2(n) in [[x]_r, [x]_r + 2^-r) iff n = sum_j x_j 2^(j-1) mod 2^r.
  for (unsigned r = 1; r <= 6; ++r) {
    const std::uint64_t mod = std::uint64_t{1} << r;
    for (std::uint64_t xi = 0; xi < mod; ++xi) {
      const auto x = BAdicNumber::from_fraction(xi, 2, r);
      std::uint64_t xdot = 0;
      for (unsigned j = 1; j <= r; ++j) xdot += static_cast<std::uint64_t>(x.digit(j)) << (j - 1);
      const Rational lo = to_rational(x);
      const Rational hi = lo + Rational(BigInt(1), BigInt(mod));
      for (std::uint64_t n = 0; n < 4 * mod; ++n) {
        const Rational v = to_rational(radical_inverse(n, 2, 8));
        ASSERT_EQ(lo <= v && v < hi, n % mod == xdot) << r << " " << xi << " " << n;
      }
    }
  }
}

TEST(Property, CongruenceMatchesGeometryAtRandomN) {
  prop::Gen gen(kSeed + 6);
  const auto f = tau_orders(HaltonSpec({2, 3}));
  const auto g = tau_orders(HaltonSpec({3, 5}));
  for (const HaltonFrame* frame : {&f, &g}) {
    const auto box = base_box(*frame, 3);
    const auto anchor = window_anchor(*frame, box);
    for (int t = 0; t < 500; ++t) {
      const std::uint64_t n = gen.range(0, 1'000'000'000);
      const IndexVector k{static_cast<unsigned>(gen.range(1, 3)), static_cast<unsigned>(gen.range(1, 3))};
      ASSERT_EQ(membership_congruence(*frame, anchor, k, n), membership_geometric(*frame, box, k, n)) << n;
    }
  }
}

TEST(Property, WindowTraceMatchesStream) {
  prop::Gen gen(kSeed + 7);
  const auto f = tau_orders(HaltonSpec({2, 3}));
  for (int t = 0; t < 20; ++t) {
    const unsigned m = static_cast<unsigned>(gen.range(1, 3));
    std::vector<std::vector<unsigned>> removals(2);
    if (gen.range(0, 1) == 1) removals[0].push_back(static_cast<unsigned>(gen.range(1, m)));
    const auto box = modified_box(f, base_box(f, m), removals, {});
    const std::uint64_t start = gen.range(0, 5000);
    const std::uint64_t length = gen.range(1, 300);
    const auto trace = window_trace(f, box, start, length);
    BAdicPoint corner(box.upper);
    const auto stream = [&](std::uint64_t n) { return halton_point(n, f.spec, 16); };
    for (std::uint64_t n : {std::uint64_t{1}, length / 2 + 1, length}) {
      EXPECT_EQ(trace.delta(n), local_discrepancy_window(stream, start, n, corner).raw) << t;
    }
  }
}

TEST(Property, AlphaClosedEqualsBruteOnRemovalBoxes) {
  prop::Gen gen(kSeed + 8);
  const auto f = tau_orders(HaltonSpec({2, 3}));
  for (int t = 0; t < 10; ++t) {
    const unsigned m = static_cast<unsigned>(gen.range(1, 3));
    std::vector<std::vector<unsigned>> removals(2);
    for (auto& r : removals) {
      for (unsigned j = 1; j <= m; ++j) {
        if (gen.range(0, 3) == 0) r.push_back(j);
      }
    }
    const auto box = modified_box(f, base_box(f, m), removals, {});
    EXPECT_EQ(alpha_closed(f, box), alpha_bruteforce(f, box)) << t;
  }
}

TEST(Property, UpsilonDistance) {
  prop::Gen gen(kSeed + 9);
  const auto f = tau_orders(HaltonSpec({2, 3}));
  for (int t = 0; t < 100; ++t) {
    const std::vector<Rational> x{Rational(BigInt(gen.next() >> 32), big_pow(2, 32)),
                                  Rational(BigInt(gen.next() >> 32), big_pow(2, 32))};
    const auto y = upsilon_nearest(f, x, 6);
    EXPECT_TRUE(within_upsilon_radius(x, y)) << t;
  }
}
