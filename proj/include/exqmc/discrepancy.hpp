#pragma once

// Local discrepancy Delta(y) = #{x_n in [0,y)} - N * vol([0,y)) and the
// star discrepancy sup_y |Delta(y)| / N, all in exact arithmetic.

#include <cstdint>
#include <functional>
#include <vector>

#include "exqmc/generators.hpp"
#include "exqmc/netcheck.hpp"

namespace exqmc {

// [0, y^(1)) x ... x [0, y^(s)) with 0 <= y^(j) <= 1.
struct AnchoredBox {
  std::vector<Rational> upper;

  static AnchoredBox from_point(const BAdicPoint& corner);
  Rational volume() const;
};

struct DiscrepancyValue {
  Rational raw;         // count - N * volume
  Rational normalized;  // raw / N
  std::uint64_t n = 0;
};

std::uint64_t count_in_box(const PointSet& points, const AnchoredBox& box);
// Same count with the corner kept as digits: x in [0,y) iff every coordinate
// compares below digit-wise. Bases of the corner must match the set.
std::uint64_t count_in_box(const PointSet& points, const BAdicPoint& corner);

DiscrepancyValue local_discrepancy(const PointSet& points, const AnchoredBox& box);
DiscrepancyValue local_discrepancy(const PointSet& points, const BAdicPoint& corner);

// Delta over the window x_start, ..., x_{start+length-1} of a point stream
// given by `point_at`, without materializing the window.
using PointStream = std::function<BAdicPoint(std::uint64_t)>;
DiscrepancyValue local_discrepancy_window(const PointStream& point_at, std::uint64_t start,
                                          std::uint64_t length, const BAdicPoint& corner);

struct StarDiscrepancy {
  Rational value;
  std::vector<Rational> argmax_corner;
  // True when the supremum is approached from above the corner (points on
  // the corner's faces counted), false when approached from below.
  bool closed_side = false;
};

// Exact D* for s = 2 by an O(N^2) sweep over the critical grid
// {point coordinates} ∪ {1} in each axis.
StarDiscrepancy star_discrepancy_exact(const PointSet& points);

inline constexpr std::size_t kDefaultOracleCap = 256;

// Brute force in any dimension: every corner of the grid
// {0, 1, point coordinates}^s, counted directly with both < and <=.
// Throws CapExceeded when N > cap.
StarDiscrepancy star_discrepancy_oracle(const PointSet& points,
                                        std::size_t cap = kDefaultOracleCap);

}  // namespace exqmc
