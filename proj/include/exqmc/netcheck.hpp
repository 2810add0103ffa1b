#pragma once

// Exhaustive (t,m,s)-net and d-admissibility checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exqmc/generators.hpp"

namespace exqmc {

// prod_j [a_j / b^d_j, (a_j + 1) / b^d_j)
struct ElementaryBox {
  unsigned base = 2;
  std::vector<unsigned> orders;       // d_j
  std::vector<std::uint64_t> indices; // a_j

  unsigned order() const;
  Rational volume() const;
  // Half-open membership, decided on the leading digits of each coordinate.
  bool contains(const BAdicPoint& x) const;
  std::string str() const;
};

struct BoxCount {
  ElementaryBox box;
  std::uint64_t count = 0;
};

struct NetVerdict {
  bool is_net = true;
  std::optional<BoxCount> witness;  // present iff is_net is false
};

// True iff every elementary box of order m - t holds exactly b^t points.
// Shapes (d_1..d_s) and cells are visited in lexicographic order; the first
// failing cell is the witness. Throws if |P| != b^m or the dimensions or
// bases disagree with (s, b).
NetVerdict is_net(const PointSet& points, unsigned t, unsigned m, unsigned s, unsigned b);

// Number of points in `box`, by direct scan.
std::uint64_t count_in_box(const PointSet& points, const ElementaryBox& box);

// min over k < n of ||x_n ⊖ x_k||_b. Needs at least two points and a common base.
Rational min_pairwise_valuation(const PointSet& points);

// Least integer d with min valuation > b^-(m+d); nullopt when the minimum is 0
// (duplicate points), i.e. the set is not d-admissible for any d.
std::optional<int> admissibility_level(const PointSet& points, unsigned m);

bool is_d_admissible(const PointSet& points, unsigned m, int d);

}  // namespace exqmc
