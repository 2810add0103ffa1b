#include "exqmc/netcheck.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace exqmc {

namespace {

// Integer formed by the first `d` digits of x, most significant first.
std::uint64_t leading_index(const BAdicNumber& x, unsigned d) {
  std::uint64_t a = 0;
  for (unsigned i = 1; i <= d; ++i) a = a * x.base() + x.digit(i);
  return a;
}

// All compositions of `total` into `parts` non-negative parts, lexicographic.
void for_each_composition(unsigned total, unsigned parts,
                          const std::function<bool(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> d(parts, 0);
  std::function<bool(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
    if (pos + 1 == parts) {
      d[pos] = left;
      return visit(d);
    }
    for (unsigned v = 0; v <= left; ++v) {
      d[pos] = v;
      if (!rec(pos + 1, left - v)) return false;
    }
    return true;
  };
  rec(0, total);
}

}  // namespace

unsigned ElementaryBox::order() const {
  unsigned o = 0;
  for (unsigned d : orders) o += d;
  return o;
}

Rational ElementaryBox::volume() const { return Rational(BigInt(1), big_pow(base, order())); }

bool ElementaryBox::contains(const BAdicPoint& x) const {
  if (x.dimension() != orders.size()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t j = 0; j < orders.size(); ++j) {
    if (x[j].base() != base) throw BaseMismatch("elementary box base differs from point base");
    if (leading_index(x[j], orders[j]) != indices[j]) return false;
  }
  return true;
}

std::string ElementaryBox::str() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    if (j) os << " x ";
    os << "[" << indices[j] << "/" << base << "^" << orders[j] << ", " << indices[j] + 1 << "/"
       << base << "^" << orders[j] << ")";
  }
  return os.str();
}

NetVerdict is_net(const PointSet& points, unsigned t, unsigned m, unsigned s, unsigned b) {
  if (t > m) throw std::invalid_argument("net quality t must not exceed m");
  if (points.dimension() != s) throw std::invalid_argument("point-set dimension differs from s");
  auto base = points.common_base();
  if (!base || *base != b) throw BaseMismatch("point-set base differs from b");
  const std::uint64_t expected_size = to_u64(big_pow(b, m));
  if (points.size() != expected_size) {
    throw std::invalid_argument("net check needs b^m = " + std::to_string(expected_size) +
                                " points, got " + std::to_string(points.size()));
  }
  const unsigned order = m - t;
  const std::uint64_t cells = to_u64(big_pow(b, order));
  const std::uint64_t per_cell = to_u64(big_pow(b, t));

  // First `order` digits of every coordinate as one integer; the index for
  // d_j digits is then a division by b^(order - d_j).
  std::vector<std::vector<std::uint64_t>> lead(s, std::vector<std::uint64_t>(points.size()));
  for (unsigned j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < points.size(); ++i) lead[j][i] = leading_index(points[i][j], order);
  }

  NetVerdict verdict;
  std::vector<std::uint64_t> counts(cells);
  for_each_composition(order, s, [&](const std::vector<unsigned>& d) {
    std::fill(counts.begin(), counts.end(), 0);
    std::vector<std::uint64_t> radix(s);
    std::vector<std::uint64_t> drop(s);
    for (unsigned j = 0; j < s; ++j) {
      radix[j] = to_u64(big_pow(b, d[j]));
      drop[j] = to_u64(big_pow(b, order - d[j]));
    }
    // Mixed-radix cell id with coordinate 1 most significant, so the id order
    // is the lexicographic order of (a_1, ..., a_s).
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::uint64_t id = 0;
      for (unsigned j = 0; j < s; ++j) id = id * radix[j] + lead[j][i] / drop[j];
      ++counts[id];
    }
    for (std::uint64_t id = 0; id < cells; ++id) {
      if (counts[id] == per_cell) continue;
      ElementaryBox box{b, d, std::vector<std::uint64_t>(s)};
      std::uint64_t rest = id;
      for (unsigned j = s; j-- > 0;) {
        box.indices[j] = rest % radix[j];
        rest /= radix[j];
      }
      verdict.is_net = false;
      verdict.witness = BoxCount{std::move(box), counts[id]};
      return false;
    }
    return true;
  });
  return verdict;
}

std::uint64_t count_in_box(const PointSet& points, const ElementaryBox& box) {
  return static_cast<std::uint64_t>(std::count_if(
      points.begin(), points.end(), [&](const BAdicPoint& p) { return box.contains(p); }));
}

Rational min_pairwise_valuation(const PointSet& points) {
  if (points.size() < 2) throw std::invalid_argument("pairwise valuation needs at least two points");
  auto base = points.common_base();
  if (!base) throw BaseMismatch("pairwise valuation needs a single common base");
  // ||x ⊖ y||_b = b^-(sum of first-difference positions), or 0 if any
  // coordinate agrees on every digit. Track the largest exponent.
  std::size_t worst = 0;
  for (std::size_t n = 1; n < points.size(); ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t exponent = 0;
      for (std::size_t j = 0; j < points.dimension(); ++j) {
        auto pos = first_difference(points[n][j], points[k][j]);
        if (!pos) return Rational(0);
        exponent += *pos;
      }
      worst = std::max(worst, exponent);
    }
  }
  return Rational(BigInt(1), big_pow(*base, static_cast<unsigned>(worst)));
}

std::optional<int> admissibility_level(const PointSet& points, unsigned m) {
  const Rational v = min_pairwise_valuation(points);
  if (v.is_zero()) return std::nullopt;
  // v = b^-j exactly; v > b^-(m+d) iff d > j - m.
  const unsigned b = *points.common_base();
  BigInt den = v.denominator();
  long long j = 0;
  while (den > 1) {
    den /= b;
    ++j;
  }
  return static_cast<int>(j - static_cast<long long>(m) + 1);
}

bool is_d_admissible(const PointSet& points, unsigned m, int d) {
  auto level = admissibility_level(points, m);
  return level && d >= *level;
}

}  // namespace exqmc
