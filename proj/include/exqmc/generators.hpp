#pragma once

// Point-set constructors: radical inverses, Halton points, Hammersley nets,
// digital shifts and the duplicated-net fixture.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "exqmc/badic.hpp"

namespace exqmc {

// Ordered multiset of s-dimensional points. Coordinate j of every point is
// written in bases()[j] with at most precision() digits.
class PointSet {
 public:
  PointSet(std::vector<unsigned> bases, std::size_t precision);

  void push_back(BAdicPoint p);
  void reserve(std::size_t n) { points_.reserve(n); }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dimension() const { return bases_.size(); }
  std::size_t precision() const { return precision_; }
  const std::vector<unsigned>& bases() const { return bases_; }
  std::optional<unsigned> common_base() const;

  const BAdicPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<unsigned> bases_;
  std::size_t precision_;
  std::vector<BAdicPoint> points_;
};

class HaltonSpec {
 public:
  // Throws unless every base is >= 2 and the bases are pairwise coprime.
  explicit HaltonSpec(std::vector<unsigned> bases);

  const std::vector<unsigned>& bases() const { return bases_; }
  std::size_t dimension() const { return bases_.size(); }
  BigInt product() const;

 private:
  std::vector<unsigned> bases_;
};

// Number of base-b digits of n (0 for n = 0).
std::size_t digit_count(std::uint64_t n, unsigned base);

// phi_b(n) = sum_j n_j b^(-j-1). Throws if n needs more than `precision` digits.
BAdicNumber radical_inverse(std::uint64_t n, unsigned base, std::size_t precision);

BAdicPoint halton_point(std::uint64_t n, const HaltonSpec& spec, std::size_t precision);
// H(start), ..., H(start + count - 1).
PointSet halton_points(std::uint64_t start, std::uint64_t count, const HaltonSpec& spec,
                       std::size_t precision);

// b^m points (phi_b(n), n / b^m); a (0,m,2)-net in base b.
PointSet hammersley_net(unsigned m, unsigned base = 2);
// b^m points n / b^m; a (0,m,1)-net in base b.
PointSet van_der_corput_net(unsigned m, unsigned base = 2);

// Every point shifted by ⊕w. Requires one common base shared with w.
PointSet digital_shift_set(const PointSet& points, const BAdicPoint& w);

// b copies of a (0,m-1,s)-net: a (1,m,s)-net that is not d-admissible for
// any d. Supported for s = 1 and s = 2.
PointSet copies_fixture(unsigned m, unsigned base, unsigned s);

}  // namespace exqmc
