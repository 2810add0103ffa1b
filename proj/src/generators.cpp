#include "exqmc/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace exqmc {

PointSet::PointSet(std::vector<unsigned> bases, std::size_t precision)
    : bases_(std::move(bases)), precision_(precision) {
  if (bases_.empty()) throw std::invalid_argument("point set dimension must be at least 1");
  for (unsigned b : bases_) {
    if (b < 2) throw std::invalid_argument("base must be at least 2");
  }
}

void PointSet::push_back(BAdicPoint p) {
  if (p.dimension() != bases_.size()) {
    throw std::invalid_argument("point of dimension " + std::to_string(p.dimension()) +
                                " added to a set of dimension " + std::to_string(bases_.size()));
  }
  for (std::size_t j = 0; j < bases_.size(); ++j) {
    if (p[j].base() != bases_[j]) throw BaseMismatch("point coordinate base differs from set");
    if (p[j].precision() > precision_) {
      throw std::invalid_argument("point coordinate exceeds set precision");
    }
  }
  points_.push_back(std::move(p));
}

std::optional<unsigned> PointSet::common_base() const {
  for (unsigned b : bases_) {
    if (b != bases_.front()) return std::nullopt;
  }
  return bases_.front();
}

HaltonSpec::HaltonSpec(std::vector<unsigned> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw std::invalid_argument("Halton spec needs at least one base");
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    if (bases_[i] < 2) throw std::invalid_argument("Halton base must be at least 2");
    for (std::size_t j = i + 1; j < bases_.size(); ++j) {
      if (std::gcd(bases_[i], bases_[j]) != 1) {
        throw std::invalid_argument("Halton bases " + std::to_string(bases_[i]) + " and " +
                                    std::to_string(bases_[j]) + " are not coprime");
      }
    }
  }
}

BigInt HaltonSpec::product() const {
  BigInt p = 1;
  for (unsigned b : bases_) p *= b;
  return p;
}

std::size_t digit_count(std::uint64_t n, unsigned base) {
  std::size_t c = 0;
  while (n != 0) {
    n /= base;
    ++c;
  }
  return c;
}

BAdicNumber radical_inverse(std::uint64_t n, unsigned base, std::size_t precision) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (digit_count(n, base) > precision) {
    throw std::invalid_argument("precision " + std::to_string(precision) +
                                " too small for phi_" + std::to_string(base) + "(" +
                                std::to_string(n) + ")");
  }
  std::vector<Digit> digits(precision, 0);
  for (std::size_t i = 0; n != 0; ++i) {
    digits[i] = static_cast<Digit>(n % base);
    n /= base;
  }
  return BAdicNumber(base, std::move(digits));
}

BAdicPoint halton_point(std::uint64_t n, const HaltonSpec& spec, std::size_t precision) {
  std::vector<BAdicNumber> coords;
  coords.reserve(spec.dimension());
  for (unsigned b : spec.bases()) coords.push_back(radical_inverse(n, b, precision));
  return BAdicPoint(std::move(coords));
}

PointSet halton_points(std::uint64_t start, std::uint64_t count, const HaltonSpec& spec,
                       std::size_t precision) {
  PointSet out(spec.bases(), precision);
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(halton_point(start + i, spec, precision));
  return out;
}

PointSet hammersley_net(unsigned m, unsigned base) {
  const std::uint64_t n_points = to_u64(big_pow(base, m));
  PointSet out({base, base}, m);
  out.reserve(n_points);
  for (std::uint64_t n = 0; n < n_points; ++n) {
    out.push_back(BAdicPoint(
        {radical_inverse(n, base, m), BAdicNumber::from_fraction(n, base, m)}));
  }
  return out;
}

PointSet van_der_corput_net(unsigned m, unsigned base) {
  const std::uint64_t n_points = to_u64(big_pow(base, m));
  PointSet out({base}, m);
  out.reserve(n_points);
  for (std::uint64_t n = 0; n < n_points; ++n) {
    out.push_back(BAdicPoint({BAdicNumber::from_fraction(n, base, m)}));
  }
  return out;
}

PointSet digital_shift_set(const PointSet& points, const BAdicPoint& w) {
  auto base = points.common_base();
  if (!base) throw BaseMismatch("digital shift needs a single common base");
  if (w.dimension() != points.dimension()) throw std::invalid_argument("shift dimension mismatch");
  std::size_t precision = points.precision();
  for (const auto& c : w.coords()) {
    if (c.base() != *base) throw BaseMismatch("shift base differs from point-set base");
    precision = std::max(precision, c.precision());
  }
  PointSet out(points.bases(), precision);
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(digit_add(p, w));
  return out;
}

PointSet copies_fixture(unsigned m, unsigned base, unsigned s) {
  if (m < 1) throw std::invalid_argument("copies fixture needs m >= 1");
  PointSet source = [&] {
    switch (s) {
      case 1: return van_der_corput_net(m - 1, base);
      case 2: return hammersley_net(m - 1, base);
      default:
        throw std::invalid_argument("copies fixture supports s = 1 or s = 2, got s = " +
                                    std::to_string(s));
    }
  }();
  PointSet out(source.bases(), source.precision());
  out.reserve(source.size() * base);
  for (unsigned c = 0; c < base; ++c) {
    for (const auto& p : source) out.push_back(p);
  }
  return out;
}

}  // namespace exqmc
