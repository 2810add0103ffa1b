#include "exqmc/badic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace exqmc {

namespace {

void require_same_base(const BAdicNumber& a, const BAdicNumber& b) {
  if (a.base() != b.base()) {
    throw BaseMismatch("digit operation on bases " + std::to_string(a.base()) + " and " +
                       std::to_string(b.base()));
  }
}

template <typename Op>
BAdicNumber digitwise(const BAdicNumber& x, const BAdicNumber& y, Op op) {
  require_same_base(x, y);
  const std::size_t p = std::max(x.precision(), y.precision());
  std::vector<Digit> out(p);
  for (std::size_t i = 1; i <= p; ++i) out[i - 1] = op(x.digit(i), y.digit(i), x.base());
  return BAdicNumber(x.base(), std::move(out));
}

}  // namespace

BAdicNumber::BAdicNumber(unsigned base, std::vector<Digit> digits)
    : base_(base), digits_(std::move(digits)) {
  if (base_ < 2) throw std::invalid_argument("base must be at least 2");
  for (Digit d : digits_) {
    if (d >= base_) {
      throw std::invalid_argument("digit " + std::to_string(d) + " out of range for base " +
                                  std::to_string(base_));
    }
  }
}

BAdicNumber BAdicNumber::zero(unsigned base, std::size_t precision) {
  return BAdicNumber(base, std::vector<Digit>(precision, 0));
}

BAdicNumber BAdicNumber::from_rational(const Rational& value, unsigned base,
                                       std::size_t precision) {
  if (value < Rational(0) || value >= Rational(1)) {
    throw std::invalid_argument("b-adic value must lie in [0,1): " + value.str());
  }
  std::vector<Digit> digits(precision);
  Rational rest = value;
  for (std::size_t i = 0; i < precision; ++i) {
    rest *= Rational(base);
    BigInt d = floor(rest);
    digits[i] = d.convert_to<Digit>();
    rest -= Rational(d);
  }
  return BAdicNumber(base, std::move(digits));
}

BAdicNumber BAdicNumber::from_fraction(std::uint64_t numerator, unsigned base,
                                       std::size_t precision) {
  std::vector<Digit> digits(precision, 0);
  for (std::size_t i = precision; i > 0; --i) {
    digits[i - 1] = static_cast<Digit>(numerator % base);
    numerator /= base;
  }
  if (numerator != 0) throw std::invalid_argument("numerator does not fit the precision");
  return BAdicNumber(base, std::move(digits));
}

bool BAdicNumber::is_zero() const {
  return std::all_of(digits_.begin(), digits_.end(), [](Digit d) { return d == 0; });
}

std::size_t BAdicNumber::leading_zeros() const {
  auto it = std::find_if(digits_.begin(), digits_.end(), [](Digit d) { return d != 0; });
  return static_cast<std::size_t>(it - digits_.begin());
}

BAdicNumber BAdicNumber::extended(std::size_t precision) const {
  if (precision < digits_.size()) throw std::invalid_argument("extended() cannot shrink");
  std::vector<Digit> d = digits_;
  d.resize(precision, 0);
  return BAdicNumber(base_, std::move(d));
}

std::string BAdicNumber::str() const {
  std::ostringstream os;
  os << "0.";
  if (digits_.empty()) os << '0';
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (base_ > 10 && i > 0) os << ':';
    os << digits_[i];
  }
  os << " (base " << base_ << ")";
  return os.str();
}

bool operator==(const BAdicNumber& a, const BAdicNumber& b) {
  if (a.base_ != b.base_) return false;
  const std::size_t p = std::max(a.precision(), b.precision());
  for (std::size_t i = 1; i <= p; ++i) {
    if (a.digit(i) != b.digit(i)) return false;
  }
  return true;
}

BAdicNumber truncate(const BAdicNumber& x, std::size_t m) {
  std::vector<Digit> d(x.digits().begin(), x.digits().end());
  for (std::size_t i = m; i < d.size(); ++i) d[i] = 0;
  return BAdicNumber(x.base(), std::move(d));
}

BAdicNumber digit_add(const BAdicNumber& x, const BAdicNumber& sigma) {
  return digitwise(x, sigma, [](Digit a, Digit b, unsigned base) { return (a + b) % base; });
}

BAdicNumber digit_sub(const BAdicNumber& x, const BAdicNumber& sigma) {
  return digitwise(x, sigma, [](Digit a, Digit b, unsigned base) { return (a + base - b) % base; });
}

Rational valuation(const BAdicNumber& x) {
  const std::size_t k = x.leading_zeros();
  if (k == x.precision()) return Rational(0);
  return Rational(BigInt(1), big_pow(x.base(), static_cast<unsigned>(k + 1)));
}

Rational to_rational(const BAdicNumber& x) {
  BigInt num = 0;
  for (Digit d : x.digits()) num = num * x.base() + d;
  return Rational(num, big_pow(x.base(), static_cast<unsigned>(x.precision())));
}

int compare(const BAdicNumber& a, const BAdicNumber& b) {
  require_same_base(a, b);
  const std::size_t p = std::max(a.precision(), b.precision());
  for (std::size_t i = 1; i <= p; ++i) {
    Digit da = a.digit(i);
    Digit db = b.digit(i);
    if (da != db) return da < db ? -1 : 1;
  }
  return 0;
}

std::optional<std::size_t> first_difference(const BAdicNumber& a, const BAdicNumber& b) {
  require_same_base(a, b);
  const std::size_t p = std::max(a.precision(), b.precision());
  for (std::size_t i = 1; i <= p; ++i) {
    if (a.digit(i) != b.digit(i)) return i;
  }
  return std::nullopt;
}

BAdicPoint::BAdicPoint(std::vector<BAdicNumber> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("a point needs at least one coordinate");
}

std::optional<unsigned> BAdicPoint::common_base() const {
  if (coords_.empty()) return std::nullopt;
  unsigned b = coords_.front().base();
  for (const auto& c : coords_) {
    if (c.base() != b) return std::nullopt;
  }
  return b;
}

std::vector<Rational> BAdicPoint::to_rationals() const {
  std::vector<Rational> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(to_rational(c));
  return out;
}

std::string BAdicPoint::str() const {
  std::string s = "(";
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (j) s += ", ";
    s += coords_[j].str();
  }
  return s + ")";
}

namespace {

template <typename Op>
BAdicPoint pointwise(const BAdicPoint& x, const BAdicPoint& y, Op op) {
  if (x.dimension() != y.dimension()) throw std::invalid_argument("dimension mismatch");
  std::vector<BAdicNumber> out;
  out.reserve(x.dimension());
  for (std::size_t j = 0; j < x.dimension(); ++j) out.push_back(op(x[j], y[j]));
  return BAdicPoint(std::move(out));
}

}  // namespace

BAdicPoint truncate(const BAdicPoint& x, std::size_t m) {
  std::vector<BAdicNumber> out;
  out.reserve(x.dimension());
  for (const auto& c : x.coords()) out.push_back(truncate(c, m));
  return BAdicPoint(std::move(out));
}

BAdicPoint digit_add(const BAdicPoint& x, const BAdicPoint& sigma) {
  return pointwise(x, sigma, [](const BAdicNumber& a, const BAdicNumber& b) {
    return digit_add(a, b);
  });
}

BAdicPoint digit_sub(const BAdicPoint& x, const BAdicPoint& sigma) {
  return pointwise(x, sigma, [](const BAdicNumber& a, const BAdicNumber& b) {
    return digit_sub(a, b);
  });
}

Rational point_valuation(const BAdicPoint& x) {
  if (!x.common_base()) throw BaseMismatch("point valuation needs a single common base");
  Rational v(1);
  for (const auto& c : x.coords()) {
    v *= valuation(c);
    if (v.is_zero()) break;
  }
  return v;
}

}  // namespace exqmc
