#pragma once

// Exact rational numbers for every volume, discrepancy value and bound.
//
// Always reduced, denominator positive, zero is 0/1. Backed by
// Boost.Multiprecision so numerators and denominators never overflow.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace exqmc {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() = default;
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  explicit Rational(BigInt value);
  Rational(BigInt numerator, BigInt denominator);

  // Accepts "p/q", "-p/q" or a plain integer "p".
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;

  bool is_zero() const;
  int sign() const;
  Rational abs() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // "p/q", or "p" when the denominator is 1.
  std::string str() const;
  // Display only; never used for a verdict.
  double to_double() const;
  std::string decimal(int digits = 12) const;

 private:
  boost::multiprecision::cpp_rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// base^exponent for a possibly negative exponent.
Rational rational_pow(const Rational& base, long long exponent);
BigInt big_pow(unsigned base, unsigned exponent);

// Ceiling of a non-negative rational as an integer.
BigInt ceil(const Rational& r);
BigInt floor(const Rational& r);

// Throws std::overflow_error when `value` does not fit.
std::uint64_t to_u64(const BigInt& value);

}  // namespace exqmc
