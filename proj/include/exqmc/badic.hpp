#pragma once

// Finite b-adic expansions x = sum_{i=1..P} x_i b^-i and the digit-wise
// operations used throughout: truncation, digital shift (both directions)
// and the absolute valuation.
//
// Digit index 1 is the most significant fractional digit. Digits past the
// precision P read as zero.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exqmc/errors.hpp"
#include "exqmc/rational.hpp"

namespace exqmc {

using Digit = std::uint32_t;

class BAdicNumber {
 public:
  BAdicNumber() = default;
  // `digits[0]` is x_1. Throws on base < 2 or an out-of-range digit.
  BAdicNumber(unsigned base, std::vector<Digit> digits);

  static BAdicNumber zero(unsigned base, std::size_t precision);
  // floor(value * base^precision) expanded into `precision` digits; exact
  // when value has a finite expansion of that length. Requires 0 <= value < 1.
  static BAdicNumber from_rational(const Rational& value, unsigned base, std::size_t precision);
  // Digits of the integer `numerator` written over base^precision, i.e.
  // numerator / base^precision. Requires numerator < base^precision.
  static BAdicNumber from_fraction(std::uint64_t numerator, unsigned base, std::size_t precision);

  unsigned base() const { return base_; }
  std::size_t precision() const { return digits_.size(); }
  std::span<const Digit> digits() const { return digits_; }

  // 1-based; returns 0 past the precision.
  Digit digit(std::size_t i) const {
    return (i >= 1 && i <= digits_.size()) ? digits_[i - 1] : 0;
  }

  bool is_zero() const;
  // Number of leading zero digits; equals precision() for zero.
  std::size_t leading_zeros() const;

  // Same value in a longer (or equal) precision.
  BAdicNumber extended(std::size_t precision) const;

  // "0.d1d2...dP (base b)"
  std::string str() const;

  // Equal base and equal digits after zero padding.
  friend bool operator==(const BAdicNumber& a, const BAdicNumber& b);

 private:
  unsigned base_ = 2;
  std::vector<Digit> digits_;
};

BAdicNumber truncate(const BAdicNumber& x, std::size_t m);
// x ⊕ sigma: digit-wise sum mod b; precision is the max of the inputs.
BAdicNumber digit_add(const BAdicNumber& x, const BAdicNumber& sigma);
// x ⊖ sigma: digit-wise difference mod b.
BAdicNumber digit_sub(const BAdicNumber& x, const BAdicNumber& sigma);

// b^-(k+1) for k leading zeros; exactly 0 for an all-zero expansion.
Rational valuation(const BAdicNumber& x);
Rational to_rational(const BAdicNumber& x);

// Sign of value(a) - value(b) for equal bases; no rationals involved.
int compare(const BAdicNumber& a, const BAdicNumber& b);

// Position (1-based) of the first digit where a and b differ, or nullopt
// when they agree on every tracked digit. This is leading_zeros(a ⊖ b) + 1.
std::optional<std::size_t> first_difference(const BAdicNumber& a, const BAdicNumber& b);

class BAdicPoint {
 public:
  BAdicPoint() = default;
  explicit BAdicPoint(std::vector<BAdicNumber> coords);

  std::size_t dimension() const { return coords_.size(); }
  const BAdicNumber& operator[](std::size_t j) const { return coords_[j]; }
  const std::vector<BAdicNumber>& coords() const { return coords_; }

  // The shared base when every coordinate has the same one.
  std::optional<unsigned> common_base() const;
  std::vector<Rational> to_rationals() const;
  std::string str() const;

  friend bool operator==(const BAdicPoint& a, const BAdicPoint& b) = default;

 private:
  std::vector<BAdicNumber> coords_;
};

BAdicPoint truncate(const BAdicPoint& x, std::size_t m);
BAdicPoint digit_add(const BAdicPoint& x, const BAdicPoint& sigma);
BAdicPoint digit_sub(const BAdicPoint& x, const BAdicPoint& sigma);
// Product of coordinate valuations. Throws BaseMismatch on mixed bases.
Rational point_valuation(const BAdicPoint& x);

}  // namespace exqmc
