#include "exqmc/rational.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace exqmc {

namespace mp = boost::multiprecision;

Rational::Rational(long long value) : value_(value) {}

Rational::Rational(BigInt value) : value_(std::move(value)) {}

Rational::Rational(BigInt numerator, BigInt denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mp::cpp_rational(std::move(numerator), std::move(denominator));
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer in rational");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed rational");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') {
        throw std::invalid_argument("malformed rational: " + std::string(s));
      }
    }
    return BigInt(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
  return Rational(parse_int(text.substr(0, slash)), std::move(den));
}

BigInt Rational::numerator() const { return mp::numerator(value_); }
BigInt Rational::denominator() const { return mp::denominator(value_); }

bool Rational::is_zero() const { return value_ == 0; }
int Rational::sign() const { return value_.sign(); }
Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = a.value_.compare(b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  BigInt den = denominator();
  if (den == 1) return numerator().str();
  return numerator().str() + "/" + den.str();
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::decimal(int digits) const {
  std::ostringstream os;
  os << std::setprecision(digits) << to_double();
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational rational_pow(const Rational& base, long long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw std::domain_error("zero to a negative power");
    return Rational(1) / rational_pow(base, -exponent);
  }
  Rational result(1);
  Rational factor = base;
  auto e = static_cast<unsigned long long>(exponent);
  while (e != 0) {
    if (e & 1U) result *= factor;
    e >>= 1U;
    if (e != 0) factor *= factor;
  }
  return result;
}

BigInt big_pow(unsigned base, unsigned exponent) { return mp::pow(BigInt(base), exponent); }

BigInt floor(const Rational& r) {
  BigInt q;
  BigInt rem;
  BigInt den = r.denominator();
  mp::divide_qr(r.numerator(), den, q, rem);
  if (rem < 0) q -= 1;
  return q;
}

BigInt ceil(const Rational& r) {
  BigInt f = floor(r);
  return Rational(f) == r ? f : f + 1;
}

std::uint64_t to_u64(const BigInt& value) {
  if (value < 0 || value > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw std::overflow_error("integer " + value.str() + " exceeds 64-bit range");
  }
  return value.convert_to<std::uint64_t>();
}

}  // namespace exqmc
