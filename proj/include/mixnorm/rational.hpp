#ifndef MIXNORM_RATIONAL_HPP
#define MIXNORM_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>

#include "mixnorm/errors.hpp"

namespace mixnorm {

// Exact rational arithmetic on 64-bit integers with 128-bit intermediates.
// Values are always stored normalized: den > 0 and gcd(|num|, den) == 1,
// so equality is representation equality. The quantities handled here are
// reciprocals of exponents and short sums of them; overflow would require
// denominators beyond 2^63 and is reported rather than wrapped.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("rational: zero denominator");
    normalize_from(num, den);
  }

  static Rational from_int(std::int64_t n) { return Rational(n, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational reciprocal() const {
    if (num_ == 0) throw DomainError("rational: reciprocal of zero");
    return Rational(den_, num_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational: division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 lhs = i128(a.num_) * b.den_;
    const i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "a", "a/b", and (when allow_decimal) finite decimals such as
  // "1.9", which are exact rationals.
  static Rational parse(std::string_view text, bool allow_decimal = false) {
    if (text.empty()) throw DomainError("rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      const std::int64_t n = parse_int(text.substr(0, slash));
      const std::int64_t d = parse_int(text.substr(slash + 1));
      if (d == 0) throw DomainError("rational: zero denominator in '" + std::string(text) + "'");
      return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot != std::string_view::npos) {
      if (!allow_decimal)
        throw DomainError("rational: decimal not allowed here, use a/b: '" + std::string(text) + "'");
      const std::string_view whole = text.substr(0, dot);
      const std::string_view frac = text.substr(dot + 1);
      if (frac.empty()) throw DomainError("rational: malformed decimal '" + std::string(text) + "'");
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) {
        if (den > std::numeric_limits<std::int64_t>::max() / 10)
          throw DomainError("rational: decimal too long '" + std::string(text) + "'");
        den *= 10;
      }
      const bool neg = !whole.empty() && whole.front() == '-';
      const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
      const std::int64_t f = parse_int(frac);
      if (f < 0) throw DomainError("rational: malformed decimal '" + std::string(text) + "'");
      const i128 n = i128(w) * den + (neg ? -i128(f) : i128(f));
      return from_i128(n, den);
    }
    return Rational(parse_int(text), 1);
  }

 private:
  using i128 = __int128;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;

  void normalize_from(std::int64_t num, std::int64_t den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
    if (num_ == 0) den_ = 1;
  }

  static Rational from_i128(i128 num, i128 den) {
    if (den == 0) throw DomainError("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i128 g = gcd128(num < 0 ? -num : num, den);
    if (g != 0) {
      num /= g;
      den /= g;
    }
    constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi)
      throw Error("rational: 64-bit overflow after reduction");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = num == 0 ? 1 : static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static std::int64_t parse_int(std::string_view s) {
    if (s.empty()) throw DomainError("rational: empty integer field");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw DomainError("rational: malformed integer '" + std::string(s) + "'");
    i128 v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw DomainError("rational: malformed integer '" + std::string(s) + "'");
      v = v * 10 + (s[i] - '0');
      if (v > i128(std::numeric_limits<std::int64_t>::max()))
        throw DomainError("rational: integer out of range '" + std::string(s) + "'");
    }
    return static_cast<std::int64_t>(neg ? -v : v);
  }
};

}  // namespace mixnorm

#endif  // MIXNORM_RATIONAL_HPP
