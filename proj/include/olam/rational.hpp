#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace olam {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Every probability in the library flows through this type; nothing on a
/// probability path is ever converted to floating point except for display.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(Integer num, Integer den);

  /// Accepts `p/q` or a bare integer `p`. Throws olam::Error(MalformedRational).
  static Rational parse(std::string_view text);

  Integer numerator() const;
  Integer denominator() const;

  bool is_zero() const { return value_ == 0; }
  /// 0 <= r <= 1
  bool is_probability() const;

  /// Always rendered as `p/q`, including integers (`1/1`).
  std::string str() const;
  double to_double() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  using Value = boost::multiprecision::cpp_rational;
  explicit Rational(Value v) : value_(std::move(v)) {}
  Value value_{0};
};

Rational abs(const Rational& r);

}  // namespace olam
