#include "olam/rational.hpp"

#include <cctype>

#include "olam/error.hpp"

namespace olam {

Rational::Rational(std::int64_t value) : value_(value) {}

Rational::Rational(Integer num, Integer den) {
  if (den == 0) throw Error(ErrorCode::MalformedRational, "zero denominator");
  value_ = Value(num, den);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational::Integer to_integer(std::string_view s) {
  Rational::Integer out = 0;
  for (char c : s) out = out * 10 + (c - '0');
  return out;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(ErrorCode::MalformedRational, "malformed rational '" + std::string(text) + "'");
  Integer d = to_integer(den);
  if (d == 0) throw Error(ErrorCode::MalformedRational, "zero denominator in '" + std::string(text) + "'");
  Integer n = to_integer(num);
  return Rational(negative ? Integer(-n) : n, d);
}

Rational::Integer Rational::numerator() const { return boost::multiprecision::numerator(value_); }
Rational::Integer Rational::denominator() const { return boost::multiprecision::denominator(value_); }

bool Rational::is_probability() const { return value_ >= 0 && value_ <= 1; }

std::string Rational::str() const { return numerator().str() + "/" + denominator().str(); }

double Rational::to_double() const { return value_.convert_to<double>(); }

Rational Rational::operator-() const { return Rational(Value(-value_)); }
Rational& Rational::operator+=(const Rational& o) { value_ += o.value_; return *this; }
Rational& Rational::operator-=(const Rational& o) { value_ -= o.value_; return *this; }
Rational& Rational::operator*=(const Rational& o) { value_ *= o.value_; return *this; }
Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw Error(ErrorCode::MalformedRational, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

}  // namespace olam
