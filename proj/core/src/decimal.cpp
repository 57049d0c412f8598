#include "arbiter/decimal.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace arbiter {

namespace {

using Int = boost::multiprecision::cpp_int;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  Int numerator = 0;
  Int denominator = 1;
  bool seen_point = false;
  bool digits_before = false;
  bool digits_after = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (!is_digit(c)) return std::nullopt;
    numerator = numerator * 10 + (c - '0');
    if (seen_point) {
      denominator *= 10;
      digits_after = true;
    } else {
      digits_before = true;
    }
  }
  if (!digits_before || (seen_point && !digits_after)) return std::nullopt;
  if (negative) numerator = -numerator;
  return Decimal(Rational(numerator, denominator));
}

bool Decimal::is_integer() const {
  return boost::multiprecision::denominator(value_) == 1;
}

bool Decimal::has_finite_decimal() const {
  Int d = boost::multiprecision::denominator(value_);
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

std::string Decimal::to_string() const {
  const Int num = boost::multiprecision::numerator(value_);
  const Int den = boost::multiprecision::denominator(value_);
  if (den == 1) return num.str();
  if (!has_finite_decimal()) return num.str() + "/" + den.str();

  // Scale to a power of ten: den = 2^a 5^b, multiply up to 10^max(a,b).
  Int scale = 1;
  int digits = 0;
  while (scale % den != 0) {
    scale *= 10;
    ++digits;
  }
  Int scaled = num * (scale / den);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.str();
  if (static_cast<int>(body.size()) <= digits) {
    body.insert(0, static_cast<std::size_t>(digits) - body.size() + 1, '0');
  }
  body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + body : body;
}

double Decimal::to_double() const {
  return value_.convert_to<double>();
}

Decimal Decimal::pow(unsigned long exponent) const {
  Rational result = 1;
  Rational base = value_;
  while (exponent > 0) {
    if (exponent & 1UL) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return Decimal(std::move(result));
}

std::string Numeric::to_string() const {
  if (is_exact) return exact.to_string();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", approx);
  return buf;
}

double round_significant12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return std::strtod(buf, nullptr);
}

}  // namespace arbiter
