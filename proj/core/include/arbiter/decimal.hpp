#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace arbiter {

/// Exact decimal number. Literals such as `0.7` or `1.5` are held as exact
/// rationals so that boundary comparisons like `O =< 0.7*E` are decided
/// without rounding.
class Decimal {
 public:
  using Rational = boost::multiprecision::cpp_rational;

  Decimal() = default;
  Decimal(long long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Decimal(Rational r) : value_(std::move(r)) {}

  /// Accepts `-?[0-9]+(\.[0-9]+)?`. Returns nullopt on anything else.
  static std::optional<Decimal> parse(std::string_view text);

  /// Shortest exact decimal rendering ("0.7", "100000", "-2.25"). Values that
  /// have no finite decimal expansion are rendered as "n/d".
  std::string to_string() const;

  bool is_integer() const;
  bool has_finite_decimal() const;
  double to_double() const;
  const Rational& rational() const noexcept { return value_; }

  friend Decimal operator+(const Decimal& a, const Decimal& b) { return Decimal(a.value_ + b.value_); }
  friend Decimal operator-(const Decimal& a, const Decimal& b) { return Decimal(a.value_ - b.value_); }
  friend Decimal operator*(const Decimal& a, const Decimal& b) { return Decimal(a.value_ * b.value_); }
  // Caller guarantees b != 0.
  friend Decimal operator/(const Decimal& a, const Decimal& b) { return Decimal(a.value_ / b.value_); }
  Decimal operator-() const { return Decimal(Rational(-value_)); }

  Decimal pow(unsigned long exponent) const;

  friend bool operator==(const Decimal& a, const Decimal& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_;
};

/// Result of evaluating an arithmetic expression: exact while every step is
/// exact, floating point once a non-integer or negative exponent is involved.
struct Numeric {
  Decimal exact;
  double approx = 0.0;
  bool is_exact = true;

  static Numeric of(Decimal d) {
    const double a = d.to_double();
    return Numeric{std::move(d), a, true};
  }
  static Numeric inexact(double v) { return Numeric{Decimal{}, v, false}; }

  std::string to_string() const;
};

/// Round to 12 significant decimal digits.
double round_significant12(double v);

}  // namespace arbiter
