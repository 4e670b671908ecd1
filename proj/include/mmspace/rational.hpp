#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace mmspace {

/// All solver arithmetic runs on exact GMP rationals.
using Rational = mpq_class;

/// Parses a decimal literal (`-1.25`, `3e-2`, `7`) or a fraction (`1/3`) exactly.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Lossless rendering: a terminating decimal when the denominator is of the
/// form 2^a 5^b, otherwise `p/q`. parse_rational(to_exact_string(q)) == q.
std::string to_exact_string(const Rational& q);

/// Rounds to `significant_digits` significant digits (half away from zero)
/// and strips trailing zeros. Fixed notation throughout.
std::string to_decimal_string(const Rational& q, int significant_digits);

inline Rational abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return d < 0 ? Rational(-d) : d;
}

struct NumberFormat {
  bool exact = false;
  int precision = 12;

  std::string operator()(const Rational& q) const {
    return exact ? to_exact_string(q) : to_decimal_string(q, precision);
  }
};

/// The non-negative extended reals restricted to rationals plus +infinity.
/// Used where a minimum over an empty set is meaningful (separation of a point).
class ExtendedRational {
 public:
  ExtendedRational() = default;  // +infinity
  explicit ExtendedRational(Rational value) : finite_(true), value_(std::move(value)) {}

  static ExtendedRational infinity() { return {}; }

  bool is_infinite() const noexcept { return !finite_; }
  const Rational& value() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend bool operator<(const ExtendedRational& a, const Rational& b) {
    return a.finite_ && a.value_ < b;
  }
  friend bool operator<(const Rational& a, const ExtendedRational& b) {
    return !b.finite_ || a < b.value_;
  }
  friend bool operator<=(const ExtendedRational& a, const Rational& b) { return !(b < a); }
  friend bool operator<=(const Rational& a, const ExtendedRational& b) { return !(b < a); }

 private:
  bool finite_ = false;
  Rational value_;
};

std::string to_string(const ExtendedRational& q, const NumberFormat& fmt);

}  // namespace mmspace
