#include "mmspace/rational.hpp"

#include <cctype>
#include <string>

#include "mmspace/errors.hpp"

namespace mmspace {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw ParseError("not a decimal or fraction literal: '" + std::string(text) + "'");
}

Rational parse_fraction(std::string_view text, std::size_t slash) {
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!all_digits(num) || !all_digits(den)) bad_literal(text);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(negative ? mpz_class(-n) : n, d);
  q.canonicalize();
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_literal(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return parse_fraction(text, slash);
  }

  std::string_view rest = text;
  bool negative = false;
  if (rest.front() == '-' || rest.front() == '+') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = rest.substr(e + 1);
    rest = rest.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad_literal(text);
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }

  std::string_view int_part = rest;
  std::string_view frac_part;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    int_part = rest.substr(0, dot);
    frac_part = rest.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad_literal(text);
  if (!int_part.empty() && !all_digits(int_part)) bad_literal(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad_literal(text);

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  exponent -= static_cast<long>(frac_part.size());

  Rational q;
  if (exponent >= 0) {
    q = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
  } else {
    q = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    q.canonicalize();
  }
  return q;
}

std::string to_exact_string(const Rational& q) {
  mpz_class den = q.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (den != 1) return q.get_str();
  if (q.get_den() == 1) return q.get_num().get_str();

  unsigned long places = std::max(twos, fives);
  mpz_class scaled = q.get_num() * pow10(places) / q.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

std::string to_decimal_string(const Rational& q, int significant_digits) {
  if (significant_digits < 1) significant_digits = 1;
  if (q == 0) return "0";
  Rational v = q < 0 ? Rational(-q) : q;

  // Find e with 10^e <= v < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 10));
  auto power = [](long k) {
    return k >= 0 ? Rational(pow10(static_cast<unsigned long>(k)))
                  : Rational(mpz_class(1), pow10(static_cast<unsigned long>(-k)));
  };
  while (power(e) > v) --e;
  while (power(e + 1) <= v) ++e;

  const long n = significant_digits;
  Rational scaled = v * power(n - 1 - e);
  mpz_class rounded = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  if (rounded == pow10(static_cast<unsigned long>(n))) {
    rounded /= 10;
    ++e;
  }
  std::string digits = rounded.get_str();

  std::string out;
  if (e >= n - 1) {
    out = digits + std::string(static_cast<std::size_t>(e - (n - 1)), '0');
  } else if (e >= 0) {
    out = digits.substr(0, static_cast<std::size_t>(e + 1)) + "." +
          digits.substr(static_cast<std::size_t>(e + 1));
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return q < 0 ? "-" + out : out;
}

const Rational& ExtendedRational::value() const {
  if (!finite_) throw InvalidInput("value() requested on +infinity");
  return value_;
}

std::string to_string(const ExtendedRational& q, const NumberFormat& fmt) {
  return q.is_infinite() ? std::string("inf") : fmt(q.value());
}

}  // namespace mmspace
