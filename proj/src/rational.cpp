#include "exdyn/rational.hpp"

#include <cctype>

#include "exdyn/errors.hpp"

namespace exdyn {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw ParameterError("zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (!all_digits(s)) throw ParameterError("malformed number '" + std::string(whole) + "'");
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParameterError("empty number");

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ParameterError("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw ParameterError("malformed number '" + std::string(text) + "'");
    Integer ip = int_part.empty() ? Integer(0) : parse_integer(int_part, text);
    Integer fp = frac_part.empty() ? Integer(0) : parse_integer(frac_part, text);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    value = Rational(ip * scale + fp, scale);
  } else {
    value = Rational(parse_integer(s, text));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational rising_factorial(const Rational& x, long m) {
  Rational r(1);
  for (long i = 0; i < m; ++i) r *= x + i;
  return r;
}

Integer falling_factorial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r(1);
  for (long i = 0; i < k; ++i) r *= n - i;
  return r;
}

Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational pow(const Rational& base, long exponent) {
  Rational r(1);
  Rational b = base;
  if (exponent < 0) {
    if (b == 0) throw ParameterError("zero to a negative power");
    b = 1 / b;
    exponent = -exponent;
  }
  for (; exponent > 0; exponent >>= 1) {
    if (exponent & 1) r *= b;
    b *= b;
  }
  return r;
}

}  // namespace exdyn
