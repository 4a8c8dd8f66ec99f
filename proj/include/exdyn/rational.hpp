#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace exdyn {

/// Exact arbitrary-precision fraction, always in lowest terms with a
/// positive denominator once constructed through the helpers below.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long numerator, long denominator = 1);

/// Parses "7", "-3/2" or "1.25" losslessly. Throws ParameterError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

/// (x)_m = x (x+1) ... (x+m-1); (x)_0 = 1.
Rational rising_factorial(const Rational& x, long m);

/// n (n-1) ... (n-k+1); zero when k > n.
Integer falling_factorial(long n, long k);

Integer factorial(long n);

/// C(n, k), zero outside 0 <= k <= n.
Integer binomial(long n, long k);

Rational pow(const Rational& base, long exponent);

}  // namespace exdyn
