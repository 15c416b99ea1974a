#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qd {

/// Exact arbitrary-precision rational; all endpoints in the library use it.
using Rational = mpq_class;
using Integer = mpz_class;

/// "num/den" with den > 0, always including the denominator ("3/1").
std::string to_fraction_string(const Rational& q);

/// Accepts "n", "n/d", decimals ("-0.125") and an optional exponent ("1e-3").
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// 2^e for any integer e.
Rational pow2(long e);

/// Largest k / 2^bits not exceeding x.
Rational floor_dyadic(const Rational& x, unsigned long bits);
/// Smallest k / 2^bits not below x.
Rational ceil_dyadic(const Rational& x, unsigned long bits);

/// floor(x * 2^bits) as an integer.
Integer floor_scaled(const Rational& x, unsigned long bits);
Integer ceil_scaled(const Rational& x, unsigned long bits);

/// Smallest e with 2^e >= x, for x > 0.
long ceil_log2(const Rational& x);

Rational abs(const Rational& q);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

} // namespace qd
