#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace polyescape {

using Integer = mpz_class;
/// Canonical exact rational. GMP keeps the denominator positive and the
/// fraction reduced after every operation we perform (we canonicalize on
/// parse).
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument on
/// anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Decimal rendering with `digits` significant fractional digits (rounded
/// toward zero).
std::string to_decimal(const Rational& value, int digits);

double to_double(const Rational& value);
Rational from_double(double value);

Rational abs(const Rational& value);
int sign(const Rational& value);

/// Smallest integer >= value / largest integer <= value.
Integer ceil(const Rational& value);
Integer floor(const Rational& value);

/// Rational r with r >= sqrt(value) and r - sqrt(value) <= 2^-bits.
Rational sqrt_upper(const Rational& value, unsigned bits = 64);
/// Rational r with 0 <= r < sqrt(value) (strict) for value > 0.
Rational sqrt_lower_strict(const Rational& value, unsigned bits = 64);

/// Nearest dyadic k/2^bits (ties toward zero). Keeps numbers small during
/// iterative refinement.
Rational round_dyadic(const Rational& value, unsigned bits);

Rational pow(const Rational& base, unsigned exponent);
Integer factorial(unsigned n);

}  // namespace polyescape
