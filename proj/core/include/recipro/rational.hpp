#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace recipro {

/// Exact arbitrary-precision rational. Always kept canonical.
using Rational = mpq_class;

/// Parses "num/den", an integer, or a decimal such as "-1.25e-3" exactly.
/// Throws ValidationError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms; the two-argument mpq_class constructor does not
/// reduce. Throws ValidationError for den = 0.
Rational ratio(long num, long den);

/// Exact rational value of a binary double (no rounding).
Rational rational_from_double(double value);

/// Shortest decimal that round-trips to `value`, then read exactly. This is
/// the rational a user most likely meant when typing the double.
Rational rational_from_decimal_double(double value);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace recipro
