#pragma once

// Exact rationals (GMP) and the small helpers the rest of the library needs.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace itm {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", "-p/q" or a plain decimal such as "0.6180339887".
/// Decimals are converted exactly (0.25 -> 1/4). Throws ParseError.
Rational parse_rational(std::string_view text);

/// Lowest-terms "p/q" form; integers print without a denominator.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);

/// value - floor(value), always in [0,1).
Rational frac(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace itm
