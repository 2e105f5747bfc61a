// Exact rational values: the only numeric type used for payoffs, probabilities
// and discount factors. No floating point anywhere in the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cgg {

// Canonical form is guaranteed by the backend: denominator > 0, gcd(|num|, den) = 1,
// comparison order matches the represented reals.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "n" when the denominator is 1, otherwise "n/d". Round-trips through parse_rational.
std::string format_rational(const Rational& r);

// Accepts "p/q" (q a positive integer), plain integers, and finite decimal strings,
// all converted exactly ("5.5" -> 11/2). Surrounding whitespace is tolerated.
// Throws Error{ParseError} on anything else, including division by zero and
// scientific notation.
Rational parse_rational(const std::string& text);

Rational rational_abs(const Rational& r);

} // namespace cgg
