#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace logalg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a decimal ("-12.5", "3e-4") into an exact
/// rational. Throws InputError on malformed text or a zero denominator.
Rational parseRational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string toString(const Rational& r);

inline bool isInteger(const Rational& r) { return denominator(r) == 1; }

/// Nearest double; may be +/-inf or 0 for values outside double range.
double toDouble(const Rational& r);

/// Natural log of a positive rational, accurate for values far outside
/// double range.
double logOf(const Rational& r);
double logOf(const BigInt& x);

/// r^e for any integer e (r must be nonzero when e < 0).
Rational ipow(const Rational& r, std::int64_t e);

/// Exact integer value; caller guarantees isInteger(r) and that it fits.
std::int64_t toInt64(const Rational& r);

}  // namespace logalg
