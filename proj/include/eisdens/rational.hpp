#pragma once

// Exact integers and rationals (GMP) plus the text forms used in machine
// output: "num/den" always, never a float.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace eisdens {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt pow(const BigInt& base, unsigned long exp);
Rational pow(const Rational& base, unsigned long exp);

// "7/8", "0/1", "1/1".
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);

// Accepts "p/q", an integer, a decimal with optional exponent ("1e-12",
// "0.25"), or a power of two "2^-40". The value is converted exactly.
Rational parse_rational(std::string_view text);

// Round-to-nearest (ties to even) rendering with the given number of
// significant digits, e.g. "1.25000000000000e-01".
std::string to_decimal(const Rational& r, int significant = 15);

double to_double(const Rational& r);

}  // namespace eisdens
