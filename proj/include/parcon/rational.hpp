#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace parcon {

// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);

// Exact k-th root of q, if q is a perfect k-th power in the rationals.
std::optional<Rational> exact_root(const Rational& q, unsigned long k);

// q^n for integer n (n < 0 requires q != 0).
Rational pow(const Rational& q, long n);

}  // namespace parcon
