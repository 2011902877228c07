#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cstar {

/// Arbitrary-precision rational in lowest terms (GMP keeps mpq canonical).
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" with q > 0; integers are written "p/1".
std::string to_string(const Rational& q);

/// Accepts "p/q", "p" or "-p/q". Throws SchemaError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

Rational abs(const Rational& q);

/// Smallest integer >= q.
Integer ceil(const Rational& q);

/// 2^e as an exact rational (e may be negative).
Rational pow2(long e);

/// q^e for e >= 0 by repeated squaring.
Rational pow(const Rational& q, unsigned long e);

/// Exact rational square root when q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

}  // namespace cstar
