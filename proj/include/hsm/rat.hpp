#pragma once

// Exact rational scalar. GMP keeps mpq values canonical after every
// arithmetic operation; the factories below canonicalize on construction.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hsm {

using BigInt = mpz_class;
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
Rat make_rat(const BigInt& num, const BigInt& den);

/// Parses "p/q" or "p" (optional sign, decimal digits). Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rat parse_rat(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rat& value);

double to_double(const Rat& value);

/// Exact: every finite double is a dyadic rational.
Rat from_double(double value);

inline int sign(const Rat& value) { return sgn(value); }

Rat rat_pow(const Rat& base, unsigned long exponent);

}  // namespace hsm
