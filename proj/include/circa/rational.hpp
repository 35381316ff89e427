#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace circa {

using Int = boost::multiprecision::mpz_int;

// Arbitrary-precision rational scalar, kept canonical by GMP: positive
// denominator, gcd(|num|, den) = 1 after every arithmetic operation.
// Construction from separate numerator/denominator must go through rat()
// below; the raw two-argument constructor does not normalize signs.
using Rational = boost::multiprecision::mpq_rational;

/// Canonical rational from numerator and denominator. Throws on zero denominator.
Rational rat(const Int& num, const Int& den);
Rational rat(long num, long den = 1);

/// Parses "p/q" or "p" (optional leading '-'), canonicalizing the result.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p/q" with q > 0 and gcd(p,q) = 1, or bare "p".
std::string to_string(const Rational& value);

inline int sign_of(const Rational& value) { return value.sign(); }

inline bool is_integer(const Rational& value) { return denominator(value) == 1; }

}  // namespace circa
