#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace propint {

using Integer = mpz_class;
/// GMP keeps mpq_class values canonical (lowest terms, positive denominator)
/// after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// n/d in lowest terms. The two-argument mpq_class constructor skips this.
inline Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace propint
