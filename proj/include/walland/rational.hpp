#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace walland {

/// Arbitrary-precision rational. Every predicate in the engine is evaluated
/// on these; floating point appears only in display fields.
using Rational = mpq_class;

/// n/d in lowest terms. mpq_class(n, d) alone does not reduce.
inline Rational frac(long n, long d) {
  Rational x(n, d);
  x.canonicalize();
  return x;
}

/// Parses "p", "-p" or "p/q" (q != 0). Throws SchemaError on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string format_rational(const Rational &value);

int sign(const Rational &value);

bool is_integer(const Rational &value);

/// True when value == r*r for some rational r.
bool is_rational_square(const Rational &value);

/// Exact square root of a rational square. Precondition: is_rational_square.
Rational rational_sqrt(const Rational &value);

/// floor/ceil to an integer-valued rational.
Rational floor(const Rational &value);
Rational ceil(const Rational &value);

/// Conversion for display and float harnesses only.
long double to_long_double(const Rational &value);

std::vector<Rational> parse_rational_list(std::string_view text, char sep = ',');

}  // namespace walland
