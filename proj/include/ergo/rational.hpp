#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ergo {

// Exact rational scalar used everywhere on the optimization side.
using Rational = mpq_class;

// Accepts "p", "p/q", and finite decimals such as "-0.125". Whitespace around
// the literal is ignored. Anything else raises ErrorKind::kParse.
Rational parse_rational(std::string_view text);

// Canonical form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

// Exact q-th root when both numerator and denominator are perfect powers.
bool exact_root(const Rational& value, unsigned degree, Rational& out);

}  // namespace ergo
