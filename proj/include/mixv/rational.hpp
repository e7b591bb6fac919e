#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace mixv {

/// Exact rational number. Arithmetic keeps values in lowest terms.
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;

/// Parses "p/q" (or a plain integer "p") into a canonical rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

/// Lowest-terms "p/q" form; the denominator is always printed ("3" -> "3/1").
std::string rational_str(const Rational& value);

}  // namespace mixv
