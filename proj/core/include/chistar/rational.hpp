#pragma once

// Recognition of exact rationals from certified enclosures.

#include <optional>
#include <string>

#include "chistar/interval.hpp"

namespace chistar {

/// Simplest rational (smallest denominator, then smallest |numerator|) in the
/// closed interval [lo, hi]. Stern-Brocot descent via continued fractions.
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

/// Simplest rational inside `x` whose denominator is at most `max_den`, if any.
std::optional<Rational> reconstruct_rational(const Interval& x, const Integer& max_den);

/// "num/den" or "num" when den == 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// Floor of log2 of the reciprocal width, i.e. the number of absolute bits
/// known; negative when the interval is wider than 1.
long accurate_bits(const Interval& x);

}  // namespace chistar
