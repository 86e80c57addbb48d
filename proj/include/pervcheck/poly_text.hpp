#pragma once

#include "pervcheck/laurent.hpp"

#include <string>
#include <string_view>

namespace pervcheck {

/// Parses a signed sum of terms `c * t1^e1 * ... * tN^eN` (rational c,
/// integer possibly negative exponents, whitespace-insensitive). Throws
/// InputError with the offending position on malformed text.
LaurentPoly parse_poly(const RingContext& ctx, std::string_view text);

/// Canonical text: terms in descending lexicographic exponent order.
/// parse_poly(format_poly(p)) == p.
std::string format_poly(const LaurentPoly& p);

} // namespace pervcheck
