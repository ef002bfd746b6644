#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tollbooth {

// Exact rational arithmetic for prices and budgets. Always canonical.
using Rational = mpq_class;

// Accepts "p/q", "p", with optional leading '-'. Throws ValidationError.
Rational parse_rational(std::string_view text);

// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Decimal rendering with a fixed number of places (rounded half away from zero).
std::string to_decimal(const Rational& value, int places = 6);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace tollbooth
