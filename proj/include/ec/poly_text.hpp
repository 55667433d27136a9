#pragma once

#include <string>

#include "ec/ratfunc.hpp"

namespace ec::field {

// Parses expressions over +, -, *, /, ^, parentheses, integer/rational
// literals and variables X1, X2, ... Throws BadInput on malformed input.
RatFunc parseRatFunc(const std::string& text);

// Same, but requires the result to be a polynomial (denominator 1).
MPoly parsePoly(const std::string& text);

} // namespace ec::field
