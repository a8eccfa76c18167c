#pragma once

#include <string>

#include "lvc/ratfunc.hpp"

namespace lvc {

// Parse an arithmetic expression over named variables into a rational function.
// Grammar: + - * / ^ (also **), parentheses, integer/decimal/p-q literals,
// identifiers.  The UTF-8 Greek letters λ, μ, ω are accepted as aliases for
// "lambda", "mu", "omega".  Throws invalid_input with position on bad input.
RatFunc parse_ratfunc(const std::string& text);

// Same, but requires the result to have constant denominator (folded into the
// coefficients); throws invalid_input otherwise.
MPoly parse_poly(const std::string& text);

} // namespace lvc
