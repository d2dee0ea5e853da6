#pragma once

#include <stdexcept>
#include <string>

#include "cubei/function_spec.hpp"

namespace cubei {

// Malformed spec files or expressions; the message names the JSON path or
// the offending position.
struct spec_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a closed arithmetic expression over x1..xn with +, -, *, /, ^,
// min, max, sqrt, exp, log and builds a black-box spec from it. The
// variable set found in the expression becomes the dependence mask;
// smoothness cannot be inferred and is supplied by the caller.
FunctionSpec parse_expression(const std::string& text, int n, bool smooth);

}  // namespace cubei
