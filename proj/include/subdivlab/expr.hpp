#pragma once

#include <map>
#include <string>

#include "subdivlab/rational.hpp"

namespace subdivlab {

using ParamMap = std::map<std::string, GaussRat>;

// Evaluate a rational expression over the Gaussian rationals.  Supported:
// integers, 'i', parameter names, + - * / ^ (integer exponent, negative
// allowed on nonzero values), parentheses, unary minus.  Unknown names and
// malformed input raise ParseError; division by zero raises SingularSystem.
GaussRat eval_expr(const std::string& text, const ParamMap& params = {});

}  // namespace subdivlab
