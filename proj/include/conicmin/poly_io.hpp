// Textual polynomial syntax shared by every file format: integer
// literals, variable names, `+ - * ^` and parentheses, e.g.
// `18*g^2 - 12*g*h - 12*h^2 - 14`.  Whitespace is insignificant.
#pragma once

#include "conicmin/multipoly.hpp"

namespace conicmin {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse over a fixed variable list; unknown names are errors.
MultiPoly parse_poly(const std::string& text, const VarList& vars);

// MultiPoly::str() is the canonical printer; this is its inverse.

}  // namespace conicmin
