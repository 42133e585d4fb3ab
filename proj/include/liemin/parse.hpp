#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "liemin/poly_template.hpp"
#include "liemin/polynomial.hpp"

namespace liemin {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line;
    int col;
};

// Parses an expression over the declared variables using + - * ^, rational
// literals p/q and parentheses. Throws ParseError with position info.
Poly parse_polynomial(const std::string& text, const std::vector<std::string>& var_names);

// Parses a template expression. Identifiers a1, a2, ... not shadowed by a
// declared variable are parameters. Every term must be linear and homogeneous
// in the parameters. nparams is inferred from the highest index used unless a
// larger count is forced.
PolyTemplate parse_template(const std::string& text, const std::vector<std::string>& var_names,
                            std::size_t min_params = 0);

}  // namespace liemin
