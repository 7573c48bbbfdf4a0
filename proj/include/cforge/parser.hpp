#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cforge/scalar.hpp"

namespace cforge {

// Syntax or evaluation error with the 0-based offset of the offending token.
struct parse_error : std::runtime_error {
    std::size_t position;

    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

// Recursive-descent parser for the expression grammar: the thirteen
// generator identifiers plus R and i, integer literals, + - * / ^ with
// conventional precedence, parentheses.  Rationals a/b are ordinary
// division; evaluation is exact, so "1/0" raises here.
ScalarExpr parse_expr(std::string_view text);

// Inverse of parse_expr up to normalization: parse_expr(print_expr(e)) == e.
std::string print_expr(const ScalarExpr& e);

}  // namespace cforge
