#ifndef JACOBI_DSL_PARSER_HPP
#define JACOBI_DSL_PARSER_HPP

#include <string_view>

#include "jacobi/dsl/ast.hpp"

namespace jacobi::dsl {

/// Parses a whole script; throws ScriptError at the first syntax error.
Script parse(std::string_view text);

/// Parses a single expression (used by tests and by witness re-evaluation).
ExprPtr parse_expression(std::string_view text);

}  // namespace jacobi::dsl

#endif  // JACOBI_DSL_PARSER_HPP
