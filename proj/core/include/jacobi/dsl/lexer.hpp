#ifndef JACOBI_DSL_LEXER_HPP
#define JACOBI_DSL_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "jacobi/dsl/ast.hpp"

namespace jacobi::dsl {

struct Token {
    enum class Kind { name, number, symbol, newline, end };
    Kind kind = Kind::end;
    std::string text;
    Location loc;
    /// Whitespace or a comment precedes the token.
    bool spaced = false;
};

/// Splits a script into tokens.  `#` starts a comment; newlines end a
/// statement except inside open parentheses or brackets, so long literals
/// may span lines.  A call needs its '(' directly after the name, so
/// `f (x)` is two primaries.
std::vector<Token> tokenize(std::string_view text);

}  // namespace jacobi::dsl

#endif  // JACOBI_DSL_LEXER_HPP
