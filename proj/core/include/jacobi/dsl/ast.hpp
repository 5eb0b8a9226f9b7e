#ifndef JACOBI_DSL_AST_HPP
#define JACOBI_DSL_AST_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jacobi::dsl {

struct Location {
    int line = 0;
    int column = 0;
};

/// Syntax and evaluation errors of a script, with the offending location.
class ScriptError : public std::runtime_error {
public:
    ScriptError(Location loc, const std::string& msg)
        : std::runtime_error("line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " +
                             msg),
          loc_(loc),
          message_(msg) {}

    Location location() const { return loc_; }
    const std::string& message() const { return message_; }

private:
    Location loc_;
    std::string message_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Keyword {
    std::string key;
    ExprPtr value;
};

struct Expr {
    enum class Kind {
        number,  // text holds the digits
        name,    // text holds the identifier
        negate,  // args[0]
        binary,  // text is one of + - * / ^
        call,    // text is the function name; args and keywords
        tuple,   // (a, b, ...)
        list,    // [a, b, ...]
        graph,   // (sharp p) or (flat w); text is sharp or flat
    };
    Kind kind = Kind::number;
    std::string text;
    std::vector<ExprPtr> args;
    std::vector<Keyword> keywords;
    Location loc;
};

/// Structural equality, ignoring locations.
bool same_expr(const Expr& a, const Expr& b);
bool same_expr(const ExprPtr& a, const ExprPtr& b);

struct Statement {
    enum class Kind { patch, declare, use, check };
    Kind kind = Kind::declare;
    /// For declare: algebroid, bialgebroid, lift, form, multivector, section,
    /// scalar, map or let.  For check: the check name.
    std::string keyword;
    std::string name;
    std::vector<std::string> coords;
    ExprPtr value;
    std::vector<ExprPtr> args;
    std::vector<Keyword> options;
    Location loc;
};

bool same_statement(const Statement& a, const Statement& b);

struct Script {
    std::vector<Statement> statements;
};

bool same_script(const Script& a, const Script& b);

}  // namespace jacobi::dsl

#endif  // JACOBI_DSL_AST_HPP
