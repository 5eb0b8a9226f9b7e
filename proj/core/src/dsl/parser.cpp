#include "jacobi/dsl/parser.hpp"

#include <set>

#include "jacobi/dsl/lexer.hpp"

namespace jacobi::dsl {

namespace {

const std::set<std::string> kDeclarations = {"algebroid", "bialgebroid", "lift", "form",
                                             "multivector", "section", "scalar", "map", "let"};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Script script() {
        Script s;
        while (peek().kind != Token::Kind::end) {
            if (peek().kind == Token::Kind::newline) {
                advance();
                continue;
            }
            s.statements.push_back(statement());
        }
        return s;
    }

    ExprPtr lone_expression() {
        ExprPtr e = expression();
        if (peek().kind == Token::Kind::newline) {
            advance();
        }
        if (peek().kind != Token::Kind::end) {
            fail(peek(), "unexpected '" + peek().text + "' after expression");
        }
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    bool at_symbol(const char* s, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Token::Kind::symbol && t.text == s;
    }

    [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ScriptError(t.loc, msg); }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Token::Kind::newline:
                return "end of line";
            case Token::Kind::end:
                return "end of input";
            default:
                return "'" + t.text + "'";
        }
    }

    void expect_symbol(const char* s) {
        if (!at_symbol(s)) {
            fail(peek(), std::string("expected '") + s + "' but found " + describe(peek()));
        }
        advance();
    }

    std::string expect_name(const char* what) {
        if (peek().kind != Token::Kind::name) {
            fail(peek(), std::string("expected ") + what + " but found " + describe(peek()));
        }
        return advance().text;
    }

    void end_of_statement() {
        if (peek().kind == Token::Kind::newline) {
            advance();
            return;
        }
        if (peek().kind != Token::Kind::end) {
            fail(peek(), "unexpected " + describe(peek()) + " at end of statement");
        }
    }

    Statement statement() {
        const Token& head = peek();
        if (head.kind != Token::Kind::name) {
            fail(head, "a statement must start with a keyword, found " + describe(head));
        }
        Statement s;
        s.loc = head.loc;
        const std::string kw = advance().text;
        if (kw == "patch") {
            s.kind = Statement::Kind::patch;
            s.keyword = kw;
            s.name = expect_name("a patch name");
            expect_symbol("=");
            expect_symbol("(");
            if (!at_symbol(")")) {
                s.coords.push_back(expect_name("a coordinate name"));
                while (at_symbol(",")) {
                    advance();
                    s.coords.push_back(expect_name("a coordinate name"));
                }
            }
            expect_symbol(")");
        } else if (kw == "use") {
            s.kind = Statement::Kind::use;
            s.keyword = kw;
            s.name = expect_name("an algebroid name");
        } else if (kw == "check") {
            s.kind = Statement::Kind::check;
            s.keyword = expect_name("a check name");
            while (peek().kind != Token::Kind::newline && peek().kind != Token::Kind::end) {
                if (peek().kind == Token::Kind::name && at_symbol("=", 1)) {
                    Keyword k;
                    k.key = advance().text;
                    advance();
                    k.value = expression();
                    s.options.push_back(std::move(k));
                } else {
                    if (!s.options.empty()) {
                        fail(peek(), "positional argument after key=value option");
                    }
                    s.args.push_back(primary());
                }
            }
        } else if (kDeclarations.contains(kw)) {
            s.kind = Statement::Kind::declare;
            s.keyword = kw;
            s.name = expect_name("a name");
            expect_symbol("=");
            s.value = expression();
        } else {
            fail(head, "unknown statement '" + kw + "'");
        }
        end_of_statement();
        return s;
    }

    static ExprPtr make(Expr::Kind k, std::string text, std::vector<ExprPtr> args, Location loc) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->text = std::move(text);
        e->args = std::move(args);
        e->loc = loc;
        return e;
    }

    ExprPtr expression() {
        ExprPtr left = term();
        while (at_symbol("+") || at_symbol("-")) {
            const Token& op = advance();
            ExprPtr right = term();
            left = make(Expr::Kind::binary, op.text, {left, right}, op.loc);
        }
        return left;
    }

    ExprPtr term() {
        ExprPtr left = unary();
        while (at_symbol("*") || at_symbol("/")) {
            const Token& op = advance();
            ExprPtr right = unary();
            left = make(Expr::Kind::binary, op.text, {left, right}, op.loc);
        }
        return left;
    }

    ExprPtr unary() {
        if (at_symbol("-")) {
            const Token& op = advance();
            return make(Expr::Kind::negate, "-", {unary()}, op.loc);
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (at_symbol("^")) {
            const Token& op = advance();
            ExprPtr exponent = power();
            return make(Expr::Kind::binary, "^", {base, exponent}, op.loc);
        }
        return base;
    }

    // Comma-separated items up to `close`, with optional key=value entries
    // when `keywords` is non-null.
    std::vector<ExprPtr> items(const char* close, std::vector<Keyword>* keywords) {
        std::vector<ExprPtr> out;
        if (at_symbol(close)) {
            advance();
            return out;
        }
        while (true) {
            if (keywords != nullptr && peek().kind == Token::Kind::name && at_symbol("=", 1)) {
                Keyword k;
                k.key = advance().text;
                advance();
                k.value = expression();
                keywords->push_back(std::move(k));
            } else {
                if (keywords != nullptr && !keywords->empty()) {
                    fail(peek(), "positional argument after keyword argument");
                }
                out.push_back(expression());
            }
            if (at_symbol(",")) {
                advance();
                continue;
            }
            expect_symbol(close);
            return out;
        }
    }

    ExprPtr primary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::number) {
            advance();
            return make(Expr::Kind::number, t.text, {}, t.loc);
        }
        if (t.kind == Token::Kind::name) {
            advance();
            if (at_symbol("(") && !peek().spaced) {
                advance();
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::call;
                e->text = t.text;
                e->loc = t.loc;
                e->args = items(")", &e->keywords);
                return e;
            }
            return make(Expr::Kind::name, t.text, {}, t.loc);
        }
        if (at_symbol("(")) {
            advance();
            if (peek().kind == Token::Kind::name && (peek().text == "sharp" || peek().text == "flat") &&
                !at_symbol("(", 1) && !at_symbol(",", 1) && !at_symbol(")", 1) && peek(1).kind != Token::Kind::symbol) {
                const Token& kind = advance();
                ExprPtr inner = primary();
                expect_symbol(")");
                return make(Expr::Kind::graph, kind.text, {inner}, t.loc);
            }
            std::vector<ExprPtr> parts = items(")", nullptr);
            if (parts.empty()) {
                fail(t, "empty parentheses");
            }
            if (parts.size() == 1) {
                return parts.front();
            }
            return make(Expr::Kind::tuple, "", std::move(parts), t.loc);
        }
        if (at_symbol("[")) {
            advance();
            return make(Expr::Kind::list, "", items("]", nullptr), t.loc);
        }
        fail(t, "expected an expression but found " + describe(t));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

bool same_expr(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.text != b.text || a.args.size() != b.args.size() ||
        a.keywords.size() != b.keywords.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!same_expr(a.args[i], b.args[i])) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.keywords.size(); ++i) {
        if (a.keywords[i].key != b.keywords[i].key || !same_expr(a.keywords[i].value, b.keywords[i].value)) {
            return false;
        }
    }
    return true;
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) {
        return !a && !b;
    }
    return same_expr(*a, *b);
}

bool same_statement(const Statement& a, const Statement& b) {
    if (a.kind != b.kind || a.keyword != b.keyword || a.name != b.name || a.coords != b.coords ||
        !same_expr(a.value, b.value) || a.args.size() != b.args.size() || a.options.size() != b.options.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!same_expr(a.args[i], b.args[i])) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.options.size(); ++i) {
        if (a.options[i].key != b.options[i].key || !same_expr(a.options[i].value, b.options[i].value)) {
            return false;
        }
    }
    return true;
}

bool same_script(const Script& a, const Script& b) {
    if (a.statements.size() != b.statements.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.statements.size(); ++i) {
        if (!same_statement(a.statements[i], b.statements[i])) {
            return false;
        }
    }
    return true;
}

Script parse(std::string_view text) { return Parser(tokenize(text)).script(); }

ExprPtr parse_expression(std::string_view text) { return Parser(tokenize(text)).lone_expression(); }

}  // namespace jacobi::dsl
