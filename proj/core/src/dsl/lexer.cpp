#include "jacobi/dsl/lexer.hpp"

#include <cctype>

namespace jacobi::dsl {

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::vector<Location> open;
    std::size_t i = 0;
    bool spaced = false;
    auto push = [&](Token::Kind k, std::string s, Location loc) {
        out.push_back(Token{k, std::move(s), loc, spaced});
        spaced = false;
    };
    while (i < text.size()) {
        const char c = text[i];
        const Location loc{line, col};
        if (c == '\n') {
            if (open.empty() && !out.empty() && out.back().kind != Token::Kind::newline) {
                push(Token::Kind::newline, "\n", loc);
            }
            ++i;
            ++line;
            col = 1;
            spaced = true;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            spaced = true;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
            spaced = true;
            continue;
        }
        if (name_start(c)) {
            std::size_t j = i;
            while (j < text.size() && name_char(text[j])) {
                ++j;
            }
            push(Token::Kind::name, std::string(text.substr(i, j - i)), loc);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) != 0) {
                ++j;
            }
            push(Token::Kind::number, std::string(text.substr(i, j - i)), loc);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        switch (c) {
            case '(':
            case '[':
                open.push_back(loc);
                break;
            case ')':
            case ']':
                if (open.empty()) {
                    throw ScriptError(loc, std::string("unbalanced '") + c + "'");
                }
                open.pop_back();
                break;
            case ',':
            case '=':
            case '+':
            case '-':
            case '*':
            case '/':
            case '^':
                break;
            default:
                throw ScriptError(loc, std::string("unexpected character '") + c + "'");
        }
        push(Token::Kind::symbol, std::string(1, c), loc);
        ++i;
        ++col;
    }
    if (!open.empty()) {
        throw ScriptError(open.back(), "unclosed parenthesis");
    }
    if (!out.empty() && out.back().kind != Token::Kind::newline) {
        push(Token::Kind::newline, "\n", Location{line, col});
    }
    push(Token::Kind::end, "", Location{line, col});
    return out;
}

}  // namespace jacobi::dsl
