#include "jacobi/dsl/printer.hpp"

namespace jacobi::dsl {

namespace {

// Binding strength: sum 1, product 2, negation 3, wedge/power 4, primary 5.
int level(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::binary:
            if (e.text == "+" || e.text == "-") {
                return 1;
            }
            if (e.text == "*" || e.text == "/") {
                return 2;
            }
            return 4;
        case Expr::Kind::negate:
            return 3;
        default:
            return 5;
    }
}

std::string at_level(const Expr& e, int min_level) {
    std::string s = print(e);
    return level(e) < min_level ? "(" + s + ")" : s;
}

std::string joined(const std::vector<ExprPtr>& args, const std::vector<Keyword>& keywords) {
    std::string out;
    for (const auto& a : args) {
        if (!out.empty()) {
            out += ", ";
        }
        out += print(*a);
    }
    for (const auto& k : keywords) {
        if (!out.empty()) {
            out += ", ";
        }
        out += k.key + "=" + print(*k.value);
    }
    return out;
}

}  // namespace

std::string print(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::number:
        case Expr::Kind::name:
            return e.text;
        case Expr::Kind::negate:
            return "-" + at_level(*e.args[0], 3);
        case Expr::Kind::binary: {
            const int l = level(e);
            if (e.text == "^") {
                return at_level(*e.args[0], 5) + "^" + at_level(*e.args[1], 4);
            }
            const std::string sep = " " + e.text + " ";
            return at_level(*e.args[0], l) + sep + at_level(*e.args[1], l + 1);
        }
        case Expr::Kind::call:
            return e.text + "(" + joined(e.args, e.keywords) + ")";
        case Expr::Kind::tuple:
            return "(" + joined(e.args, {}) + ")";
        case Expr::Kind::list:
            return "[" + joined(e.args, {}) + "]";
        case Expr::Kind::graph:
            return "(" + e.text + " " + at_level(*e.args[0], 5) + ")";
    }
    return {};
}

std::string print(const Statement& s) {
    switch (s.kind) {
        case Statement::Kind::patch: {
            std::string out = "patch " + s.name + " = (";
            for (std::size_t i = 0; i < s.coords.size(); ++i) {
                out += (i == 0 ? "" : ", ") + s.coords[i];
            }
            return out + ")";
        }
        case Statement::Kind::use:
            return "use " + s.name;
        case Statement::Kind::declare:
            return s.keyword + " " + s.name + " = " + print(*s.value);
        case Statement::Kind::check: {
            std::string out = "check " + s.keyword;
            for (const auto& a : s.args) {
                out += " " + at_level(*a, 5);
            }
            for (const auto& k : s.options) {
                out += " " + k.key + "=" + print(*k.value);
            }
            return out;
        }
    }
    return {};
}

std::string print(const Script& s) {
    std::string out;
    for (const auto& st : s.statements) {
        out += print(st) + "\n";
    }
    return out;
}

}  // namespace jacobi::dsl
