#ifndef JACOBI_DSL_PRINTER_HPP
#define JACOBI_DSL_PRINTER_HPP

#include <string>

#include "jacobi/dsl/ast.hpp"

namespace jacobi::dsl {

/// Canonical source text; parse(print(s)) is structurally equal to s.
std::string print(const Expr& e);
std::string print(const Statement& s);
std::string print(const Script& s);

}  // namespace jacobi::dsl

#endif  // JACOBI_DSL_PRINTER_HPP
