#ifndef JACOBI_PRINTING_HPP
#define JACOBI_PRINTING_HPP

#include <string>

#include "jacobi/algebroid.hpp"
#include "jacobi/coeff.hpp"
#include "jacobi/graded.hpp"

namespace jacobi {

class TensorMap;

/// All printers emit text that the script parser reads back to the same value.
std::string to_text(const ExpPoly& f, const Patch& patch);
std::string to_text(const MultiVector& u, const AlgebroidPatch& A);
std::string to_text(const Form& u, const AlgebroidPatch& A);
std::string to_text(const TensorMap& m, const AlgebroidPatch& A);

}  // namespace jacobi

#endif  // JACOBI_PRINTING_HPP
