#ifndef JACOBI_ERRORS_HPP
#define JACOBI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jacobi {

/// Base class for every error raised by the algebra layer.
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different variable sets, ranks, kinds or degrees.
class ShapeMismatch : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

class UnknownVariable : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

/// Raised when an inverse is requested for a non-unit coefficient or matrix.
class NotInvertible : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

/// An input violates a structural precondition (invalid algebroid, non-closed phi0, ...).
class InvalidStructure : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

}  // namespace jacobi

#endif  // JACOBI_ERRORS_HPP
