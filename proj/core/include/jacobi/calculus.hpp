#ifndef JACOBI_CALCULUS_HPP
#define JACOBI_CALCULUS_HPP

#include <utility>

#include "jacobi/algebroid.hpp"
#include "jacobi/graded.hpp"

namespace jacobi {

/// Schouten bracket [P, Q]_A of degree p + q - 1, expanded from the axioms
/// [f,g] = 0, [X,f] = rho(X)f, [e_i,e_j] = c^k_ij e_k, graded antisymmetry
/// and the Leibniz rule in the second slot.
MultiVector schouten(const AlgebroidPatch& A, const MultiVector& P, const MultiVector& Q);

/// [D1,D2]_{A,phi0} = [D1,D2]_A + (a1-1) D1 ^ i_phi0 D2 - (-1)^(a1+1) (a2-1) i_phi0 D1 ^ D2.
MultiVector phi0_schouten(const JacobiAlgebroidData& J, const MultiVector& P, const MultiVector& Q);

Form differential(const AlgebroidPatch& A, const Form& omega);
/// d_{A,phi0} omega = d_A omega + phi0 ^ omega.
Form differential(const JacobiAlgebroidData& J, const Form& omega);

/// Cartan formula d i_X + i_X d.
Form lie_derivative(const AlgebroidPatch& A, const MultiVector& X, const Form& omega);
/// L^{A,phi0}_X = i_X d_{A,phi0} + d_{A,phi0} i_X.
Form lie_derivative(const JacobiAlgebroidData& J, const MultiVector& X, const Form& omega);
/// L_X D = [X, D]_A.
MultiVector lie_derivative(const AlgebroidPatch& A, const MultiVector& X, const MultiVector& D);
/// On multivectors the twisted derivative is [X, D]_{A,phi0}.
MultiVector lie_derivative(const JacobiAlgebroidData& J, const MultiVector& X, const MultiVector& D);

/// Identification of Lambda^k(B + R) with Lambda^k B + Lambda^(k-1) B on an
/// algebroid produced by extend_with_R: (P, Q) <-> P + ehat ^ Q and
/// (alpha, beta) <-> alpha + epshat ^ beta.  Components are over the base rank.
std::pair<MultiVector, MultiVector> split(const AlgebroidPatch& A, const MultiVector& u);
std::pair<Form, Form> split(const AlgebroidPatch& A, const Form& u);
MultiVector merge(const AlgebroidPatch& A, const MultiVector& P, const MultiVector& Q);
Form merge(const AlgebroidPatch& A, const Form& alpha, const Form& beta);

}  // namespace jacobi

#endif  // JACOBI_CALCULUS_HPP
