#ifndef JACOBI_STRUCTURES_HPP
#define JACOBI_STRUCTURES_HPP

#include <vector>

#include "jacobi/algebroid.hpp"
#include "jacobi/check.hpp"
#include "jacobi/graded.hpp"
#include "jacobi/tensor_map.hpp"

namespace jacobi {

/// Section X + xi of A + A*.
struct CouplePair {
    MultiVector X;
    Form xi;

    friend bool operator==(const CouplePair&, const CouplePair&) = default;
};

/// [xi, eta]_{pi,phi0} = L_{pi# xi} eta - L_{pi# eta} xi - d_{A,phi0} <pi# xi, eta>.
Form jacobi_bracket(const JacobiAlgebroidData& J, const MultiVector& pi, const Form& xi, const Form& eta);

CheckResult jacobi_check(const JacobiAlgebroidData& J, const MultiVector& pi);
CheckResult compat_check(const JacobiAlgebroidData& J, const MultiVector& pi, const MultiVector& pi2);
CheckResult presymplectic_check(const JacobiAlgebroidData& J, const Form& omega);
/// Passes when the determinant is a unit of the coefficient ring.
CheckResult nondegenerate_check(const TensorMap& m, const AlgebroidPatch& A);

/// omega_pi with omega_pi_flat = -(pi#)^{-1}; throws NotInvertible.
Form omega_from_pi(const MultiVector& pi);
/// pi with pi# = -(omega_flat)^{-1}; throws NotInvertible.
MultiVector pi_from_omega(const Form& omega);

/// d_{A*,X0} applied to a multivector on A (a form on A*).
MultiVector dual_differential(const JacobiBialgebroidData& B, const MultiVector& P);
/// [omega, omega']_{A*,X0}: the twisted Schouten bracket of A* on forms of A.
Form dual_schouten(const JacobiBialgebroidData& B, const Form& a, const Form& b);

/// d_{A*,X0} pi + 1/2 [pi,pi]_{A,phi0}.
MultiVector maurer_cartan_residue(const JacobiBialgebroidData& B, const MultiVector& pi);
/// d_{A,phi0} omega + 1/2 [omega,omega]_{A*,X0}.
Form maurer_cartan_residue(const JacobiBialgebroidData& B, const Form& omega);
CheckResult maurer_cartan_check(const JacobiBialgebroidData& B, const MultiVector& pi);
CheckResult maurer_cartan_check(const JacobiBialgebroidData& B, const Form& omega);

/// Frame sections e_i together with x_a e_i for every coordinate x_a.
std::vector<MultiVector> default_section_family(const AlgebroidPatch& A);

/// Evaluates the two compatibility identities of a Jacobi bialgebroid on a
/// finite family: sections X, Y from `sections` (default family when empty)
/// and P over all frame wedges and coordinate functions.  A pass is evidence
/// on that family, not a proof.
CheckResult bialgebroid_compat_check(const JacobiBialgebroidData& B, const std::vector<MultiVector>& sections = {});

ExpPoly pairing_pm(const CouplePair& u, const CouplePair& v, int sign);
CouplePair courant_bracket(const JacobiBialgebroidData& B, const CouplePair& u, const CouplePair& v);

/// Closure of graph(pi#) (or graph(omega_flat)) under the bracket, checked on
/// frame generators and coordinate-scaled generators.
CheckResult graph_closure_check(const JacobiBialgebroidData& B, const MultiVector& pi);
CheckResult graph_closure_check(const JacobiBialgebroidData& B, const Form& omega);

/// 1/2 [pi,pi]_{A,phi0}(xi, eta, .) - [pi# xi, pi# eta]_A + pi# [xi,eta]_{pi,phi0}.
MultiVector bracket_identity_residue(const JacobiAlgebroidData& J, const MultiVector& pi, const Form& xi,
                                     const Form& eta);
/// The same with [pi# xi, pi# eta]_{A,phi0} in place of the untwisted bracket.
MultiVector bracket_identity_residue_twisted(const JacobiAlgebroidData& J, const MultiVector& pi, const Form& xi,
                                             const Form& eta);
/// [pi,pi']_{A,phi0}(xi,eta,.) minus the four-term expression in the induced brackets.
MultiVector mixed_bracket_identity_residue(const JacobiAlgebroidData& J, const MultiVector& pi,
                                           const MultiVector& pi2, const Form& xi, const Form& eta);

}  // namespace jacobi

#endif  // JACOBI_STRUCTURES_HPP
