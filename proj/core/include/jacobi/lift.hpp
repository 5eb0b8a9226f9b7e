#ifndef JACOBI_LIFT_HPP
#define JACOBI_LIFT_HPP

#include "jacobi/algebroid.hpp"
#include "jacobi/check.hpp"
#include "jacobi/dirac.hpp"

namespace jacobi {

/// Jacobi bialgebroid data together with its Lie bialgebroid over M x R:
/// the bar lift of (A, phi0) paired with the hat lift of (A*, X0), both
/// with zero twist.
struct LiftedInstance {
    JacobiBialgebroidData source;
    JacobiBialgebroidData lifted;

    /// e^{-t} pi.
    MultiVector lift(const MultiVector& pi) const;
    /// e^{t} omega.
    Form lift(const Form& omega) const;
};

LiftedInstance lift_instance(const JacobiBialgebroidData& B);
/// Uses the standard bialgebroid ((A, phi0), (A*_0, 0)).
LiftedInstance lift_instance(const JacobiAlgebroidData& J);

/// The four scaling identities
///   [pi~, pi~]_bar = e^{-2t} [pi, pi]_{A,phi0},   d_hat pi~ = e^{-2t} d_{A*,X0} pi,
///   [w~, w~]_hat = e^{t} [w, w]_{A*,X0},           d_bar w~ = e^{t} d_{A,phi0} w,
/// each side computed on its own level.
CheckResult verify_bracket_scaling(const LiftedInstance& L, const MultiVector& pi, const Form& omega);

/// The closed formulas for the hat and bar differentials of a function f~ and
/// a 1-cosection phi~ on A x R against the differential of the lifted
/// algebroids.
CheckResult verify_hat_bar_differentials(const JacobiAlgebroidData& J, const ExpPoly& f, const Form& phi);

/// Dirac-pair verdict on (A, phi0) against the verdict for the lifted pair on
/// the induced Lie bialgebroid.  Passes when both verdicts are decided and
/// agree; not decided when either level is.
CheckResult theorem_main1_crosscheck(const JacobiBialgebroidData& B, const GraphRelation& L,
                                     const GraphRelation& L2);

}  // namespace jacobi

#endif  // JACOBI_LIFT_HPP
