#include "jacobi/lift.hpp"

#include "jacobi/calculus.hpp"
#include "jacobi/printing.hpp"
#include "jacobi/structures.hpp"

namespace jacobi {

namespace {

template <Kind K>
CheckResult equal_sides(const std::string& identity, const Graded<K>& lhs, const Graded<K>& rhs,
                        const AlgebroidPatch& A) {
    const Graded<K> residue = lhs - rhs;
    if (residue.is_zero()) {
        return CheckResult::pass("direct");
    }
    return CheckResult::fail("direct", Witness{identity, {to_text(lhs, A), to_text(rhs, A)}, to_text(residue, A)});
}

GraphRelation lift_member(const LiftedInstance& L, const GraphRelation& g) {
    return g.kind == GraphRelation::Kind::sharp ? GraphRelation::sharp(L.lift(g.pi))
                                                : GraphRelation::flat(L.lift(g.omega));
}

}  // namespace

MultiVector LiftedInstance::lift(const MultiVector& pi) const {
    return ExpPoly::exp_t(pi.nvars(), -1) * pi;
}

Form LiftedInstance::lift(const Form& omega) const { return ExpPoly::exp_t(omega.nvars(), 1) * omega; }

LiftedInstance lift_instance(const JacobiBialgebroidData& B) {
    LiftedInstance out;
    out.source = B;
    AlgebroidPatch bar = lift_bar(B.A_side);
    AlgebroidPatch hat = lift_hat(B.dual_side());
    out.lifted.A_side = JacobiAlgebroidData(bar);
    out.lifted.Astar = hat;
    out.lifted.X0 = bar.zero_vector(1);
    return out;
}

LiftedInstance lift_instance(const JacobiAlgebroidData& J) { return lift_instance(standard_bialgebroid(J)); }

CheckResult verify_bracket_scaling(const LiftedInstance& L, const MultiVector& pi, const Form& omega) {
    const JacobiBialgebroidData& B = L.source;
    const AlgebroidPatch& A = B.A_side.A;
    const AlgebroidPatch& bar = L.lifted.A_side.A;
    A.require(pi);
    A.require(omega);
    const std::size_t n = A.nvars();
    const ExpPoly em2 = ExpPoly::exp_t(n, -2);
    const ExpPoly e1 = ExpPoly::exp_t(n, 1);
    const MultiVector pt = L.lift(pi);
    const Form wt = L.lift(omega);
    return all_of({equal_sides("[pi~,pi~]_bar = e^{-2t} [pi,pi]_phi0", schouten(bar, pt, pt),
                               em2 * phi0_schouten(B.A_side, pi, pi), A),
                   equal_sides("d_hat pi~ = e^{-2t} d_{A*,X0} pi", dual_differential(L.lifted, pt),
                               em2 * dual_differential(B, pi), A),
                   equal_sides("[w~,w~]_hat = e^{t} [w,w]_{A*,X0}", dual_schouten(L.lifted, wt, wt),
                               e1 * dual_schouten(B, omega, omega), A),
                   equal_sides("d_bar w~ = e^{t} d_phi w", differential(bar, wt),
                               e1 * differential(B.A_side, omega), A)},
                  "direct");
}

CheckResult verify_hat_bar_differentials(const JacobiAlgebroidData& J, const ExpPoly& f, const Form& phi) {
    const AlgebroidPatch& A = J.A;
    A.require(f);
    A.require(phi);
    if (phi.degree() != 1) {
        throw ShapeMismatch("phi must be a 1-cosection");
    }
    const std::size_t n = A.nvars();
    const AlgebroidPatch hat = lift_hat(J);
    const AlgebroidPatch bar = lift_bar(J);
    const ExpPoly em1 = ExpPoly::exp_t(n, -1);
    const Form F = Form::scalar(f, A.rank());
    const Form df_formula = differential(A, F) + f.derivative(n) * J.phi0;
    const Form dphi_formula = wedge(J.phi0, differentiate_coefficients(phi, n));
    return all_of({equal_sides("d_hat f = e^{-t}(d_A f + f_t phi0)", differential(hat, F), em1 * df_formula, A),
                   equal_sides("d_hat phi = e^{-t}(d_phi phi + phi0 ^ phi_t)", differential(hat, phi),
                               em1 * (differential(J, phi) + dphi_formula), A),
                   equal_sides("d_bar f = d_A f + f_t phi0", differential(bar, F), df_formula, A),
                   equal_sides("d_bar phi = d_A phi + phi0 ^ phi_t", differential(bar, phi),
                               differential(A, phi) + dphi_formula, A)},
                  "direct");
}

CheckResult theorem_main1_crosscheck(const JacobiBialgebroidData& B, const GraphRelation& L,
                                     const GraphRelation& L2) {
    const LiftedInstance lifted = lift_instance(B);
    const CheckResult down = dirac_pair_check(B, L, L2);
    const CheckResult up = dirac_pair_check(lifted.lifted, lift_member(lifted, L), lift_member(lifted, L2));
    const std::string strategy = "verdict agreement (" + down.strategy + " / " + up.strategy + ")";
    if (down.status == Status::inconclusive || up.status == Status::inconclusive) {
        return CheckResult::inconclusive(strategy, "a level has no complete strategy");
    }
    if (down.status == up.status) {
        return CheckResult::pass(strategy, std::string("both levels ") + status_name(down.status));
    }
    auto residue = [](const CheckResult& r) { return r.witness ? r.witness->residue : std::string("0"); };
    return CheckResult::fail(strategy, Witness{"Dirac-pair verdicts differ between M and M x R",
                                               {std::string("base: ") + status_name(down.status),
                                                std::string("lift: ") + status_name(up.status)},
                                               residue(down) + " | " + residue(up)});
}

}  // namespace jacobi
