#include "jacobi/structures.hpp"

#include "jacobi/calculus.hpp"
#include "jacobi/printing.hpp"

namespace jacobi {

namespace {

const Rational kHalf(1, 2);

CheckResult vanishing(const std::string& strategy, const std::string& identity, std::vector<std::string> args,
                      const MultiVector& residue, const AlgebroidPatch& A) {
    if (residue.is_zero()) {
        return CheckResult::pass(strategy);
    }
    return CheckResult::fail(strategy, Witness{identity, std::move(args), to_text(residue, A)});
}

CheckResult vanishing(const std::string& strategy, const std::string& identity, std::vector<std::string> args,
                      const Form& residue, const AlgebroidPatch& A) {
    if (residue.is_zero()) {
        return CheckResult::pass(strategy);
    }
    return CheckResult::fail(strategy, Witness{identity, std::move(args), to_text(residue, A)});
}

void require_degree(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw ShapeMismatch(std::string(what) + " must have degree " + std::to_string(want) + ", got " +
                            std::to_string(got));
    }
}

// Lie derivative of (A*, X0) along a section xi of A*, acting on a multivector of A.
MultiVector dual_lie(const JacobiBialgebroidData& B, const Form& xi, const MultiVector& P) {
    return flip(lie_derivative(B.dual_side(), flip(xi), flip(P)));
}

}  // namespace

Form jacobi_bracket(const JacobiAlgebroidData& J, const MultiVector& pi, const Form& xi, const Form& eta) {
    require_degree(pi.degree(), 2, "pi");
    require_degree(xi.degree(), 1, "xi");
    require_degree(eta.degree(), 1, "eta");
    const TensorMap s = sharp_map(pi);
    const MultiVector px = apply<Kind::vector>(s, xi);
    const MultiVector pe = apply<Kind::vector>(s, eta);
    return lie_derivative(J, px, eta) - lie_derivative(J, pe, xi) -
           differential(J, Form::scalar(pair(eta, px), J.A.rank()));
}

CheckResult jacobi_check(const JacobiAlgebroidData& J, const MultiVector& pi) {
    require_degree(pi.degree(), 2, "pi");
    return vanishing("direct", "[pi,pi]_phi0", {to_text(pi, J.A)}, phi0_schouten(J, pi, pi), J.A);
}

CheckResult compat_check(const JacobiAlgebroidData& J, const MultiVector& pi, const MultiVector& pi2) {
    require_degree(pi.degree(), 2, "pi");
    require_degree(pi2.degree(), 2, "pi'");
    return vanishing("direct", "[pi,pi']_phi0", {to_text(pi, J.A), to_text(pi2, J.A)}, phi0_schouten(J, pi, pi2),
                     J.A);
}

CheckResult presymplectic_check(const JacobiAlgebroidData& J, const Form& omega) {
    require_degree(omega.degree(), 2, "omega");
    return vanishing("direct", "d_phi(omega)", {to_text(omega, J.A)}, differential(J, omega), J.A);
}

CheckResult nondegenerate_check(const TensorMap& m, const AlgebroidPatch& A) {
    const ExpPoly det = determinant(m);
    if (det.is_unit()) {
        return CheckResult::pass("determinant");
    }
    return CheckResult::fail("determinant",
                             Witness{"determinant is not a unit", {to_text(m, A)}, to_text(det, A.patch())});
}

Form omega_from_pi(const MultiVector& pi) {
    require_degree(pi.degree(), 2, "pi");
    return two_form_of(-inverse(sharp_map(pi)));
}

MultiVector pi_from_omega(const Form& omega) {
    require_degree(omega.degree(), 2, "omega");
    return bivector_of(-inverse(flat_map(omega)));
}

MultiVector dual_differential(const JacobiBialgebroidData& B, const MultiVector& P) {
    return flip(differential(B.dual_side(), flip(P)));
}

Form dual_schouten(const JacobiBialgebroidData& B, const Form& a, const Form& b) {
    return flip(phi0_schouten(B.dual_side(), flip(a), flip(b)));
}

MultiVector maurer_cartan_residue(const JacobiBialgebroidData& B, const MultiVector& pi) {
    require_degree(pi.degree(), 2, "pi");
    return dual_differential(B, pi) + kHalf * phi0_schouten(B.A_side, pi, pi);
}

Form maurer_cartan_residue(const JacobiBialgebroidData& B, const Form& omega) {
    require_degree(omega.degree(), 2, "omega");
    return differential(B.A_side, omega) + kHalf * dual_schouten(B, omega, omega);
}

CheckResult maurer_cartan_check(const JacobiBialgebroidData& B, const MultiVector& pi) {
    return vanishing("direct", "d_{A*,X0} pi + 1/2 [pi,pi]_phi0", {to_text(pi, B.A_side.A)},
                     maurer_cartan_residue(B, pi), B.A_side.A);
}

CheckResult maurer_cartan_check(const JacobiBialgebroidData& B, const Form& omega) {
    return vanishing("direct", "d_phi omega + 1/2 [omega,omega]_{A*,X0}", {to_text(omega, B.A_side.A)},
                     maurer_cartan_residue(B, omega), B.A_side.A);
}

std::vector<MultiVector> default_section_family(const AlgebroidPatch& A) {
    std::vector<MultiVector> out;
    for (std::size_t i = 0; i < A.rank(); ++i) {
        out.push_back(A.frame(i));
    }
    const std::size_t vars = A.patch().lifted ? A.nvars() + 1 : A.nvars();
    for (std::size_t a = 0; a < vars; ++a) {
        for (std::size_t i = 0; i < A.rank(); ++i) {
            out.push_back(ExpPoly::variable(A.nvars(), a) * A.frame(i));
        }
    }
    return out;
}

CheckResult bialgebroid_compat_check(const JacobiBialgebroidData& B, const std::vector<MultiVector>& sections) {
    const JacobiAlgebroidData& J = B.A_side;
    const AlgebroidPatch& A = J.A;
    const std::string strategy = "verified on test family";
    const auto family = sections.empty() ? default_section_family(A) : sections;
    std::vector<MultiVector> dfam;
    dfam.reserve(family.size());
    for (const auto& X : family) {
        A.require(X);
        require_degree(X.degree(), 1, "test section");
        dfam.push_back(dual_differential(B, X));
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const MultiVector& X = family[i];
            const MultiVector& Y = family[j];
            MultiVector residue = dual_differential(B, bracket_sections(A, X, Y)) -
                                  phi0_schouten(J, dfam[i], Y) - phi0_schouten(J, X, dfam[j]);
            if (!residue.is_zero()) {
                return CheckResult::fail(
                    strategy, Witness{"d_{A*,X0}[X,Y] - [d_{A*,X0}X,Y]_phi0 - [X,d_{A*,X0}Y]_phi0",
                                      {to_text(X, A), to_text(Y, A)},
                                      to_text(residue, A)});
            }
        }
    }
    std::vector<MultiVector> probes;
    const IndexMask full = A.rank() >= 32 ? ~IndexMask{0} : ((IndexMask{1} << A.rank()) - 1);
    for (IndexMask m = 0;; ++m) {
        probes.push_back(MultiVector::basis(A.rank(), A.nvars(), m));
        if (m == full) {
            break;
        }
    }
    const std::size_t vars = A.patch().lifted ? A.nvars() + 1 : A.nvars();
    for (std::size_t a = 0; a < vars; ++a) {
        probes.push_back(MultiVector::scalar(ExpPoly::variable(A.nvars(), a), A.rank()));
    }
    const Form phi0 = J.phi0;
    for (const auto& P : probes) {
        MultiVector residue = lie_derivative(J, B.X0, P) + dual_lie(B, phi0, P);
        if (!residue.is_zero()) {
            return CheckResult::fail(strategy, Witness{"L^{A,phi0}_{X0} P + L^{A*,X0}_{phi0} P",
                                                       {to_text(P, A)},
                                                       to_text(residue, A)});
        }
    }
    return CheckResult::pass(strategy);
}

ExpPoly pairing_pm(const CouplePair& u, const CouplePair& v, int sign) {
    ExpPoly a = pair(u.xi, v.X);
    ExpPoly b = pair(v.xi, u.X);
    return kHalf * (sign >= 0 ? a + b : a - b);
}

CouplePair courant_bracket(const JacobiBialgebroidData& B, const CouplePair& u, const CouplePair& v) {
    const JacobiAlgebroidData& J = B.A_side;
    const AlgebroidPatch& A = J.A;
    for (const auto* w : {&u, &v}) {
        A.require(w->X);
        A.require(w->xi);
        require_degree(w->X.degree(), 1, "section");
        require_degree(w->xi.degree(), 1, "cosection");
    }
    const ExpPoly minus = pairing_pm(u, v, -1);
    CouplePair out;
    out.X = phi0_schouten(J, u.X, v.X) + dual_lie(B, u.xi, v.X) - dual_lie(B, v.xi, u.X) -
            dual_differential(B, MultiVector::scalar(minus, A.rank()));
    out.xi = dual_schouten(B, u.xi, v.xi) + lie_derivative(J, u.X, v.xi) - lie_derivative(J, v.X, u.xi) +
             differential(J, Form::scalar(minus, A.rank()));
    return out;
}

namespace {

std::vector<Form> default_cosection_family(const AlgebroidPatch& A) {
    std::vector<Form> out;
    for (const auto& X : default_section_family(A)) {
        out.push_back(flip(X));
    }
    return out;
}

}  // namespace

CheckResult graph_closure_check(const JacobiBialgebroidData& B, const MultiVector& pi) {
    const AlgebroidPatch& A = B.A_side.A;
    require_degree(pi.degree(), 2, "pi");
    const TensorMap s = sharp_map(pi);
    std::vector<CouplePair> gens;
    for (const auto& xi : default_cosection_family(A)) {
        gens.push_back(CouplePair{apply<Kind::vector>(s, xi), xi});
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            CouplePair w = courant_bracket(B, gens[i], gens[j]);
            MultiVector residue = w.X - apply<Kind::vector>(s, w.xi);
            if (!residue.is_zero()) {
                return CheckResult::fail("bracket closure",
                                         Witness{"graph closure: Z - pi#(zeta) for [[u,v]] = Z + zeta",
                                                 {to_text(gens[i].xi, A), to_text(gens[j].xi, A)},
                                                 to_text(residue, A)});
            }
        }
    }
    return CheckResult::pass("bracket closure");
}

CheckResult graph_closure_check(const JacobiBialgebroidData& B, const Form& omega) {
    const AlgebroidPatch& A = B.A_side.A;
    require_degree(omega.degree(), 2, "omega");
    const TensorMap f = flat_map(omega);
    std::vector<CouplePair> gens;
    for (const auto& X : default_section_family(A)) {
        gens.push_back(CouplePair{X, apply<Kind::form>(f, X)});
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            CouplePair w = courant_bracket(B, gens[i], gens[j]);
            Form residue = w.xi - apply<Kind::form>(f, w.X);
            if (!residue.is_zero()) {
                return CheckResult::fail("bracket closure",
                                         Witness{"graph closure: zeta - omega_flat(Z) for [[u,v]] = Z + zeta",
                                                 {to_text(gens[i].X, A), to_text(gens[j].X, A)},
                                                 to_text(residue, A)});
            }
        }
    }
    return CheckResult::pass("bracket closure");
}

MultiVector bracket_identity_residue(const JacobiAlgebroidData& J, const MultiVector& pi, const Form& xi,
                                     const Form& eta) {
    const TensorMap s = sharp_map(pi);
    MultiVector lhs = kHalf * insert_front(phi0_schouten(J, pi, pi), {xi, eta});
    MultiVector rhs = bracket_sections(J.A, apply<Kind::vector>(s, xi), apply<Kind::vector>(s, eta)) -
                      apply<Kind::vector>(s, jacobi_bracket(J, pi, xi, eta));
    return lhs - rhs;
}

MultiVector bracket_identity_residue_twisted(const JacobiAlgebroidData& J, const MultiVector& pi, const Form& xi,
                                             const Form& eta) {
    const TensorMap s = sharp_map(pi);
    MultiVector lhs = kHalf * insert_front(phi0_schouten(J, pi, pi), {xi, eta});
    MultiVector rhs = phi0_schouten(J, apply<Kind::vector>(s, xi), apply<Kind::vector>(s, eta)) -
                      apply<Kind::vector>(s, jacobi_bracket(J, pi, xi, eta));
    return lhs - rhs;
}

MultiVector mixed_bracket_identity_residue(const JacobiAlgebroidData& J, const MultiVector& pi,
                                           const MultiVector& pi2, const Form& xi, const Form& eta) {
    const TensorMap s = sharp_map(pi);
    const TensorMap s2 = sharp_map(pi2);
    MultiVector lhs = insert_front(phi0_schouten(J, pi, pi2), {xi, eta});
    MultiVector rhs = bracket_sections(J.A, apply<Kind::vector>(s, xi), apply<Kind::vector>(s2, eta)) +
                      bracket_sections(J.A, apply<Kind::vector>(s2, xi), apply<Kind::vector>(s, eta)) -
                      apply<Kind::vector>(s, jacobi_bracket(J, pi2, xi, eta)) -
                      apply<Kind::vector>(s2, jacobi_bracket(J, pi, xi, eta));
    return lhs - rhs;
}

}  // namespace jacobi
