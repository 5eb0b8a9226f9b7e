#include <gtest/gtest.h>

#include "jacobi/calculus.hpp"
#include "jacobi/instances.hpp"
#include "jacobi/structures.hpp"
#include "support.hpp"

using namespace jacobi;
using test_support::koszul_differential;
using test_support::poisson_pair;
using test_support::tangent;

namespace {

struct Contact {
    AlgebroidPatch T = make_tangent(contact_patch(2));
    JacobiAlgebroidData J = extend_with_R(T);
    ContactJacobi c = canonical_contact_jacobi(J, T, 2);
    Form beta = canonical_contact_form(T, 2);
    Form Omega = contact_two_form(J, T, beta);
};

}  // namespace

TEST(Structures, MusicalMapsFollowTheirPairings) {
    const AlgebroidPatch T = tangent({"x", "y"});
    const MultiVector pi = wedge(T.frame(0), T.frame(1));
    const TensorMap s = sharp_map(pi);
    EXPECT_EQ(pair(apply<Kind::vector>(s, T.coframe(0)), T.coframe(1)), T.one());
    EXPECT_EQ(apply<Kind::vector>(s, T.coframe(0)), T.frame(1));
    const Form w = wedge(T.coframe(0), T.coframe(1));
    EXPECT_EQ(pair(apply<Kind::form>(flat_map(w), T.frame(0)), T.frame(1)), T.one());
    EXPECT_TRUE(sharp_map(T.zero_vector(2)).is_zero());

    RandomSource rs(40);
    const AlgebroidPatch A = rs.lie_algebroid(2, 4);
    const MultiVector p = rs.multivector(A, 2, 1);
    const Form a = rs.form(A, 1, 1);
    const Form b = rs.form(A, 1, 1);
    EXPECT_EQ(pair(apply<Kind::vector>(sharp_map(p), a), b), evaluate_on(p, std::vector<Form>{a, b}));
    EXPECT_EQ(bivector_of(sharp_map(p)), p);
}

TEST(Structures, JacobiBracketBasics) {
    RandomSource rs(41);
    const JacobiAlgebroidData J = rs.jacobi_algebroid(2, 3);
    const MultiVector pi = rs.multivector(J.A, 2, 1);
    const Form xi = rs.form(J.A, 1, 1);
    const Form eta = rs.form(J.A, 1, 1);
    EXPECT_TRUE(jacobi_bracket(J, pi, xi, xi).is_zero());
    EXPECT_EQ(jacobi_bracket(J, pi, xi, eta), -jacobi_bracket(J, pi, eta, xi));

    // phi0 = 0: the Koszul bracket L_{pi# xi} eta - L_{pi# eta} xi - d pi(xi, eta).
    const AlgebroidPatch A = rs.lie_algebroid(2, 3);
    const MultiVector p = rs.multivector(A, 2, 1);
    const Form a = rs.form(A, 1, 1);
    const Form b = rs.form(A, 1, 1);
    const Form koszul = lie_derivative(A, apply<Kind::vector>(sharp_map(p), a), b) -
                        lie_derivative(A, apply<Kind::vector>(sharp_map(p), b), a) -
                        differential(A, Form::scalar(evaluate_on(p, std::vector<Form>{a, b}), A.rank()));
    EXPECT_EQ(jacobi_bracket(JacobiAlgebroidData(A), p, a, b), koszul);
}

TEST(Structures, BracketIdentityResidueTracksTheJacobiCondition) {
    const Contact k;
    for (std::size_t i = 0; i < k.J.A.rank(); ++i) {
        for (std::size_t j = 0; j < k.J.A.rank(); ++j) {
            EXPECT_TRUE(bracket_identity_residue(k.J, k.c.pi, k.J.A.coframe(i), k.J.A.coframe(j)).is_zero());
        }
    }
    // Doubling Lambda alone breaks [pi, pi]_phi0 = 0 and the residue follows.
    const MultiVector bad = merge(k.J.A, Rational(2) * k.c.Lambda, k.c.E);
    ASSERT_TRUE(jacobi_check(k.J, bad).failed());
    EXPECT_TRUE(bracket_identity_residue(k.J, bad, k.J.A.coframe(0), k.J.A.coframe(2)).is_zero());
    bool seen = false;
    for (std::size_t i = 0; i < k.J.A.rank() && !seen; ++i) {
        for (std::size_t j = 0; j < k.J.A.rank() && !seen; ++j) {
            const MultiVector half = insert_front(phi0_schouten(k.J, bad, bad),
                                                  std::vector<Form>{k.J.A.coframe(i), k.J.A.coframe(j)});
            seen = !half.is_zero();
        }
    }
    EXPECT_TRUE(seen);
}

TEST(Structures, JacobiAndCompatibilityChecks) {
    const Contact k;
    EXPECT_TRUE(jacobi_check(k.J, k.c.pi).passed());
    const MultiVector poisson = merge(k.J.A, wedge(k.T.frame(0), k.T.frame(2)), k.T.zero_vector(1));
    EXPECT_TRUE(jacobi_check(k.J, poisson).passed());

    const AlgebroidPatch T = tangent({"x", "y"});
    const JacobiAlgebroidData J(T);
    const MultiVector p1 = wedge(T.frame(0), T.frame(1));
    const MultiVector p2 = ExpPoly::variable(2, 0) * p1;
    // Trivector on a rank-2 bundle vanishes.
    EXPECT_TRUE(compat_check(J, p1, p2).passed());

    // From [f,X] = -X(f) and the Leibniz rule, [X^Y, f] = Y(f) X - X(f) Y, so for
    // commuting constant fields [X^Y, f Z^W] = (Y(f) X - X(f) Y)^Z^W.
    const AlgebroidPatch T3 = tangent({"x", "y", "z"});
    const MultiVector dx = T3.frame(0);
    const MultiVector dy = T3.frame(1);
    const MultiVector dz = T3.frame(2);
    const ExpPoly x = ExpPoly::variable(3, 0);
    const MultiVector q1 = wedge(dx, dy);
    // x dy^dz: only dy^dy^dz survives, which is zero.
    EXPECT_TRUE(compat_check(JacobiAlgebroidData(T3), q1, x * wedge(dy, dz)).passed());
    // x dx^dz: -dy^dx^dz remains.
    const MultiVector q4 = x * wedge(dx, dz);
    EXPECT_EQ(schouten(T3, q1, q4), -wedge(wedge(dy, dx), dz));
    const CheckResult r = compat_check(JacobiAlgebroidData(T3), q1, q4);
    EXPECT_TRUE(r.failed());
    ASSERT_TRUE(r.witness.has_value());
}

TEST(Structures, PresymplecticAndNondegenerate) {
    const MongeAmpereData d = monge_ampere_data();
    EXPECT_TRUE(presymplectic_check(d.J, d.Omega).passed());
    EXPECT_TRUE(nondegenerate_check(flat_map(d.Omega), d.J.A).passed());
    EXPECT_TRUE(presymplectic_check(d.J, d.omega_p).passed());
    EXPECT_TRUE(nondegenerate_check(flat_map(d.omega_p), d.J.A).failed());
    const Form only_d = merge(d.J.A, differential(d.tangent, d.beta), d.tangent.zero_form(1));
    EXPECT_TRUE(presymplectic_check(d.J, only_d).failed());
}

TEST(Structures, OmegaPiCorrespondence) {
    const Contact k;
    const Form w = omega_from_pi(k.c.pi);
    EXPECT_EQ(pi_from_omega(w), k.c.pi);
    EXPECT_EQ(pi_from_omega(k.Omega), k.c.pi);

    const AlgebroidPatch T = tangent({"x", "y", "z"});
    EXPECT_THROW((void)omega_from_pi(wedge(T.frame(0), T.frame(1))), NotInvertible);

    // pi = dx^dy: pi# dx = dy, pi# dy = -dx, so -(pi#)^{-1} sends dx to dy
    // and omega_pi = dx^dy.
    const AlgebroidPatch P = tangent({"x", "y"});
    const Form wp = omega_from_pi(wedge(P.frame(0), P.frame(1)));
    EXPECT_EQ(pair(apply<Kind::form>(flat_map(wp), P.frame(0)), P.frame(1)), P.one());
    EXPECT_EQ(wp, wedge(P.coframe(0), P.coframe(1)));
}

TEST(Structures, JacobiVerdictMatchesPresymplecticVerdict) {
    const Contact k;
    RandomSource rs(42);
    int decided = 0;
    for (int n = 0; n < 10; ++n) {
        MultiVector pi = k.c.pi;
        if (n % 2 == 1) {
            const auto a = static_cast<std::size_t>(rs.integer(0, 4));
            pi += merge(k.J.A, k.T.zero_vector(2), ExpPoly::variable(5, a) * k.T.frame(static_cast<std::size_t>(rs.integer(0, 4))));
        }
        if (!is_invertible(sharp_map(pi))) {
            continue;
        }
        ++decided;
        EXPECT_EQ(jacobi_check(k.J, pi).passed(), presymplectic_check(k.J, omega_from_pi(pi)).passed());
    }
    EXPECT_GT(decided, 5);
}

TEST(Structures, MaurerCartanOnStandardBialgebroid) {
    const Contact k;
    const JacobiBialgebroidData B = standard_bialgebroid(k.J);
    EXPECT_TRUE(maurer_cartan_check(B, k.c.pi).passed());
    EXPECT_TRUE(maurer_cartan_check(B, k.Omega).passed());
}

TEST(Structures, MaurerCartanWithNonzeroDualDifferential) {
    // so(3) on A and the book algebra [f1,f2] = f2, [f1,f3] = f3 on A* over a point.
    std::vector<std::vector<std::vector<Rational>>> c(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
    auto eps = [](int i, int j, int k) { return Rational((i - j) * (j - k) * (k - i), 2); };
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int l = 0; l < 3; ++l) {
                c[i][j][l] = eps(i, j, l);
            }
        }
    }
    std::vector<std::vector<std::vector<Rational>>> b(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
    b[0][1][1] = 1;
    b[1][0][1] = -1;
    b[0][2][2] = 1;
    b[2][0][2] = -1;
    const Patch pt = make_patch({});
    const AlgebroidPatch A = make_from_constants(pt, c);
    JacobiBialgebroidData B;
    B.A_side = JacobiAlgebroidData(A);
    B.Astar = dual_frame_algebroid(A, make_from_constants(pt, b));
    B.X0 = A.zero_vector(1);
    ASSERT_TRUE(validate_algebroid(B.Astar).passed());

    const MultiVector pi = wedge(A.frame(0), A.frame(1)) + Rational(2) * wedge(A.frame(1), A.frame(2));
    // d_{A*} pi from the Koszul formula on A*, plus 1/2 [pi, pi]_A.
    const MultiVector expected = flip(koszul_differential(B.Astar, flip(pi))) + Rational(1, 2) * schouten(A, pi, pi);
    EXPECT_FALSE(expected.is_zero());
    EXPECT_EQ(maurer_cartan_residue(B, pi), expected);
    EXPECT_TRUE(maurer_cartan_check(B, pi).failed());
}

TEST(Structures, BialgebroidCompatibility) {
    RandomSource rs(43);
    const JacobiAlgebroidData J = rs.jacobi_algebroid(2, 3);
    EXPECT_TRUE(bialgebroid_compat_check(standard_bialgebroid(J)).passed());

    const AlgebroidPatch Z = make_trivial(make_patch({"x", "y"}), 3);
    EXPECT_TRUE(bialgebroid_compat_check(standard_bialgebroid(JacobiAlgebroidData(Z))).passed());

    const Contact k;
    JacobiBialgebroidData broken = standard_bialgebroid(k.J);
    broken.X0 = k.J.A.frame(0) + ExpPoly::variable(5, 2) * k.J.A.frame(5);
    const CheckResult r = bialgebroid_compat_check(broken);
    ASSERT_TRUE(r.failed());
    EXPECT_TRUE(r.witness.has_value());
}

TEST(Structures, CourantBracketAndPairings) {
    RandomSource rs(44);
    const JacobiAlgebroidData J = rs.jacobi_algebroid(2, 3);
    const JacobiBialgebroidData B = standard_bialgebroid(J);
    for (int n = 0; n < 5; ++n) {
        const CouplePair u{rs.multivector(J.A, 1, 1), rs.form(J.A, 1, 1)};
        const CouplePair v{rs.multivector(J.A, 1, 1), rs.form(J.A, 1, 1)};
        EXPECT_TRUE(pairing_pm(u, u, -1).is_zero());
        const CouplePair uv = courant_bracket(B, u, v);
        const CouplePair vu = courant_bracket(B, v, u);
        EXPECT_EQ(uv.X, -vu.X);
        EXPECT_EQ(uv.xi, -vu.xi);
        const CouplePair x{u.X, J.A.zero_form(1)};
        const CouplePair y{v.X, J.A.zero_form(1)};
        const CouplePair xy = courant_bracket(B, x, y);
        EXPECT_EQ(xy.X, phi0_schouten(J, u.X, v.X));
        EXPECT_TRUE(xy.xi.is_zero());
    }
}

TEST(Structures, ClosureAgreesWithMaurerCartan) {
    RandomSource rs(45);
    const AlgebroidPatch T = make_tangent(make_patch({"x", "y", "z"}));
    const JacobiAlgebroidData J = extend_with_R(T);
    const JacobiBialgebroidData B = standard_bialgebroid(J);
    int passes = 0;
    int fails = 0;
    for (int n = 0; n < 20; ++n) {
        const MultiVector pi = n % 2 == 0 ? poisson_pair(J, rs) : rs.multivector(J.A, 2, 1);
        const bool mc = maurer_cartan_check(B, pi).passed();
        EXPECT_EQ(mc, graph_closure_check(B, pi).passed());
        (mc ? passes : fails) += 1;
    }
    EXPECT_GT(passes, 0);
    EXPECT_GT(fails, 0);
}

TEST(Structures, MixedBracketIdentity) {
    RandomSource rs(46);
    const JacobiAlgebroidData J = extend_with_R(make_tangent(make_patch({"x", "y", "z"})));
    const Contact k;
    for (int n = 0; n < 25; ++n) {
        const MultiVector p1 = poisson_pair(J, rs);
        const MultiVector p2 = poisson_pair(J, rs);
        const Form xi = rs.form(J.A, 1, 1);
        const Form eta = rs.form(J.A, 1, 1);
        EXPECT_TRUE(mixed_bracket_identity_residue(J, p1, p2, xi, eta).is_zero());
    }
    const Form xi = k.J.A.coframe(0) + ExpPoly::variable(5, 3) * k.J.A.coframe(5);
    const Form eta = k.J.A.coframe(2);
    EXPECT_TRUE(mixed_bracket_identity_residue(k.J, k.c.pi, k.c.pi, xi, eta).is_zero());
}
