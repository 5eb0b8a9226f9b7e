#include <gtest/gtest.h>

#include "support.hpp"
#include "jacobi/algebroid.hpp"
#include "jacobi/calculus.hpp"
#include "jacobi/instances.hpp"

using namespace jacobi;

namespace {

AlgebroidPatch tangent(std::vector<std::string> names) { return make_tangent(make_patch(std::move(names))); }

ExpPoly var(const AlgebroidPatch& A, std::size_t i) { return ExpPoly::variable(A.nvars(), i); }

}  // namespace

TEST(Algebroid, TangentBracketOfCoordinateFields) {
    const AlgebroidPatch T = tangent({"x", "y"});
    EXPECT_EQ(bracket_sections(T, T.frame(0), var(T, 0) * T.frame(1)), T.frame(1));
}

TEST(Algebroid, BracketIsAntisymmetric) {
    RandomSource rs(7);
    const AlgebroidPatch A = rs.lie_algebroid(3, 4);
    for (int k = 0; k < 10; ++k) {
        const MultiVector X = rs.multivector(A, 1, 2);
        const MultiVector Y = rs.multivector(A, 1, 2);
        EXPECT_TRUE(bracket_sections(A, X, X).is_zero());
        EXPECT_EQ(bracket_sections(A, X, Y), -bracket_sections(A, Y, X));
    }
}

TEST(Algebroid, LeibnizExpansionOfScaledFrames) {
    RandomSource rs(8);
    const AlgebroidPatch A = rs.lie_algebroid(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const ExpPoly f = rs.poly(3, 2);
            const ExpPoly g = rs.poly(3, 2);
            // f g [e_i, e_j] + f rho(e_i)(g) e_j - g rho(e_j)(f) e_i
            const MultiVector expected = (f * g) * A.structure(i, j) +
                                         (f * anchor_apply(A, A.frame(i), g)) * A.frame(j) -
                                         (g * anchor_apply(A, A.frame(j), f)) * A.frame(i);
            EXPECT_EQ(bracket_sections(A, f * A.frame(i), g * A.frame(j)), expected);
        }
    }
}

TEST(Algebroid, AnchorExamples) {
    const AlgebroidPatch T = tangent({"x"});
    EXPECT_EQ(anchor_apply(T, T.frame(0), var(T, 0).pow(2)), ExpPoly::constant(1, 2) * var(T, 0));

    const AlgebroidPatch Z = make_trivial(make_patch({"x", "y"}), 3);
    RandomSource rs(9);
    EXPECT_TRUE(anchor_apply(Z, rs.multivector(Z, 1, 2), rs.poly(2, 3)).is_zero());

    const AlgebroidPatch base = tangent({"x", "y"});
    const JacobiAlgebroidData J = extend_with_R(base);
    for (int k = 0; k < 5; ++k) {
        const MultiVector X = rs.multivector(base, 1, 2);
        const ExpPoly f = rs.poly(2, 2);
        const ExpPoly g = rs.poly(2, 2);
        const MultiVector Xf = merge(J.A, X, MultiVector::scalar(f, base.rank()));
        EXPECT_EQ(anchor_apply(J.A, Xf, g), anchor_apply(base, X, g));
    }
}

TEST(Algebroid, ValidatorAcceptsConstructors) {
    EXPECT_TRUE(validate_algebroid(tangent({"a", "b", "c"})).passed());
    EXPECT_TRUE(validate_algebroid(make_trivial(make_patch({"a"}), 3)).passed());
    const AlgebroidPatch T = tangent({"x", "y"});
    EXPECT_TRUE(validate_algebroid(T).passed());
    EXPECT_TRUE(bracket_sections(tangent({"x"}), tangent({"x"}).frame(0), tangent({"x"}).frame(0)).is_zero());
    const JacobiAlgebroidData J = extend_with_R(tangent({"x", "y", "z"}));
    EXPECT_TRUE(validate_jacobi_algebroid(J).passed());
    EXPECT_TRUE(validate_algebroid(lift_bar(J)).passed());
    EXPECT_TRUE(validate_algebroid(lift_hat(J)).passed());
}

TEST(Algebroid, ValidatorReportsBrokenAnchorMorphism) {
    // [d/dx, d/dy] := d/dx contradicts the anchor: rho of the bracket is
    // d/dx while the commutator of d/dx and d/dy is zero.
    AlgebroidPatch T = tangent({"x", "y"});
    T.set_structure(0, 1, T.frame(0));
    const CheckResult r = validate_algebroid(T);
    ASSERT_TRUE(r.failed());
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NE(r.witness->residue, "0");
}

TEST(Algebroid, CrossProductConstantsSatisfyJacobi) {
    std::vector<std::vector<std::vector<Rational>>> c(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
    auto eps = [](int i, int j, int k) { return Rational(Rational((i - j) * (j - k) * (k - i)) / 2); };
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                c[i][j][k] = eps(i, j, k);
            }
        }
    }
    const AlgebroidPatch g = make_from_constants(make_patch({}), c);
    EXPECT_TRUE(validate_algebroid(g).passed());
    EXPECT_EQ(g.structure(0, 1), g.frame(2));

    // Jacobi fails for [e1,e2] = e1, [e2,e3] = e1, [e1,e3] = e2:
    // [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = 0 + [e2,-e2] + [e3,e1] = -e2.
    std::vector<std::vector<std::vector<Rational>>> b(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
    b[0][1][0] = 1;
    b[1][0][0] = -1;
    b[1][2][0] = 1;
    b[2][1][0] = -1;
    b[0][2][1] = 1;
    b[2][0][1] = -1;
    const CheckResult r = validate_algebroid(make_from_constants(make_patch({}), b));
    EXPECT_TRUE(r.failed());
}

TEST(Algebroid, ExtensionBracketFormula) {
    RandomSource rs(10);
    const AlgebroidPatch base = rs.lie_algebroid(2, 3);
    const JacobiAlgebroidData J = extend_with_R(base);
    const std::size_t r = base.rank();
    for (int k = 0; k < 8; ++k) {
        const MultiVector X = rs.multivector(base, 1, 2);
        const MultiVector Y = rs.multivector(base, 1, 2);
        const ExpPoly f = rs.poly(2, 2);
        const ExpPoly g = rs.poly(2, 2);
        const MultiVector lhs = bracket_sections(J.A, merge(J.A, X, MultiVector::scalar(f, r)),
                                                 merge(J.A, Y, MultiVector::scalar(g, r)));
        const ExpPoly h = anchor_apply(base, X, g) - anchor_apply(base, Y, f);
        EXPECT_EQ(lhs, merge(J.A, bracket_sections(base, X, Y), MultiVector::scalar(h, r)));
    }
}

TEST(Algebroid, ExtensionCosectionIsClosed) {
    const JacobiAlgebroidData J = extend_with_R(tangent({"x", "y"}));
    EXPECT_EQ(J.phi0, J.A.coframe(J.A.rank() - 1));
    EXPECT_TRUE(differential(J.A, J.phi0).is_zero());
}

TEST(Algebroid, ExtensionDifferentialSplits) {
    RandomSource rs(11);
    const AlgebroidPatch base = rs.lie_algebroid(2, 3);
    const JacobiAlgebroidData J = extend_with_R(base);
    for (std::size_t deg = 1; deg <= 3; ++deg) {
        const Form a = rs.form(base, deg, 2);
        const Form b = rs.form(base, deg - 1, 2);
        EXPECT_EQ(differential(J.A, merge(J.A, a, b)), merge(J.A, differential(base, a), -differential(base, b)));
    }
}

TEST(Algebroid, BarLiftWithZeroCosectionIsTheProduct) {
    RandomSource rs(12);
    const AlgebroidPatch A = rs.lie_algebroid(2, 3);
    const AlgebroidPatch bar = lift_bar(JacobiAlgebroidData(A));
    EXPECT_TRUE(bar.patch().lifted);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_TRUE(bar.anchor(A.nvars(), i).is_zero());
        for (std::size_t a = 0; a < A.nvars(); ++a) {
            EXPECT_EQ(bar.anchor(a, i), A.anchor(a, i));
        }
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(bar.structure(i, j), A.structure(i, j));
        }
    }
}

TEST(Algebroid, LiftedBracketsMatchTimeDependentFormulas) {
    RandomSource rs(13);
    for (int k = 0; k < 6; ++k) {
        const JacobiAlgebroidData J = rs.jacobi_algebroid(2, 3);
        const AlgebroidPatch bar = lift_bar(J);
        const AlgebroidPatch hat = lift_hat(J);
        const std::size_t t = J.A.nvars();
        const MultiVector X = rs.multivector(J.A, 1, 2, true, {-1, 0, 1});
        const MultiVector Y = rs.multivector(J.A, 1, 2, true, {-1, 0, 1});
        const ExpPoly px = pair(J.phi0, X);
        const ExpPoly py = pair(J.phi0, Y);
        const MultiVector dX = differentiate_coefficients(X, t);
        const MultiVector dY = differentiate_coefficients(Y, t);
        const MultiVector AXY = bracket_sections(J.A, X, Y);
        EXPECT_EQ(bracket_sections(bar, X, Y), AXY + px * dY - py * dX);
        const ExpPoly em = ExpPoly::exp_t(J.A.nvars(), -1);
        EXPECT_EQ(bracket_sections(hat, X, Y), em * (AXY + px * (dY - Y) - py * (dX - X)));
        const ExpPoly f = rs.poly(J.A.nvars(), 2, true, {0, 1});
        EXPECT_EQ(anchor_apply(bar, X, f), anchor_apply(J.A, X, f) + px * f.derivative(t));
        EXPECT_EQ(anchor_apply(hat, X, f), em * (anchor_apply(J.A, X, f) + px * f.derivative(t)));
    }
}

TEST(Algebroid, DifferentialSquaresToZeroExactlyOnValidAlgebroids) {
    RandomSource rs(14);
    const AlgebroidPatch A = rs.lie_algebroid(2, 3);
    ASSERT_TRUE(validate_algebroid(A).passed());
    for (int k = 0; k < 5; ++k) {
        const Form w = rs.form(A, 1, 2);
        EXPECT_TRUE(differential(A, differential(A, w)).is_zero());
    }
    // Break the anchor morphism: d^2 no longer vanishes on some frame form.
    AlgebroidPatch B = make_tangent(make_patch({"x", "y"}));
    B.set_structure(0, 1, B.frame(0));
    ASSERT_TRUE(validate_algebroid(B).failed());
    bool broken = false;
    for (std::size_t a = 0; a < B.nvars(); ++a) {
        const Form f = Form::scalar(ExpPoly::variable(B.nvars(), a), B.rank());
        broken = broken || !differential(B, differential(B, f)).is_zero();
    }
    EXPECT_TRUE(broken);
}
