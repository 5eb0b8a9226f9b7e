#include <gtest/gtest.h>

#include "jacobi/calculus.hpp"
#include "jacobi/instances.hpp"
#include "jacobi/lift.hpp"
#include "jacobi/structures.hpp"
#include "support.hpp"

using namespace jacobi;

namespace {

const MongeAmpereData& data() {
    static const MongeAmpereData d = monge_ampere_data();
    return d;
}

}  // namespace

TEST(Lift, LiftsCarryExponentialWeights) {
    const auto& d = data();
    const LiftedInstance L = lift_instance(d.J);
    const ContactJacobi c = canonical_contact_jacobi(d.J, d.tangent, 2);
    const std::size_t n = d.J.A.nvars();
    EXPECT_EQ(L.lift(c.pi), ExpPoly::exp_t(n, -1) * c.pi);
    EXPECT_EQ(L.lift(d.Omega), ExpPoly::exp_t(n, 1) * d.Omega);
    EXPECT_TRUE(L.lifted.A_side.A.patch().lifted);
    EXPECT_TRUE(L.lifted.A_side.phi0.is_zero());
    EXPECT_TRUE(L.lifted.X0.is_zero());
}

TEST(Lift, LiftedAlgebroidsAreLie) {
    RandomSource rs(70);
    for (int k = 0; k < 8; ++k) {
        const JacobiAlgebroidData J = rs.jacobi_algebroid(2, 3);
        ASSERT_TRUE(validate_jacobi_algebroid(J).passed());
        const CheckResult bar = validate_algebroid(lift_bar(J));
        const CheckResult hat = validate_algebroid(lift_hat(J));
        EXPECT_TRUE(bar.passed()) << bar.note;
        EXPECT_TRUE(hat.passed()) << hat.note;
    }
    EXPECT_TRUE(validate_algebroid(lift_bar(data().J)).passed());
    EXPECT_TRUE(validate_algebroid(lift_hat(data().J)).passed());
}

TEST(Lift, BarDifferentialOfTIsTwist) {
    const auto& d = data();
    const std::size_t n = d.J.A.nvars();
    const Form t = Form::scalar(ExpPoly::t(n), d.J.A.rank());
    EXPECT_EQ(differential(lift_bar(d.J), t), d.J.phi0);
    EXPECT_EQ(differential(lift_hat(d.J), t), ExpPoly::exp_t(n, -1) * d.J.phi0);
}

TEST(Lift, ScalingIdentitiesOnContactData) {
    const auto& d = data();
    const LiftedInstance L = lift_instance(d.J);
    const ContactJacobi c = canonical_contact_jacobi(d.J, d.tangent, 2);
    for (const Form* w : {&d.Omega, &d.omega_h, &d.omega_e, &d.omega_p}) {
        const CheckResult r = verify_bracket_scaling(L, c.pi, *w);
        EXPECT_TRUE(r.passed()) << r.note;
    }
}

TEST(Lift, ScalingIdentitiesOnRandomInstances) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomSource rs(seed);
        const JacobiBialgebroidData B = rs.loose_pair(2, 3);
        const LiftedInstance L = lift_instance(B);
        const MultiVector pi = rs.multivector(B.A_side.A, 2, 1);
        const Form w = rs.form(B.A_side.A, 2, 1);
        const CheckResult r = verify_bracket_scaling(L, pi, w);
        EXPECT_TRUE(r.passed()) << "seed " << seed << ": " << r.note;
    }
}

TEST(Lift, HatAndBarDifferentialFormulas) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomSource rs(seed);
        const JacobiAlgebroidData J = rs.jacobi_algebroid(2, 3);
        const ExpPoly f = rs.poly(2, 2, true, {-1, 0, 1});
        const Form phi = rs.form(J.A, 1, 1, true, {-1, 0, 1});
        const CheckResult r = verify_hat_bar_differentials(J, f, phi);
        EXPECT_TRUE(r.passed()) << "seed " << seed << ": " << r.note;
    }
}

TEST(Lift, DiracPairsAgreeAcrossLevels) {
    const auto& d = data();
    const JacobiBialgebroidData B = standard_bialgebroid(d.J);
    const auto Om = GraphRelation::flat(d.Omega);
    for (const Form* w : {&d.omega_h, &d.omega_e, &d.omega_p}) {
        const CheckResult r = theorem_main1_crosscheck(B, Om, GraphRelation::flat(*w));
        EXPECT_TRUE(r.passed()) << r.note;
    }
}

TEST(Lift, PerturbedPairFailsOnBothLevels) {
    const auto& d = data();
    const JacobiBialgebroidData B = standard_bialgebroid(d.J);
    const LiftedInstance L = lift_instance(B);
    const Form bad = d.omega_h + ExpPoly::variable(5, 0) * wedge(d.J.A.coframe(1), d.J.A.coframe(3));
    const CheckResult down = dirac_pair_check(B, GraphRelation::flat(d.Omega), GraphRelation::flat(bad));
    const CheckResult up =
        dirac_pair_check(L.lifted, GraphRelation::flat(L.lift(d.Omega)), GraphRelation::flat(L.lift(bad)));
    EXPECT_TRUE(down.failed());
    EXPECT_TRUE(up.failed());
    EXPECT_TRUE(theorem_main1_crosscheck(B, GraphRelation::flat(d.Omega), GraphRelation::flat(bad)).passed());
}

TEST(Lift, RecursionOperatorsAreUnchangedByLifting) {
    const auto& d = data();
    const LiftedInstance L = lift_instance(d.J);
    const TensorMap Fi = inverse(flat_map(L.lift(d.Omega)));
    EXPECT_EQ(compose(Fi, flat_map(L.lift(d.omega_h))), d.N_h);
    EXPECT_EQ(compose(Fi, flat_map(L.lift(d.omega_e))), d.N_e);
    EXPECT_EQ(compose(Fi, flat_map(L.lift(d.omega_p))), d.N_p);
}
