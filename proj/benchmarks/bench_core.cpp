#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "jacobi/calculus.hpp"
#include "jacobi/dirac.hpp"
#include "jacobi/dsl/interpreter.hpp"
#include "jacobi/instances.hpp"
#include "jacobi/lift.hpp"
#include "jacobi/structures.hpp"

using namespace jacobi;

namespace {

const MongeAmpereData& data() {
    static const MongeAmpereData d = monge_ampere_data();
    return d;
}

void BM_PolyProduct(benchmark::State& state) {
    RandomSource rs(1);
    const ExpPoly a = rs.poly(5, static_cast<unsigned>(state.range(0)), true, {-1, 0, 1});
    const ExpPoly b = rs.poly(5, static_cast<unsigned>(state.range(0)), true, {-1, 0, 1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_PolyProduct)->Arg(2)->Arg(4);

void BM_Differential(benchmark::State& state) {
    RandomSource rs(2);
    const JacobiAlgebroidData J = rs.jacobi_algebroid(3, static_cast<std::size_t>(state.range(0)));
    const Form w = rs.form(J.A, 2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(differential(J, w));
    }
}
BENCHMARK(BM_Differential)->Arg(4)->Arg(6);

void BM_SchoutenContact(benchmark::State& state) {
    const auto& d = data();
    const ContactJacobi c = canonical_contact_jacobi(d.J, d.tangent, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi0_schouten(d.J, c.pi, c.pi));
    }
}
BENCHMARK(BM_SchoutenContact);

void BM_TorsionCheck(benchmark::State& state) {
    const auto& d = data();
    for (auto _ : state) {
        benchmark::DoNotOptimize(torsion_tensor_check(d.J.A, d.N_h));
    }
}
BENCHMARK(BM_TorsionCheck);

void BM_DiracPair(benchmark::State& state) {
    const auto& d = data();
    const JacobiBialgebroidData B = standard_bialgebroid(d.J);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dirac_pair_check(B, GraphRelation::flat(d.Omega), GraphRelation::flat(d.omega_h)));
    }
}
BENCHMARK(BM_DiracPair);

void BM_LiftScaling(benchmark::State& state) {
    const auto& d = data();
    const LiftedInstance L = lift_instance(d.J);
    const ContactJacobi c = canonical_contact_jacobi(d.J, d.tangent, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_bracket_scaling(L, c.pi, d.omega_h));
    }
}
BENCHMARK(BM_LiftScaling);

void BM_ExampleScript(benchmark::State& state) {
    std::ifstream in(JACOBI_EXAMPLES_DIR "/paper.jac");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    for (auto _ : state) {
        benchmark::DoNotOptimize(dsl::run_script(text));
    }
}
BENCHMARK(BM_ExampleScript)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
