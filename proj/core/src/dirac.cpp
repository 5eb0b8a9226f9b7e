#include "jacobi/dirac.hpp"

#include "jacobi/calculus.hpp"
#include "jacobi/printing.hpp"
#include "jacobi/structures.hpp"

namespace jacobi {

namespace {

using Column = std::vector<ExpPoly>;

template <Kind K>
Column to_column(const Graded<K>& v) {
    Column out(v.rank(), ExpPoly(v.nvars()));
    for (const auto& [m, c] : v.components()) {
        out[static_cast<std::size_t>(std::countr_zero(m))] = c;
    }
    return out;
}

template <Kind K>
Graded<K> from_column(const Column& c, std::size_t nvars) {
    Graded<K> out(c.size(), nvars, 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.add(IndexMask{1} << i, c[i]);
    }
    return out;
}

Column apply_column(const TensorMap& m, const Column& v) {
    Column out(m.rank(), ExpPoly(m.nvars()));
    for (std::size_t i = 0; i < m.rank(); ++i) {
        for (std::size_t j = 0; j < m.rank(); ++j) {
            if (!m(i, j).is_zero() && !v[j].is_zero()) {
                out[i] += m(i, j) * v[j];
            }
        }
    }
    return out;
}

Column matrix_column(const TensorMap& m, std::size_t k) {
    Column out;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        out.push_back(m(i, k));
    }
    return out;
}

MultiVector vec(const Column& c, std::size_t nvars) { return from_column<Kind::vector>(c, nvars); }
Form cov(const Column& c, std::size_t nvars) { return from_column<Kind::form>(c, nvars); }

// {0} together with the frame coefficients and their coordinate multiples.
std::vector<Column> candidate_columns(const AlgebroidPatch& A) {
    const std::size_t r = A.rank();
    const std::size_t n = A.nvars();
    std::vector<Column> out;
    out.emplace_back(r, ExpPoly(n));
    const std::size_t vars = A.patch().lifted ? n + 1 : n;
    for (std::size_t a = 0; a <= vars; ++a) {
        for (std::size_t i = 0; i < r; ++i) {
            Column c(r, ExpPoly(n));
            c[i] = a == 0 ? ExpPoly::one(n) : ExpPoly::variable(n, a - 1);
            out.push_back(std::move(c));
        }
    }
    return out;
}

bool is_zero_column(const Column& c) {
    for (const auto& e : c) {
        if (!e.is_zero()) {
            return false;
        }
    }
    return true;
}

std::string graph_text(const GraphRelation& L, const AlgebroidPatch& A) {
    return L.kind == GraphRelation::Kind::sharp ? "sharp(" + to_text(L.pi, A) + ")"
                                                : "flat(" + to_text(L.omega, A) + ")";
}

CheckResult member_check(const JacobiBialgebroidData& B, const GraphRelation& L) {
    CheckResult r = L.kind == GraphRelation::Kind::sharp ? maurer_cartan_check(B, L.pi)
                                                          : maurer_cartan_check(B, L.omega);
    if (r.failed()) {
        r.strategy = "member is not a Dirac structure";
    }
    return r;
}

struct Triple {
    Column alpha;
    Column beta;
    Column gamma;
};

struct Element {
    Column X;
    Column Y;
    std::string text;
};

CheckResult evaluate_family(const AlgebroidPatch& A, const std::vector<Element>& elements,
                            const std::vector<Triple>& triples, const std::string& strategy) {
    const std::size_t n = A.nvars();
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            const auto& e1 = elements[i];
            const auto& e2 = elements[j];
            for (const auto& tr : triples) {
                ExpPoly v = relation_torsion(A, vec(e1.X, n), vec(e1.Y, n), vec(e2.X, n), vec(e2.Y, n),
                                             cov(tr.alpha, n), cov(tr.beta, n), cov(tr.gamma, n));
                ++evaluated;
                if (!v.is_zero()) {
                    return CheckResult::fail(
                        strategy, Witness{"torsion of N_{L,L'}",
                                          {e1.text, e2.text, to_text(cov(tr.alpha, n), A),
                                           to_text(cov(tr.beta, n), A), to_text(cov(tr.gamma, n), A)},
                                          to_text(v, A.patch())});
                }
            }
        }
    }
    return CheckResult::inconclusive(strategy, "torsion vanished on " + std::to_string(evaluated) +
                                                    " evaluations; the family need not span the domain");
}

}  // namespace

MultiVector torsion_tensor(const AlgebroidPatch& A, const TensorMap& N, const MultiVector& X, const MultiVector& Y) {
    if (N.source() != Side::A || N.target() != Side::A) {
        throw ShapeMismatch("torsion needs an endomorphism of A");
    }
    auto Nof = [&](const MultiVector& v) { return apply<Kind::vector>(N, v); };
    const MultiVector NX = Nof(X);
    const MultiVector NY = Nof(Y);
    return bracket_sections(A, NX, NY) - Nof(bracket_sections(A, NX, Y)) - Nof(bracket_sections(A, X, NY)) +
           Nof(Nof(bracket_sections(A, X, Y)));
}

CheckResult torsion_tensor_check(const AlgebroidPatch& A, const TensorMap& N) {
    for (std::size_t i = 0; i < A.rank(); ++i) {
        for (std::size_t j = i + 1; j < A.rank(); ++j) {
            MultiVector T = torsion_tensor(A, N, A.frame(i), A.frame(j));
            if (!T.is_zero()) {
                return CheckResult::fail("frame pairs", Witness{"T_N(X,Y)",
                                                                {to_text(A.frame(i), A), to_text(A.frame(j), A)},
                                                                to_text(T, A)});
            }
        }
    }
    return CheckResult::pass("frame pairs");
}

CheckResult flattened_torsion_check(const AlgebroidPatch& A, const TensorMap& N, const Form& omega) {
    const TensorMap f = flat_map(omega);
    for (std::size_t i = 0; i < A.rank(); ++i) {
        for (std::size_t j = i + 1; j < A.rank(); ++j) {
            Form T = apply<Kind::form>(f, torsion_tensor(A, N, A.frame(i), A.frame(j)));
            if (!T.is_zero()) {
                return CheckResult::fail("frame pairs",
                                         Witness{"omega_flat(T_N(X,Y))",
                                                 {to_text(A.frame(i), A), to_text(A.frame(j), A)},
                                                 to_text(T, A)});
            }
        }
    }
    return CheckResult::pass("frame pairs");
}

bool in_torsion_domain(const MultiVector& pi1, const MultiVector& pi2, const CosectionTriple& c) {
    const TensorMap s1 = sharp_map(pi1);
    const TensorMap s2 = sharp_map(pi2);
    return apply<Kind::vector>(s2, c.xi1) == apply<Kind::vector>(s1, c.xi) &&
           apply<Kind::vector>(s2, c.xi2) == apply<Kind::vector>(s1, c.xi1);
}

ExpPoly torsion_triple(const JacobiAlgebroidData& J, const MultiVector& pi1, const MultiVector& pi2, const Form& a,
                       const Form& b, const CosectionTriple& c) {
    const MultiVector p11 = phi0_schouten(J, pi1, pi1);
    const MultiVector p22 = phi0_schouten(J, pi2, pi2);
    const MultiVector p12 = phi0_schouten(J, pi1, pi2);
    return evaluate_on(p11, {a, b, c.xi}) + evaluate_on(p22, {a, b, c.xi2}) -
           Rational(2) * evaluate_on(p12, {a, b, c.xi1});
}

ExpPoly relation_torsion(const AlgebroidPatch& A, const MultiVector& X1, const MultiVector& Y1,
                         const MultiVector& X2, const MultiVector& Y2, const Form& alpha, const Form& beta,
                         const Form& gamma) {
    return pair(alpha, bracket_sections(A, Y1, Y2)) -
           pair(beta, bracket_sections(A, Y1, X2) + bracket_sections(A, X1, Y2)) +
           pair(gamma, bracket_sections(A, X1, X2));
}

ExpPoly torsion_triple_raw(const AlgebroidPatch& A, const MultiVector& pi1, const MultiVector& pi2, const Form& a,
                           const Form& b, const CosectionTriple& c) {
    const TensorMap s1 = sharp_map(pi1);
    const TensorMap s2 = sharp_map(pi2);
    return relation_torsion(A, apply<Kind::vector>(s2, a), apply<Kind::vector>(s1, a), apply<Kind::vector>(s2, b),
                            apply<Kind::vector>(s1, b), c.xi, c.xi1, c.xi2);
}

GraphRelation GraphRelation::sharp(MultiVector p) {
    if (p.degree() != 2) {
        throw ShapeMismatch("sharp graph needs a 2-section");
    }
    GraphRelation g;
    g.kind = Kind::sharp;
    g.pi = std::move(p);
    return g;
}

GraphRelation GraphRelation::flat(Form w) {
    if (w.degree() != 2) {
        throw ShapeMismatch("flat graph needs a 2-cosection");
    }
    GraphRelation g;
    g.kind = Kind::flat;
    g.omega = std::move(w);
    return g;
}

TensorMap GraphRelation::param_A() const {
    if (kind == Kind::sharp) {
        return sharp_map(pi);
    }
    return TensorMap::identity(Side::A, omega.rank(), omega.nvars());
}

TensorMap GraphRelation::param_Astar() const {
    if (kind == Kind::sharp) {
        return TensorMap::identity(Side::Astar, pi.rank(), pi.nvars());
    }
    return flat_map(omega);
}

const char* strategy_name(PairStrategy s) {
    switch (s) {
        case PairStrategy::automatic:
            return "automatic";
        case PairStrategy::compatibility:
            return "compatibility";
        case PairStrategy::invertible:
            return "invertible";
        case PairStrategy::witness:
            return "witness";
    }
    return "?";
}

std::optional<ParametrizedRelation> compose_relation(const GraphRelation& L, const GraphRelation& L2) {
    // N = {(P2 s2, P s) : Q2 s2 = Q s}
    const TensorMap P = L.param_A();
    const TensorMap Q = L.param_Astar();
    const TensorMap P2 = L2.param_A();
    const TensorMap Q2 = L2.param_Astar();
    if (is_invertible(Q2)) {
        return ParametrizedRelation{compose(P2, compose(inverse(Q2), Q)), P};
    }
    if (is_invertible(Q)) {
        return ParametrizedRelation{P2, compose(P, compose(inverse(Q), Q2))};
    }
    return std::nullopt;
}

namespace {

std::optional<TensorMap> tensor_of(const ParametrizedRelation& R) {
    if (is_invertible(R.U)) {
        return compose(R.W, inverse(R.U));
    }
    if (is_invertible(R.W)) {
        return compose(R.U, inverse(R.W));
    }
    return std::nullopt;
}

CheckResult witness_parametrized(const AlgebroidPatch& A, const ParametrizedRelation& R,
                                 const std::vector<CosectionTriple>& user) {
    const std::size_t r = A.rank();
    std::vector<Element> elements;
    for (std::size_t k = 0; k < r; ++k) {
        Element e{matrix_column(R.U, k), matrix_column(R.W, k), {}};
        e.text = "(" + to_text(vec(e.X, A.nvars()), A) + ", " + to_text(vec(e.Y, A.nvars()), A) + ")";
        elements.push_back(std::move(e));
    }
    const TensorMap Ut = transpose(R.U);
    const TensorMap Wt = transpose(R.W);
    std::vector<Triple> triples;
    if (!user.empty()) {
        for (const auto& c : user) {
            Triple t{to_column(c.xi), to_column(c.xi1), to_column(c.xi2)};
            if (!(apply_column(Ut, t.beta) == apply_column(Wt, t.alpha)) ||
                !(apply_column(Ut, t.gamma) == apply_column(Wt, t.beta))) {
                throw InvalidStructure("supplied triple is not in the torsion domain");
            }
            triples.push_back(std::move(t));
        }
    } else {
        const auto cands = candidate_columns(A);
        std::vector<Column> ut, wt;
        for (const auto& c : cands) {
            ut.push_back(apply_column(Ut, c));
            wt.push_back(apply_column(Wt, c));
        }
        // (a, b) admissible when U^T b = W^T a.
        for (std::size_t a = 0; a < cands.size(); ++a) {
            for (std::size_t b = 0; b < cands.size(); ++b) {
                if (!(ut[b] == wt[a])) {
                    continue;
                }
                for (std::size_t g = 0; g < cands.size(); ++g) {
                    if (a == 0 && b == 0 && g == 0) {
                        continue;
                    }
                    if (ut[g] == wt[b]) {
                        triples.push_back(Triple{cands[a], cands[b], cands[g]});
                    }
                }
            }
        }
    }
    if (triples.empty()) {
        return CheckResult::inconclusive("witness triples", "no nonzero domain triple in the family");
    }
    return evaluate_family(A, elements, triples, "witness triples");
}

// N = {(s2, s) : w2_flat s2 = w1_flat s} with neither flat map invertible.
CheckResult witness_flat_flat(const AlgebroidPatch& A, const Form& w1, const Form& w2) {
    const TensorMap f1 = flat_map(w1);
    const TensorMap f2 = flat_map(w2);
    const std::size_t n = A.nvars();
    const auto cands = candidate_columns(A);
    std::vector<Column> a1, a2;
    for (const auto& c : cands) {
        a1.push_back(apply_column(f1, c));
        a2.push_back(apply_column(f2, c));
    }
    std::vector<Element> elements;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (std::size_t j = 0; j < cands.size(); ++j) {
            if ((i != 0 || j != 0) && a2[i] == a1[j]) {
                elements.push_back(Element{cands[i], cands[j],
                                           "(" + to_text(vec(cands[i], n), A) + ", " +
                                               to_text(vec(cands[j], n), A) + ")"});
            }
        }
    }
    // (alpha, beta, gamma) = (w1_flat h1, w2_flat h1, w2_flat h2) with w2_flat h1 = w1_flat h2.
    std::vector<Triple> triples;
    for (std::size_t h1 = 0; h1 < cands.size(); ++h1) {
        for (std::size_t h2 = 0; h2 < cands.size(); ++h2) {
            if (a2[h1] == a1[h2]) {
                Triple t{a1[h1], a2[h1], a2[h2]};
                if (!is_zero_column(t.alpha) || !is_zero_column(t.beta) || !is_zero_column(t.gamma)) {
                    triples.push_back(std::move(t));
                }
            }
        }
    }
    if (elements.size() < 2 || triples.empty()) {
        return CheckResult::inconclusive("witness triples", "no nonzero domain triple in the family");
    }
    return evaluate_family(A, elements, triples, "witness triples");
}

CheckResult compatibility_strategy(const JacobiAlgebroidData& J, const GraphRelation& L, const GraphRelation& L2) {
    const std::string strategy = "compatibility";
    if (L.kind != GraphRelation::Kind::sharp || L2.kind != GraphRelation::Kind::sharp) {
        return CheckResult::inconclusive(strategy, "compatibility applies to two sharp graphs only");
    }
    for (const auto* p : {&L.pi, &L2.pi}) {
        if (!phi0_schouten(J, *p, *p).is_zero()) {
            return CheckResult::inconclusive(strategy, "a member is not a Jacobi structure of (A, phi0)");
        }
    }
    if (!phi0_schouten(J, L.pi, L2.pi).is_zero()) {
        return CheckResult::inconclusive(strategy, "[pi1,pi2]_phi0 is nonzero; compatibility is only sufficient");
    }
    return CheckResult::pass(strategy);
}

}  // namespace

CheckResult dirac_pair_check(const JacobiBialgebroidData& B, const GraphRelation& L, const GraphRelation& L2,
                             PairStrategy strategy, const std::vector<CosectionTriple>& triples) {
    const AlgebroidPatch& A = B.A_side.A;
    for (const auto* g : {&L, &L2}) {
        if (g->kind == GraphRelation::Kind::sharp) {
            A.require(g->pi);
        } else {
            A.require(g->omega);
        }
    }
    for (const auto* g : {&L, &L2}) {
        CheckResult m = member_check(B, *g);
        if (m.failed()) {
            return m;
        }
    }
    const auto R = compose_relation(L, L2);

    auto invertible = [&]() -> CheckResult {
        if (R) {
            if (auto T = tensor_of(*R)) {
                CheckResult t = torsion_tensor_check(A, *T);
                t.strategy = "invertible reduction";
                if (t.failed()) {
                    t.witness->identity = "T_N for N = " + to_text(*T, A);
                }
                return t;
            }
        }
        return CheckResult::inconclusive("invertible reduction", "N_{L,L'} is not the graph of a bundle map");
    };
    auto witness = [&]() -> CheckResult {
        if (R) {
            return witness_parametrized(A, *R, triples);
        }
        if (!triples.empty()) {
            throw InvalidStructure("witness triples need a member with invertible A*-part");
        }
        return witness_flat_flat(A, L.omega, L2.omega);
    };

    switch (strategy) {
        case PairStrategy::invertible:
            return invertible();
        case PairStrategy::compatibility:
            return compatibility_strategy(B.A_side, L, L2);
        case PairStrategy::witness:
            return witness();
        case PairStrategy::automatic:
            break;
    }
    if (CheckResult r = invertible(); r.status != Status::inconclusive) {
        return r;
    }
    if (CheckResult r = compatibility_strategy(B.A_side, L, L2); r.passed()) {
        return r;
    }
    CheckResult w = witness();
    if (w.status == Status::inconclusive) {
        w.note = "no complete strategy applies (" + graph_text(L, A) + ", " + graph_text(L2, A) + "); " + w.note;
    }
    return w;
}

Form omega_n(const Form& omega, const TensorMap& N) { return two_form_of(compose(flat_map(omega), N)); }

CheckResult jomega_check(const JacobiAlgebroidData& J, const MultiVector& pi, const Form& omega) {
    J.A.require(pi);
    J.A.require(omega);
    const TensorMap N = compose(sharp_map(pi), flat_map(omega));
    CheckResult wn = presymplectic_check(J, omega_n(omega, N));
    if (wn.failed()) {
        wn.witness->identity = "d_phi(omega_N)";
    }
    return all_of({jacobi_check(J, pi), presymplectic_check(J, omega), wn}, "direct");
}

CheckResult omegan_check(const JacobiAlgebroidData& J, const Form& omega, const TensorMap& N, bool weak) {
    const AlgebroidPatch& A = J.A;
    A.require(omega);
    const TensorMap f = flat_map(omega);
    const TensorMap residue = compose(f, N) - compose(transpose(N), f);
    if (!residue.is_zero()) {
        return CheckResult::fail("direct",
                                 Witness{"omega_flat o N - N* o omega_flat", {to_text(omega, A), to_text(N, A)},
                                         to_text(residue, A)});
    }
    CheckResult torsion = weak ? flattened_torsion_check(A, N, omega) : torsion_tensor_check(A, N);
    CheckResult wn = presymplectic_check(J, omega_n(omega, N));
    if (wn.failed()) {
        wn.witness->identity = "d_phi(omega_N)";
    }
    return all_of({torsion, presymplectic_check(J, omega), wn}, weak ? "direct (weak)" : "direct");
}

CheckResult jacobi_pair_check(const JacobiAlgebroidData& J, const MultiVector& pi1, const MultiVector& pi2,
                              PairStrategy strategy) {
    return dirac_pair_check(standard_bialgebroid(J), GraphRelation::sharp(pi1), GraphRelation::sharp(pi2),
                            strategy);
}

CheckResult presymplectic_pair_check(const JacobiAlgebroidData& J, const Form& w1, const Form& w2,
                                     PairStrategy strategy) {
    return dirac_pair_check(standard_bialgebroid(J), GraphRelation::flat(w1), GraphRelation::flat(w2), strategy);
}

CheckResult symplectic_pair_check(const JacobiAlgebroidData& J, const Form& w1, const Form& w2,
                                  PairStrategy strategy) {
    CheckResult pairv = presymplectic_pair_check(J, w1, w2, strategy);
    CheckResult n1 = nondegenerate_check(flat_map(w1), J.A);
    CheckResult n2 = nondegenerate_check(flat_map(w2), J.A);
    return all_of({n1, n2, pairv}, pairv.strategy);
}

CheckResult hamiltonian_pair_check(const JacobiAlgebroidData& J, const MultiVector& pi1, const MultiVector& pi2) {
    return all_of({jacobi_check(J, pi1), jacobi_check(J, pi2), compat_check(J, pi1, pi2)}, "compatibility");
}

CheckResult image_condition_check(const MultiVector& pi1, const MultiVector& pi2, const AlgebroidPatch& A) {
    const ExpPoly d1 = determinant(sharp_map(pi1));
    const ExpPoly d2 = determinant(sharp_map(pi2));
    const std::string strategy = "unit determinant";
    if (d1.is_unit() && d2.is_unit()) {
        return CheckResult::pass(strategy);
    }
    if ((d1.is_unit() && d2.is_zero()) || (d2.is_unit() && d1.is_zero())) {
        const MultiVector& degenerate = d1.is_zero() ? pi1 : pi2;
        return CheckResult::fail(strategy, Witness{"Im of a degenerate sharp map is a proper subbundle",
                                                   {to_text(degenerate, A)},
                                                   "det = 0"});
    }
    return CheckResult::inconclusive(strategy, "image membership is not decidable over the coefficient ring");
}

}  // namespace jacobi
