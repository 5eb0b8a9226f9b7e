#include "jacobi/instances.hpp"

#include "jacobi/calculus.hpp"

namespace jacobi {

Patch contact_patch(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= n; ++i) {
        names.push_back("y" + std::to_string(i));
    }
    names.emplace_back("z");
    return make_patch(std::move(names));
}

Form canonical_contact_form(const AlgebroidPatch& tangent, std::size_t n) {
    const std::size_t nv = tangent.nvars();
    Form beta = tangent.coframe(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        beta -= ExpPoly::variable(nv, n + i) * tangent.coframe(i);
    }
    return beta;
}

Form contact_two_form(const JacobiAlgebroidData& J, const AlgebroidPatch& tangent, const Form& beta) {
    return merge(J.A, differential(tangent, beta), beta);
}

ContactJacobi canonical_contact_jacobi(const JacobiAlgebroidData& J, const AlgebroidPatch& tangent, std::size_t n) {
    const std::size_t nv = tangent.nvars();
    ContactJacobi out;
    out.E = tangent.frame(2 * n);
    out.Lambda = tangent.zero_vector(2);
    for (std::size_t i = 0; i < n; ++i) {
        MultiVector X = tangent.frame(i) + ExpPoly::variable(nv, n + i) * out.E;
        out.Lambda += wedge(X, tangent.frame(n + i));
    }
    out.pi = merge(J.A, out.Lambda, out.E);
    return out;
}

MongeAmpereData monge_ampere_data() {
    MongeAmpereData d;
    d.tangent = make_tangent(contact_patch(2));
    d.J = extend_with_R(d.tangent);
    const AlgebroidPatch& T = d.tangent;
    const std::size_t nv = T.nvars();
    // coordinates x1 x2 y1 y2 z
    auto coord = [&](std::size_t i) { return ExpPoly::variable(nv, i); };
    const Form dx1 = T.coframe(0);
    const Form dx2 = T.coframe(1);
    const Form dz = T.coframe(4);
    d.beta = canonical_contact_form(T, 2);
    d.beta_h = -coord(2) * dx1 + coord(3) * dx2 + dz;
    d.beta_e = -coord(3) * dx1 + coord(2) * dx2 + dz;
    d.beta_p = -coord(3) * dx1 + dz;
    d.Omega = contact_two_form(d.J, T, d.beta);
    d.omega_h = contact_two_form(d.J, T, d.beta_h);
    d.omega_e = contact_two_form(d.J, T, d.beta_e);
    d.omega_p = contact_two_form(d.J, T, d.beta_p);
    const TensorMap inv = inverse(flat_map(d.Omega));
    d.Pi = bivector_of(inv);
    d.N_h = compose(inv, flat_map(d.omega_h));
    d.N_e = compose(inv, flat_map(d.omega_e));
    d.N_p = compose(inv, flat_map(d.omega_p));
    return d;
}

int RandomSource::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rational RandomSource::rational(int bound) {
    int num = 0;
    while (num == 0) {
        num = integer(-bound, bound);
    }
    Rational q(num, integer(1, 2));
    q.canonicalize();
    return q;
}

ExpPoly RandomSource::poly(std::size_t nvars, unsigned degree, bool with_t, std::vector<int> weights) {
    ExpPoly out(nvars);
    const int terms = integer(1, 3);
    const std::size_t slots = nvars + (with_t ? 1 : 0);
    for (int k = 0; k < terms; ++k) {
        Exponents e(nvars + 1, 0);
        const int deg = integer(0, static_cast<int>(degree));
        for (int d = 0; d < deg && slots > 0; ++d) {
            ++e[static_cast<std::size_t>(integer(0, static_cast<int>(slots) - 1))];
        }
        const int w = weights[static_cast<std::size_t>(integer(0, static_cast<int>(weights.size()) - 1))];
        out += ExpPoly::term(nvars, w, std::move(e), rational());
    }
    return out;
}

namespace {

template <Kind K>
Graded<K> random_graded(RandomSource& rs, std::size_t rank, std::size_t nvars, std::size_t degree,
                        unsigned poly_degree, bool with_t, const std::vector<int>& weights) {
    Graded<K> out(rank, nvars, degree);
    if (degree > rank) {
        return out;
    }
    for (IndexMask m = 0; m < (IndexMask{1} << rank); ++m) {
        if (mask_degree(m) == degree && rs.integer(0, 2) != 0) {
            out.add(m, rs.poly(nvars, poly_degree, with_t, weights));
        }
    }
    return out;
}

// Constant Lie algebras of small dimension, as c[i][j][k].
using Constants = std::vector<std::vector<std::vector<Rational>>>;

Constants zero_constants(std::size_t k) {
    return Constants(k, std::vector<std::vector<Rational>>(k, std::vector<Rational>(k, 0)));
}

void set_bracket(Constants& c, std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
    c[i][j][k] = v;
    c[j][i][k] = -v;
}

Constants random_lie_algebra(RandomSource& rs, std::size_t k) {
    Constants c = zero_constants(k);
    if (k == 2 && rs.integer(0, 1) == 1) {
        set_bracket(c, 0, 1, 1, 1);  // aff(1)
    } else if (k == 3) {
        switch (rs.integer(0, 3)) {
            case 0:  // so(3)
                set_bracket(c, 0, 1, 2, 1);
                set_bracket(c, 1, 2, 0, 1);
                set_bracket(c, 2, 0, 1, 1);
                break;
            case 1:  // Heisenberg
                set_bracket(c, 0, 1, 2, 1);
                break;
            case 2:  // sl(2): [h,e]=2e, [h,f]=-2f, [e,f]=h
                set_bracket(c, 0, 1, 1, 2);
                set_bracket(c, 0, 2, 2, -2);
                set_bracket(c, 1, 2, 0, 1);
                break;
            default:
                break;
        }
    } else if (k == 4) {
        switch (rs.integer(0, 2)) {
            case 0:  // aff(1) + aff(1)
                set_bracket(c, 0, 1, 1, 1);
                set_bracket(c, 2, 3, 3, 1);
                break;
            case 1:  // Heisenberg + R
                set_bracket(c, 0, 1, 2, 1);
                break;
            default:
                break;
        }
    }
    return c;
}

}  // namespace

MultiVector RandomSource::multivector(const AlgebroidPatch& A, std::size_t degree, unsigned poly_degree, bool with_t,
                                      std::vector<int> weights) {
    return random_graded<Kind::vector>(*this, A.rank(), A.nvars(), degree, poly_degree, with_t, weights);
}

Form RandomSource::form(const AlgebroidPatch& A, std::size_t degree, unsigned poly_degree, bool with_t,
                        std::vector<int> weights) {
    return random_graded<Kind::form>(*this, A.rank(), A.nvars(), degree, poly_degree, with_t, weights);
}

TensorMap RandomSource::unipotent(Side side, std::size_t r, std::size_t nvars) {
    TensorMap G = TensorMap::identity(side, r, nvars);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (integer(0, 1) == 1) {
                G.set(i, j, poly(nvars, 1));
            }
        }
    }
    return G;
}

AlgebroidPatch RandomSource::lie_algebroid(std::size_t n, std::size_t r) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    const Patch patch = make_patch(std::move(names));
    const std::size_t m = static_cast<std::size_t>(integer(0, static_cast<int>(std::min(n, r))));
    const std::size_t k = r - m;
    const Constants c = random_lie_algebra(*this, k);
    AlgebroidPatch base(patch, r);
    for (std::size_t i = 0; i < m; ++i) {
        base.set_anchor(i, i, ExpPoly::one(n));
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            MultiVector v = base.zero_vector(1);
            for (std::size_t l = 0; l < k; ++l) {
                if (c[i][j][l] != 0) {
                    v.add(IndexMask{1} << (m + l), ExpPoly::constant(n, c[i][j][l]));
                }
            }
            base.set_structure(m + i, m + j, v);
        }
    }
    // new frame e'_i = sum_j G(i,j) e_j; components transform by (G^T)^{-1}
    const TensorMap G = unipotent(Side::A, r, n);
    TensorMap Gt(Side::A, Side::A, r, n);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            Gt.set(i, j, G(j, i));
        }
    }
    const TensorMap back = inverse(Gt);
    std::vector<MultiVector> frames;
    for (std::size_t i = 0; i < r; ++i) {
        MultiVector e = base.zero_vector(1);
        for (std::size_t j = 0; j < r; ++j) {
            e.add(IndexMask{1} << j, G(i, j));
        }
        frames.push_back(std::move(e));
    }
    AlgebroidPatch out(patch, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t var = 0; var < n; ++var) {
            ExpPoly a(n);
            for (std::size_t j = 0; j < r; ++j) {
                if (!G(i, j).is_zero()) {
                    a += G(i, j) * base.anchor(var, j);
                }
            }
            out.set_anchor(var, i, a);
        }
        for (std::size_t j = i + 1; j < r; ++j) {
            out.set_structure(i, j, apply<Kind::vector>(back, bracket_sections(base, frames[i], frames[j])));
        }
    }
    return out;
}

JacobiAlgebroidData RandomSource::jacobi_algebroid(std::size_t n, std::size_t r) {
    if (r >= 2 && integer(0, 1) == 1) {
        JacobiAlgebroidData J = extend_with_R(lie_algebroid(n, r - 1));
        J.phi0 += differential(J.A, Form::scalar(poly(n, 2), J.A.rank()));
        return J;
    }
    AlgebroidPatch A = lie_algebroid(n, r);
    Form phi = differential(A, Form::scalar(poly(n, 2), r));
    return JacobiAlgebroidData(std::move(A), std::move(phi));
}

JacobiBialgebroidData RandomSource::loose_pair(std::size_t n, std::size_t r) {
    JacobiBialgebroidData B;
    B.A_side = jacobi_algebroid(n, r);
    JacobiAlgebroidData D = jacobi_algebroid(n, r);
    B.Astar = dual_frame_algebroid(B.A_side.A, D.A);
    B.X0 = flip(D.phi0);
    return B;
}

}  // namespace jacobi
