#ifndef JACOBI_TEST_SUPPORT_HPP
#define JACOBI_TEST_SUPPORT_HPP

#include "jacobi/algebroid.hpp"
#include "jacobi/calculus.hpp"
#include "jacobi/instances.hpp"
#include "jacobi/printing.hpp"
#include "jacobi/tensor_map.hpp"

#include <ostream>

namespace jacobi {

// gtest printers: coordinates are shown as x1..xn.
inline Patch generic_patch(std::size_t nvars) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) {
        names.push_back("x" + std::to_string(i + 1));
    }
    return Patch(names);
}
inline void PrintTo(const ExpPoly& f, std::ostream* os) { *os << to_text(f, generic_patch(f.nvars())); }
template <Kind K>
void PrintTo(const Graded<K>& u, std::ostream* os) {
    *os << "deg " << u.degree() << " {";
    for (const auto& [m, c] : u.components()) {
        *os << " [";
        for (std::size_t i : mask_indices(m)) {
            *os << i;
        }
        *os << "]: " << to_text(c, generic_patch(u.nvars()));
    }
    *os << " }";
}
inline void PrintTo(Status s, std::ostream* os) { *os << status_name(s); }

}  // namespace jacobi

namespace test_support {

using namespace jacobi;

inline AlgebroidPatch tangent(std::vector<std::string> names) { return make_tangent(make_patch(std::move(names))); }

// Value of a k-form on k sections, from the frame components.
inline ExpPoly eval_form(const Form& w, const std::vector<MultiVector>& xs) {
    if (xs.empty()) {
        return w.as_scalar();
    }
    return evaluate_on(w, xs);
}

// Koszul formula for d on the frame, used as an independent oracle.
inline Form koszul_differential(const AlgebroidPatch& A, const Form& w) {
    const std::size_t k = w.degree();
    Form out(A.rank(), A.nvars(), k + 1);
    if (k + 1 > A.rank()) {
        return out;
    }
    for (IndexMask m = 0; m < (IndexMask{1} << A.rank()); ++m) {
        if (mask_degree(m) != k + 1) {
            continue;
        }
        std::vector<MultiVector> X;
        for (std::size_t i : mask_indices(m)) {
            X.push_back(A.frame(i));
        }
        ExpPoly v(A.nvars());
        for (std::size_t i = 0; i <= k; ++i) {
            std::vector<MultiVector> rest = X;
            rest.erase(rest.begin() + static_cast<long>(i));
            const Rational s = i % 2 == 0 ? 1 : -1;
            v += s * anchor_apply(A, X[i], eval_form(w, rest));
        }
        for (std::size_t i = 0; i <= k; ++i) {
            for (std::size_t j = i + 1; j <= k; ++j) {
                std::vector<MultiVector> rest;
                rest.push_back(bracket_sections(A, X[i], X[j]));
                for (std::size_t l = 0; l <= k; ++l) {
                    if (l != i && l != j) {
                        rest.push_back(X[l]);
                    }
                }
                const Rational s = (i + j) % 2 == 0 ? 1 : -1;
                v += s * eval_form(w, rest);
            }
        }
        out.add(m, v);
    }
    return out;
}

/// (f * dd_i ^ dd_j, 0) on TM + R: Poisson on M for any f, so Jacobi on
/// (TM + R, (0,1)).
inline MultiVector poisson_pair(const JacobiAlgebroidData& J, RandomSource& rs) {
    const AlgebroidPatch base = extension_base(J.A);
    const auto i = static_cast<std::size_t>(rs.integer(0, static_cast<int>(base.rank()) - 2));
    const auto j = static_cast<std::size_t>(rs.integer(static_cast<int>(i) + 1, static_cast<int>(base.rank()) - 1));
    const MultiVector p = rs.poly(base.nvars(), 2) * wedge(base.frame(i), base.frame(j));
    return merge(J.A, p, base.zero_vector(1));
}

}  // namespace test_support

#endif  // JACOBI_TEST_SUPPORT_HPP
