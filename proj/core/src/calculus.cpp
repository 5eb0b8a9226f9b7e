#include "jacobi/calculus.hpp"

#include <span>
#include <variant>

namespace jacobi {

namespace {

// A wedge word: a coefficient function or a single frame element.
struct Factor {
    bool is_frame;
    std::size_t index;
    ExpPoly f;

    std::size_t degree() const { return is_frame ? 1 : 0; }
};

using Word = std::span<const Factor>;

std::size_t word_degree(Word w) {
    std::size_t d = 0;
    for (const auto& x : w) {
        d += x.degree();
    }
    return d;
}

int parity_sign(std::size_t e) { return (e % 2 == 0) ? 1 : -1; }

class SchoutenExpander {
public:
    explicit SchoutenExpander(const AlgebroidPatch& A) : A_(A) {}

    MultiVector value(Word w) const {
        MultiVector out = MultiVector::scalar(A_.one(), A_.rank());
        for (const auto& x : w) {
            if (x.is_frame) {
                out = wedge(out, A_.frame(x.index));
            } else {
                out *= x.f;
            }
        }
        return out;
    }

    // [w1, w2] of degree deg(w1) + deg(w2) - 1; an empty zero when that is negative.
    MultiVector bracket(Word w1, Word w2) const {
        const std::size_t a1 = word_degree(w1);
        const std::size_t a2 = word_degree(w2);
        if (a1 + a2 == 0) {
            return A_.zero_vector(0);
        }
        const std::size_t deg = a1 + a2 - 1;
        if (w2.size() > 1) {
            MultiVector out = A_.zero_vector(deg);
            Word head = w2.first(1);
            Word rest = w2.subspan(1);
            MultiVector left = bracket(w1, head);
            if (!left.is_zero()) {
                out += wedge(left, value(rest));
            }
            MultiVector right = bracket(w1, rest);
            if (!right.is_zero()) {
                MultiVector term = wedge(value(head), right);
                const int s = parity_sign((a1 + 1) * head[0].degree());
                out += s > 0 ? term : -term;
            }
            return out;
        }
        if (w1.size() > 1) {
            MultiVector swapped = bracket(w2, w1);
            const int s = -parity_sign((a1 + 1) * (a2 + 1));
            return s > 0 ? swapped : -swapped;
        }
        const Factor& x = w1[0];
        const Factor& y = w2[0];
        if (x.is_frame && y.is_frame) {
            return A_.structure(x.index, y.index);
        }
        if (x.is_frame) {
            return MultiVector::scalar(anchor_apply(A_, A_.frame(x.index), y.f), A_.rank());
        }
        return MultiVector::scalar(-anchor_apply(A_, A_.frame(y.index), x.f), A_.rank());
    }

private:
    const AlgebroidPatch& A_;
};

std::vector<Factor> to_word(IndexMask m, const ExpPoly& c) {
    std::vector<Factor> w;
    w.push_back(Factor{false, 0, c});
    for (auto i : mask_indices(m)) {
        w.push_back(Factor{true, i, ExpPoly(c.nvars())});
    }
    return w;
}

// Calls fn(mask) for every index set of size k in 0..r-1.
template <class Fn>
void for_each_subset(std::size_t r, std::size_t k, Fn&& fn) {
    if (k > r) {
        return;
    }
    if (k == 0) {
        fn(IndexMask{0});
        return;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        IndexMask m = 0;
        for (auto i : idx) {
            m |= IndexMask{1} << i;
        }
        fn(m);
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == r - k + pos - 1) {
            --pos;
        }
        if (pos == 0) {
            return;
        }
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

void require_extension(const AlgebroidPatch& A) {
    if (!A.is_extension()) {
        throw InvalidStructure("splitting needs an algebroid of the form B + R");
    }
}

}  // namespace

MultiVector schouten(const AlgebroidPatch& A, const MultiVector& P, const MultiVector& Q) {
    A.require(P);
    A.require(Q);
    const std::size_t a1 = P.degree();
    const std::size_t a2 = Q.degree();
    if (a1 + a2 == 0) {
        return A.zero_vector(0);
    }
    SchoutenExpander ex(A);
    MultiVector out = A.zero_vector(a1 + a2 - 1);
    for (const auto& [mp, cp] : P.components()) {
        const auto wp = to_word(mp, cp);
        for (const auto& [mq, cq] : Q.components()) {
            const auto wq = to_word(mq, cq);
            MultiVector b = ex.bracket(wp, wq);
            if (!b.is_zero()) {
                out += b;
            }
        }
    }
    return out;
}

MultiVector phi0_schouten(const JacobiAlgebroidData& J, const MultiVector& P, const MultiVector& Q) {
    MultiVector out = schouten(J.A, P, Q);
    const long a1 = static_cast<long>(P.degree());
    const long a2 = static_cast<long>(Q.degree());
    if (a1 + a2 == 0) {
        return out;
    }
    if (a1 != 1 && a2 > 0) {
        MultiVector term = wedge(P, contract_or_zero(J.phi0, Q));
        if (!term.is_zero()) {
            out += Rational(a1 - 1) * term;
        }
    }
    if (a2 != 1 && a1 > 0) {
        MultiVector term = wedge(contract_or_zero(J.phi0, P), Q);
        if (!term.is_zero()) {
            const long s = (a1 + 1) % 2 == 0 ? 1 : -1;
            out += Rational(-s * (a2 - 1)) * term;
        }
    }
    return out;
}

Form differential(const AlgebroidPatch& A, const Form& omega) {
    A.require(omega);
    const std::size_t r = A.rank();
    const std::size_t k = omega.degree();
    Form out = A.zero_form(k + 1);
    if (k + 1 > r) {
        return out;
    }
    for_each_subset(r, k + 1, [&](IndexMask m) {
        const auto idx = mask_indices(m);
        ExpPoly value = A.zero();
        for (std::size_t p = 0; p <= k; ++p) {
            const IndexMask rest = m & ~(IndexMask{1} << idx[p]);
            const ExpPoly c = omega.at(rest);
            if (c.is_zero()) {
                continue;
            }
            ExpPoly term = anchor_apply(A, A.frame(idx[p]), c);
            value += parity_sign(p) > 0 ? term : -term;
        }
        for (std::size_t p = 0; p <= k; ++p) {
            for (std::size_t q = p + 1; q <= k; ++q) {
                const MultiVector& b = A.structure(idx[p], idx[q]);
                if (b.is_zero()) {
                    continue;
                }
                const IndexMask rest = m & ~(IndexMask{1} << idx[p]) & ~(IndexMask{1} << idx[q]);
                for (const auto& [ml, cl] : b.components()) {
                    const int s = merge_sign(ml, rest);
                    if (s == 0) {
                        continue;
                    }
                    const ExpPoly w = omega.at(ml | rest);
                    if (w.is_zero()) {
                        continue;
                    }
                    ExpPoly term = cl * w;
                    value += s * parity_sign(p + q) > 0 ? term : -term;
                }
            }
        }
        out.add(m, value);
    });
    return out;
}

Form differential(const JacobiAlgebroidData& J, const Form& omega) {
    return differential(J.A, omega) + wedge(J.phi0, omega);
}

Form lie_derivative(const AlgebroidPatch& A, const MultiVector& X, const Form& omega) {
    A.require(X);
    if (X.degree() != 1) {
        throw ShapeMismatch("Lie derivative along a degree-1 section");
    }
    Form out = contract(X, differential(A, omega));
    if (omega.degree() > 0) {
        out += differential(A, contract(X, omega));
    }
    return out;
}

Form lie_derivative(const JacobiAlgebroidData& J, const MultiVector& X, const Form& omega) {
    J.A.require(X);
    if (X.degree() != 1) {
        throw ShapeMismatch("Lie derivative along a degree-1 section");
    }
    Form out = contract(X, differential(J, omega));
    if (omega.degree() > 0) {
        out += differential(J, contract(X, omega));
    }
    return out;
}

MultiVector lie_derivative(const AlgebroidPatch& A, const MultiVector& X, const MultiVector& D) {
    if (X.degree() != 1) {
        throw ShapeMismatch("Lie derivative along a degree-1 section");
    }
    return schouten(A, X, D);
}

MultiVector lie_derivative(const JacobiAlgebroidData& J, const MultiVector& X, const MultiVector& D) {
    if (X.degree() != 1) {
        throw ShapeMismatch("Lie derivative along a degree-1 section");
    }
    return phi0_schouten(J, X, D);
}

namespace {

template <Kind K>
std::pair<Graded<K>, Graded<K>> split_impl(const AlgebroidPatch& A, const Graded<K>& u) {
    require_extension(A);
    A.require(u);
    const std::size_t r = A.rank() - 1;
    const IndexMask hat = IndexMask{1} << r;
    const std::size_t k = u.degree();
    Graded<K> first(r, u.nvars(), k);
    Graded<K> second(r, u.nvars(), k == 0 ? 0 : k - 1);
    for (const auto& [m, c] : u.components()) {
        if ((m & hat) == 0) {
            first.add(m, c);
        } else {
            second.add(m & ~hat, parity_sign(k - 1) > 0 ? c : -c);
        }
    }
    return {first, second};
}

template <Kind K>
Graded<K> merge_impl(const AlgebroidPatch& A, const Graded<K>& a, const Graded<K>& b) {
    require_extension(A);
    const std::size_t r = A.rank() - 1;
    if (a.rank() != r || b.rank() != r || a.nvars() != A.nvars() || b.nvars() != A.nvars()) {
        throw ShapeMismatch("components must live over the base of the extension");
    }
    const std::size_t k = a.degree();
    if (k == 0 ? !b.is_zero() : b.degree() + 1 != k) {
        throw ShapeMismatch("second component must have degree one less than the first");
    }
    const IndexMask hat = IndexMask{1} << r;
    Graded<K> out(r + 1, a.nvars(), k);
    for (const auto& [m, c] : a.components()) {
        out.add(m, c);
    }
    for (const auto& [m, c] : b.components()) {
        out.add(m | hat, parity_sign(k - 1) > 0 ? c : -c);
    }
    return out;
}

}  // namespace

std::pair<MultiVector, MultiVector> split(const AlgebroidPatch& A, const MultiVector& u) { return split_impl(A, u); }
std::pair<Form, Form> split(const AlgebroidPatch& A, const Form& u) { return split_impl(A, u); }
MultiVector merge(const AlgebroidPatch& A, const MultiVector& P, const MultiVector& Q) { return merge_impl(A, P, Q); }
Form merge(const AlgebroidPatch& A, const Form& alpha, const Form& beta) { return merge_impl(A, alpha, beta); }

}  // namespace jacobi
