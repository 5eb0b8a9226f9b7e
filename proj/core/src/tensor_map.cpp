#include "jacobi/tensor_map.hpp"

#include <unordered_map>

namespace jacobi {

namespace {

// Laplace expansion along rows, memoized on the set of remaining columns.
class MinorSolver {
public:
    MinorSolver(const TensorMap& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols)
        : m_(m), rows_(std::move(rows)), cols_(std::move(cols)) {}

    ExpPoly solve() {
        IndexMask all = 0;
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            all |= IndexMask{1} << c;
        }
        return det(all);
    }

private:
    ExpPoly det(IndexMask remaining) {
        const std::size_t k = rows_.size() - mask_degree(remaining);
        if (remaining == 0) {
            return ExpPoly::one(m_.nvars());
        }
        if (auto it = memo_.find(remaining); it != memo_.end()) {
            return it->second;
        }
        ExpPoly sum(m_.nvars());
        int sign = 1;
        for (IndexMask rest = remaining; rest != 0; rest &= rest - 1) {
            const auto c = static_cast<std::size_t>(std::countr_zero(rest));
            const ExpPoly& a = m_(rows_[k], cols_[c]);
            if (!a.is_zero()) {
                ExpPoly sub = det(remaining & ~(IndexMask{1} << c));
                if (!sub.is_zero()) {
                    ExpPoly term = a * sub;
                    sum += sign > 0 ? term : -term;
                }
            }
            sign = -sign;
        }
        memo_.emplace(remaining, sum);
        return sum;
    }

    const TensorMap& m_;
    std::vector<std::size_t> rows_;
    std::vector<std::size_t> cols_;
    std::unordered_map<IndexMask, ExpPoly> memo_;
};

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != skip) {
            out.push_back(i);
        }
    }
    return out;
}

void require_same_shape(const TensorMap& a, const TensorMap& b) {
    if (a.rank() != b.rank() || a.nvars() != b.nvars() || a.source() != b.source() || a.target() != b.target()) {
        throw ShapeMismatch("maps have different shapes");
    }
}

}  // namespace

TensorMap::TensorMap(Side source, Side target, std::size_t rank, std::size_t nvars)
    : source_(source), target_(target), rank_(rank), nvars_(nvars), m_(rank * rank, ExpPoly(nvars)) {}

TensorMap TensorMap::identity(Side side, std::size_t rank, std::size_t nvars) {
    TensorMap m(side, side, rank, nvars);
    for (std::size_t i = 0; i < rank; ++i) {
        m.set(i, i, ExpPoly::one(nvars));
    }
    return m;
}

void TensorMap::set(std::size_t i, std::size_t j, ExpPoly v) {
    if (i >= rank_ || j >= rank_) {
        throw ShapeMismatch("matrix index out of range");
    }
    if (v.nvars() != nvars_) {
        throw ShapeMismatch("matrix entry lives over a different coordinate set");
    }
    m_[i * rank_ + j] = std::move(v);
}

bool TensorMap::is_zero() const {
    for (const auto& e : m_) {
        if (!e.is_zero()) {
            return false;
        }
    }
    return true;
}

TensorMap TensorMap::operator-() const {
    TensorMap out = *this;
    for (auto& e : out.m_) {
        e = -e;
    }
    return out;
}

TensorMap operator+(const TensorMap& a, const TensorMap& b) {
    require_same_shape(a, b);
    TensorMap out = a;
    for (std::size_t i = 0; i < a.m_.size(); ++i) {
        out.m_[i] += b.m_[i];
    }
    return out;
}

TensorMap operator*(const ExpPoly& f, const TensorMap& a) {
    TensorMap out = a;
    for (auto& e : out.m_) {
        e = f * e;
    }
    return out;
}

TensorMap compose(const TensorMap& a, const TensorMap& b) {
    if (a.rank() != b.rank() || a.nvars() != b.nvars()) {
        throw ShapeMismatch("maps have different ranks");
    }
    if (b.target() != a.source()) {
        throw ShapeMismatch("composition of maps between incompatible bundles");
    }
    const std::size_t r = a.rank();
    TensorMap out(b.source(), a.target(), r, a.nvars());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            ExpPoly s(a.nvars());
            for (std::size_t k = 0; k < r; ++k) {
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) {
                    s += a(i, k) * b(k, j);
                }
            }
            out.set(i, j, std::move(s));
        }
    }
    return out;
}

TensorMap transpose(const TensorMap& m) {
    TensorMap out(dual_side(m.target()), dual_side(m.source()), m.rank(), m.nvars());
    for (std::size_t i = 0; i < m.rank(); ++i) {
        for (std::size_t j = 0; j < m.rank(); ++j) {
            out.set(i, j, m(j, i));
        }
    }
    return out;
}

ExpPoly determinant(const TensorMap& m) {
    std::vector<std::size_t> idx(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) {
        idx[i] = i;
    }
    return MinorSolver(m, idx, idx).solve();
}

bool is_invertible(const TensorMap& m) { return determinant(m).is_unit(); }

TensorMap inverse(const TensorMap& m) {
    const ExpPoly det = determinant(m);
    if (!det.is_unit()) {
        throw NotInvertible("determinant is not a unit of the coefficient ring");
    }
    const ExpPoly inv = det.unit_inverse();
    const std::size_t r = m.rank();
    TensorMap out(m.target(), m.source(), r, m.nvars());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            // adj(M)_{ij} = (-1)^{i+j} det(M without row j and column i)
            ExpPoly minor = MinorSolver(m, all_but(r, j), all_but(r, i)).solve();
            if ((i + j) % 2 == 1) {
                minor = -minor;
            }
            out.set(i, j, inv * minor);
        }
    }
    return out;
}

TensorMap sharp_map(const MultiVector& pi) {
    if (pi.degree() != 2) {
        throw ShapeMismatch("sharp map needs a 2-section");
    }
    TensorMap out(Side::Astar, Side::A, pi.rank(), pi.nvars());
    for (const auto& [m, c] : pi.components()) {
        const auto idx = mask_indices(m);
        out.set(idx[0], idx[1], -c);
        out.set(idx[1], idx[0], c);
    }
    return out;
}

TensorMap flat_map(const Form& omega) {
    if (omega.degree() != 2) {
        throw ShapeMismatch("flat map needs a 2-cosection");
    }
    TensorMap out(Side::A, Side::Astar, omega.rank(), omega.nvars());
    for (const auto& [m, c] : omega.components()) {
        const auto idx = mask_indices(m);
        out.set(idx[0], idx[1], -c);
        out.set(idx[1], idx[0], c);
    }
    return out;
}

namespace {

template <Kind K>
Graded<K> antisymmetric_part(const TensorMap& m) {
    Graded<K> out(m.rank(), m.nvars(), 2);
    for (std::size_t i = 0; i < m.rank(); ++i) {
        if (!m(i, i).is_zero()) {
            throw InvalidStructure("matrix is not antisymmetric");
        }
        for (std::size_t j = i + 1; j < m.rank(); ++j) {
            if (!(m(i, j) == -m(j, i))) {
                throw InvalidStructure("matrix is not antisymmetric");
            }
            out.add((IndexMask{1} << i) | (IndexMask{1} << j), -m(i, j));
        }
    }
    return out;
}

}  // namespace

MultiVector bivector_of(const TensorMap& sharp) {
    if (sharp.source() != Side::Astar || sharp.target() != Side::A) {
        throw ShapeMismatch("expected a map from A* to A");
    }
    return antisymmetric_part<Kind::vector>(sharp);
}

Form two_form_of(const TensorMap& flat) {
    if (flat.source() != Side::A || flat.target() != Side::Astar) {
        throw ShapeMismatch("expected a map from A to A*");
    }
    return antisymmetric_part<Kind::form>(flat);
}

}  // namespace jacobi
