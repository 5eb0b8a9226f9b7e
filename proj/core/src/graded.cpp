#include "jacobi/graded.hpp"

#include <string>

namespace jacobi {

std::vector<std::size_t> mask_indices(IndexMask m) {
    std::vector<std::size_t> out;
    while (m != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

IndexMask mask_of(std::initializer_list<std::size_t> indices) {
    return mask_of(std::vector<std::size_t>(indices));
}

IndexMask mask_of(const std::vector<std::size_t>& indices) {
    IndexMask m = 0;
    for (auto i : indices) {
        if (i > kMaxRank) {
            throw ShapeMismatch("frame index out of range");
        }
        m |= IndexMask{1} << i;
    }
    return m;
}

int merge_sign(IndexMask a, IndexMask b) {
    if ((a & b) != 0) {
        return 0;
    }
    std::size_t inversions = 0;
    for (IndexMask rest = b; rest != 0; rest &= rest - 1) {
        const auto q = static_cast<unsigned>(std::countr_zero(rest));
        inversions += static_cast<std::size_t>(std::popcount(q >= 31 ? IndexMask{0} : (a >> (q + 1))));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

template <Kind K>
Graded<K>::Graded(std::size_t rank, std::size_t nvars, std::size_t degree)
    : rank_(rank), nvars_(nvars), degree_(degree) {
    if (rank > kMaxRank) {
        throw ShapeMismatch("rank exceeds the supported maximum of " + std::to_string(kMaxRank));
    }
}

template <Kind K>
Graded<K> Graded<K>::scalar(const ExpPoly& f, std::size_t rank) {
    Graded g(rank, f.nvars(), 0);
    g.add(0, f);
    return g;
}

template <Kind K>
Graded<K> Graded<K>::basis(std::size_t rank, std::size_t nvars, std::size_t index) {
    if (index >= rank) {
        throw ShapeMismatch("frame index " + std::to_string(index + 1) + " exceeds rank " + std::to_string(rank));
    }
    return basis(rank, nvars, IndexMask{1} << index);
}

template <Kind K>
Graded<K> Graded<K>::basis(std::size_t rank, std::size_t nvars, IndexMask mask) {
    Graded g(rank, nvars, mask_degree(mask));
    g.add(mask, ExpPoly::one(nvars));
    return g;
}

template <Kind K>
ExpPoly Graded<K>::at(IndexMask mask) const {
    auto it = comps_.find(mask);
    return it == comps_.end() ? ExpPoly(nvars_) : it->second;
}

template <Kind K>
ExpPoly Graded<K>::at(const std::vector<std::size_t>& indices) const {
    if (indices.size() != degree_) {
        throw ShapeMismatch("index tuple length differs from degree");
    }
    IndexMask m = 0;
    int sign = 1;
    for (auto i : indices) {
        if (i >= rank_) {
            throw ShapeMismatch("frame index out of range");
        }
        const IndexMask bit = IndexMask{1} << i;
        const int s = merge_sign(m, bit);
        if (s == 0) {
            return ExpPoly(nvars_);
        }
        sign *= s;
        m |= bit;
    }
    ExpPoly c = at(m);
    return sign < 0 ? -c : c;
}

template <Kind K>
ExpPoly Graded<K>::as_scalar() const {
    if (degree_ != 0) {
        throw ShapeMismatch("value of degree " + std::to_string(degree_) + " is not a scalar");
    }
    return at(IndexMask{0});
}

template <Kind K>
void Graded<K>::add(IndexMask mask, const ExpPoly& c) {
    if (mask_degree(mask) != degree_) {
        throw ShapeMismatch("component degree differs from value degree");
    }
    if (rank_ < 32 && (mask >> rank_) != 0) {
        throw ShapeMismatch("component index exceeds rank");
    }
    if (c.nvars() != nvars_) {
        throw ShapeMismatch("coefficient lives over a different coordinate set");
    }
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = comps_.try_emplace(mask, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            comps_.erase(it);
        }
    }
}

template <Kind K>
void Graded<K>::check_compatible(const Graded& o) const {
    if (rank_ != o.rank_ || nvars_ != o.nvars_) {
        throw ShapeMismatch("operands live over different bundles");
    }
}

template <Kind K>
Graded<K> Graded<K>::operator-() const {
    Graded out = *this;
    for (auto& [m, c] : out.comps_) {
        c = -c;
    }
    return out;
}

template <Kind K>
Graded<K>& Graded<K>::operator+=(const Graded& o) {
    check_compatible(o);
    if (degree_ != o.degree_) {
        throw ShapeMismatch("cannot add values of degree " + std::to_string(degree_) + " and " +
                            std::to_string(o.degree_));
    }
    for (const auto& [m, c] : o.comps_) {
        add(m, c);
    }
    return *this;
}

template <Kind K>
Graded<K>& Graded<K>::operator-=(const Graded& o) {
    return *this += -o;
}

template <Kind K>
Graded<K>& Graded<K>::operator*=(const ExpPoly& f) {
    if (f.nvars() != nvars_) {
        throw ShapeMismatch("coefficient lives over a different coordinate set");
    }
    std::map<IndexMask, ExpPoly> out;
    for (const auto& [m, c] : comps_) {
        ExpPoly p = c * f;
        if (!p.is_zero()) {
            out.emplace(m, std::move(p));
        }
    }
    comps_ = std::move(out);
    return *this;
}

template <Kind K>
Graded<K>& Graded<K>::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        comps_.clear();
        return *this;
    }
    for (auto& [m, v] : comps_) {
        v *= c;
    }
    return *this;
}

template class Graded<Kind::vector>;
template class Graded<Kind::form>;

template <Kind K>
Graded<dual_kind(K)> flip(const Graded<K>& u) {
    Graded<dual_kind(K)> out(u.rank(), u.nvars(), u.degree());
    for (const auto& [m, c] : u.components()) {
        out.add(m, c);
    }
    return out;
}

template <Kind K>
Graded<K> wedge(const Graded<K>& a, const Graded<K>& b) {
    a.check_compatible(b);
    Graded<K> out(a.rank(), a.nvars(), a.degree() + b.degree());
    for (const auto& [ma, ca] : a.components()) {
        for (const auto& [mb, cb] : b.components()) {
            const int s = merge_sign(ma, mb);
            if (s == 0) {
                continue;
            }
            ExpPoly prod = ca * cb;
            out.add(ma | mb, s > 0 ? prod : -prod);
        }
    }
    return out;
}

template <Kind K>
Graded<K> contract_or_zero(const Graded<dual_kind(K)>& a, const Graded<K>& u) {
    if (a.rank() != u.rank() || a.nvars() != u.nvars()) {
        throw ShapeMismatch("contraction operands live over different bundles");
    }
    if (a.degree() != 1) {
        throw ShapeMismatch("contraction requires a degree-1 argument");
    }
    if (u.degree() == 0) {
        return Graded<K>(u.rank(), u.nvars(), 0);
    }
    Graded<K> out(u.rank(), u.nvars(), u.degree() - 1);
    for (const auto& [m, c] : u.components()) {
        for (IndexMask rest = m; rest != 0; rest &= rest - 1) {
            const IndexMask bit = rest & (~rest + 1);
            const ExpPoly& ai = a.at(bit);
            if (ai.is_zero()) {
                continue;
            }
            const IndexMask j = m & ~bit;
            const int s = merge_sign(bit, j);
            ExpPoly v = ai * c;
            out.add(j, s > 0 ? v : -v);
        }
    }
    return out;
}

template <Kind K>
Graded<K> contract(const Graded<dual_kind(K)>& a, const Graded<K>& u) {
    if (u.degree() == 0) {
        throw ShapeMismatch("cannot contract a degree-0 value");
    }
    return contract_or_zero(a, u);
}

ExpPoly pair(const Form& omega, const MultiVector& p) {
    if (omega.rank() != p.rank() || omega.nvars() != p.nvars()) {
        throw ShapeMismatch("pairing operands live over different bundles");
    }
    if (omega.degree() != p.degree()) {
        throw ShapeMismatch("pairing requires equal degrees");
    }
    ExpPoly sum(p.nvars());
    for (const auto& [m, c] : omega.components()) {
        auto it = p.components().find(m);
        if (it != p.components().end()) {
            sum += c * it->second;
        }
    }
    return sum;
}

template <Kind K>
ExpPoly evaluate_on(const Graded<K>& u, const std::vector<Graded<dual_kind(K)>>& args) {
    if (args.size() != u.degree()) {
        throw ShapeMismatch("wrong number of arguments for evaluation");
    }
    return insert_front(u, args).as_scalar();
}

template <Kind K>
Graded<K> insert_front(const Graded<K>& u, const std::vector<Graded<dual_kind(K)>>& args) {
    if (args.size() > u.degree()) {
        throw ShapeMismatch("too many arguments for evaluation");
    }
    Graded<K> cur = u;
    for (const auto& a : args) {
        cur = contract(a, cur);
    }
    return cur;
}

template <Kind K>
Graded<K> wedge_power(const Graded<K>& u, unsigned n) {
    Graded<K> r = Graded<K>::scalar(ExpPoly::one(u.nvars()), u.rank());
    for (unsigned i = 0; i < n; ++i) {
        r = wedge(r, u);
    }
    return r;
}

template <Kind K>
Graded<K> differentiate_coefficients(const Graded<K>& u, std::size_t var) {
    return u.map_coefficients([var](const ExpPoly& c) { return c.derivative(var); });
}

template Graded<Kind::form> flip(const Graded<Kind::vector>&);
template Graded<Kind::vector> flip(const Graded<Kind::form>&);
template Graded<Kind::vector> wedge(const Graded<Kind::vector>&, const Graded<Kind::vector>&);
template Graded<Kind::form> wedge(const Graded<Kind::form>&, const Graded<Kind::form>&);
template Graded<Kind::vector> contract(const Graded<Kind::form>&, const Graded<Kind::vector>&);
template Graded<Kind::form> contract(const Graded<Kind::vector>&, const Graded<Kind::form>&);
template Graded<Kind::vector> contract_or_zero(const Graded<Kind::form>&, const Graded<Kind::vector>&);
template Graded<Kind::form> contract_or_zero(const Graded<Kind::vector>&, const Graded<Kind::form>&);
template ExpPoly evaluate_on(const Graded<Kind::vector>&, const std::vector<Graded<Kind::form>>&);
template ExpPoly evaluate_on(const Graded<Kind::form>&, const std::vector<Graded<Kind::vector>>&);
template Graded<Kind::vector> insert_front(const Graded<Kind::vector>&, const std::vector<Graded<Kind::form>>&);
template Graded<Kind::form> insert_front(const Graded<Kind::form>&, const std::vector<Graded<Kind::vector>>&);
template Graded<Kind::vector> wedge_power(const Graded<Kind::vector>&, unsigned);
template Graded<Kind::form> wedge_power(const Graded<Kind::form>&, unsigned);
template Graded<Kind::vector> differentiate_coefficients(const Graded<Kind::vector>&, std::size_t);
template Graded<Kind::form> differentiate_coefficients(const Graded<Kind::form>&, std::size_t);

}  // namespace jacobi
