#ifndef JACOBI_GRADED_HPP
#define JACOBI_GRADED_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

#include "jacobi/coeff.hpp"

namespace jacobi {

/// Frame index set: bit i set means frame element i (0-based) is present.
/// Components are always taken in increasing index order.
using IndexMask = std::uint32_t;

inline constexpr std::size_t kMaxRank = 31;

inline std::size_t mask_degree(IndexMask m) { return static_cast<std::size_t>(std::popcount(m)); }
std::vector<std::size_t> mask_indices(IndexMask m);
IndexMask mask_of(std::initializer_list<std::size_t> indices);
IndexMask mask_of(const std::vector<std::size_t>& indices);

/// Sign of the permutation that sorts the concatenation (a, b) of two
/// disjoint increasing index lists; 0 when they overlap.
int merge_sign(IndexMask a, IndexMask b);

enum class Kind { vector, form };

constexpr Kind dual_kind(Kind k) { return k == Kind::vector ? Kind::form : Kind::vector; }

/// Homogeneous element of Gamma(Lambda^k A) (Kind::vector) or Gamma(Lambda^k A*)
/// (Kind::form) written in a fixed local frame e_1..e_r (dual frame eps_1..eps_r).
///
/// The value only records the rank and the coefficient ring; the algebroid it
/// is interpreted over is supplied to the operations that need a bracket or
/// an anchor.  Zero components are never stored.  A degree above the rank is
/// allowed and always holds the zero value.
template <Kind K>
class Graded {
public:
    Graded() = default;
    Graded(std::size_t rank, std::size_t nvars, std::size_t degree);

    static Graded scalar(const ExpPoly& f, std::size_t rank);
    /// Single frame element e_i (or eps_i), 0-based.
    static Graded basis(std::size_t rank, std::size_t nvars, std::size_t index);
    static Graded basis(std::size_t rank, std::size_t nvars, IndexMask mask);

    std::size_t rank() const { return rank_; }
    std::size_t nvars() const { return nvars_; }
    std::size_t degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<IndexMask, ExpPoly>& components() const { return comps_; }

    /// Component on the increasing index set `mask`.
    ExpPoly at(IndexMask mask) const;
    /// Component on an arbitrary ordered index tuple (alternating).
    ExpPoly at(const std::vector<std::size_t>& indices) const;
    /// Degree-0 value as a coefficient.
    ExpPoly as_scalar() const;

    /// Adds c to the component on `mask`.
    void add(IndexMask mask, const ExpPoly& c);

    Graded operator-() const;
    Graded& operator+=(const Graded& o);
    Graded& operator-=(const Graded& o);
    Graded& operator*=(const ExpPoly& f);
    Graded& operator*=(const Rational& c);

    friend Graded operator+(Graded a, const Graded& b) { return a += b; }
    friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
    friend Graded operator*(const ExpPoly& f, Graded a) { return a *= f; }
    friend Graded operator*(Graded a, const ExpPoly& f) { return a *= f; }
    friend Graded operator*(const Rational& c, Graded a) { return a *= c; }

    friend bool operator==(const Graded& a, const Graded& b) {
        return a.rank_ == b.rank_ && a.nvars_ == b.nvars_ && a.degree_ == b.degree_ &&
               a.comps_ == b.comps_;
    }

    /// Applies f to every component, dropping zeros.
    template <class F>
    Graded map_coefficients(F&& f) const {
        Graded out(rank_, nvars_, degree_);
        for (const auto& [m, c] : comps_) {
            out.add(m, f(c));
        }
        return out;
    }

    void check_compatible(const Graded& o) const;

private:
    std::size_t rank_ = 0;
    std::size_t nvars_ = 0;
    std::size_t degree_ = 0;
    std::map<IndexMask, ExpPoly> comps_;
};

using MultiVector = Graded<Kind::vector>;
using Form = Graded<Kind::form>;

extern template class Graded<Kind::vector>;
extern template class Graded<Kind::form>;

/// Reinterprets a multivector on A as a form on the dual algebroid A* and back.
template <Kind K>
Graded<dual_kind(K)> flip(const Graded<K>& u);

template <Kind K>
Graded<K> wedge(const Graded<K>& a, const Graded<K>& b);

/// Alternating contraction iota_a u, where `a` is a degree-1 element of the dual kind.
/// Throws ShapeMismatch when u has degree 0.
template <Kind K>
Graded<K> contract(const Graded<dual_kind(K)>& a, const Graded<K>& u);

/// Same as contract but returns zero on degree-0 input; used inside formulas
/// where the term vanishes by convention.
template <Kind K>
Graded<K> contract_or_zero(const Graded<dual_kind(K)>& a, const Graded<K>& u);

/// Determinant pairing <omega, P> of a k-form and a k-vector.
ExpPoly pair(const Form& omega, const MultiVector& p);
inline ExpPoly pair(const MultiVector& p, const Form& omega) { return pair(omega, p); }

/// P(xi_1, .., xi_k) for a k-vector and k one-forms (or the dual situation).
template <Kind K>
ExpPoly evaluate_on(const Graded<K>& u, const std::vector<Graded<dual_kind(K)>>& args);

/// Partial evaluation u(a_1, .., a_m, .) as a (k-m)-element.
template <Kind K>
Graded<K> insert_front(const Graded<K>& u, const std::vector<Graded<dual_kind(K)>>& args);

/// Wedge power u^n (n >= 1; n == 0 gives the scalar 1).
template <Kind K>
Graded<K> wedge_power(const Graded<K>& u, unsigned n);

/// Componentwise partial derivative of the coefficients.
template <Kind K>
Graded<K> differentiate_coefficients(const Graded<K>& u, std::size_t var);

}  // namespace jacobi

#endif  // JACOBI_GRADED_HPP
