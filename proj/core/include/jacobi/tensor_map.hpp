#ifndef JACOBI_TENSOR_MAP_HPP
#define JACOBI_TENSOR_MAP_HPP

#include <cstddef>
#include <vector>

#include "jacobi/graded.hpp"

namespace jacobi {

/// Which bundle a map reads from or writes to.
enum class Side { A, Astar };

constexpr Side dual_side(Side s) { return s == Side::A ? Side::Astar : Side::A; }
constexpr Kind kind_of(Side s) { return s == Side::A ? Kind::vector : Kind::form; }

/// Bundle map between A and A* in the fixed frames, acting on columns:
/// (M v)_i = sum_j M(i, j) v_j.
class TensorMap {
public:
    TensorMap() = default;
    TensorMap(Side source, Side target, std::size_t rank, std::size_t nvars);

    static TensorMap identity(Side side, std::size_t rank, std::size_t nvars);

    Side source() const { return source_; }
    Side target() const { return target_; }
    std::size_t rank() const { return rank_; }
    std::size_t nvars() const { return nvars_; }

    const ExpPoly& operator()(std::size_t i, std::size_t j) const { return m_[i * rank_ + j]; }
    void set(std::size_t i, std::size_t j, ExpPoly v);
    bool is_zero() const;

    TensorMap operator-() const;
    friend TensorMap operator+(const TensorMap& a, const TensorMap& b);
    friend TensorMap operator-(const TensorMap& a, const TensorMap& b) { return a + (-b); }
    friend TensorMap operator*(const ExpPoly& f, const TensorMap& a);
    friend bool operator==(const TensorMap&, const TensorMap&) = default;

private:
    Side source_ = Side::A;
    Side target_ = Side::A;
    std::size_t rank_ = 0;
    std::size_t nvars_ = 0;
    std::vector<ExpPoly> m_;
};

/// Applies m to a degree-1 value of the source kind.
template <Kind Out, Kind In>
Graded<Out> apply(const TensorMap& m, const Graded<In>& v) {
    if (kind_of(m.source()) != In || kind_of(m.target()) != Out) {
        throw ShapeMismatch("map applied to a value of the wrong bundle");
    }
    if (v.degree() != 1 || v.rank() != m.rank() || v.nvars() != m.nvars()) {
        throw ShapeMismatch("map applies to degree-1 values of matching rank");
    }
    Graded<Out> out(m.rank(), m.nvars(), 1);
    for (const auto& [mask, c] : v.components()) {
        const auto j = static_cast<std::size_t>(std::countr_zero(mask));
        for (std::size_t i = 0; i < m.rank(); ++i) {
            const ExpPoly& a = m(i, j);
            if (!a.is_zero()) {
                out.add(IndexMask{1} << i, a * c);
            }
        }
    }
    return out;
}

/// a o b (b applied first).
TensorMap compose(const TensorMap& a, const TensorMap& b);
/// The dual map; source and target swap to their duals.
TensorMap transpose(const TensorMap& m);
ExpPoly determinant(const TensorMap& m);
/// Throws NotInvertible unless the determinant is a unit of the coefficient ring.
TensorMap inverse(const TensorMap& m);
bool is_invertible(const TensorMap& m);

/// <pi# xi, eta> = pi(xi, eta).
TensorMap sharp_map(const MultiVector& pi);
/// <w_flat X, Y> = w(X, Y).
TensorMap flat_map(const Form& omega);
/// Inverses of sharp_map / flat_map on antisymmetric matrices.
MultiVector bivector_of(const TensorMap& sharp);
Form two_form_of(const TensorMap& flat);

}  // namespace jacobi

#endif  // JACOBI_TENSOR_MAP_HPP
