#ifndef JACOBI_COEFF_HPP
#define JACOBI_COEFF_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacobi/errors.hpp"

namespace jacobi {

using Rational = mpq_class;

/// Exponent vector of a monomial in x_1..x_n, t (t is always the last slot).
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order with variables ordered x_1 < ... < x_n < t.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Polynomial with exact rational coefficients; never stores zero coefficients.
using Poly = std::map<Exponents, Rational, GrlexLess>;

/// Element of Q[x_1..x_n, t][e^t, e^{-t}].
///
/// Stored as a map from the integer weight k of the factor e^{kt} to a
/// nonzero polynomial.  The representation is canonical, so structural
/// equality is value equality.  Values are immutable once built; all
/// operations return new values.
class ExpPoly {
public:
    /// Zero in the ring with `nvars` base coordinates (plus t).
    explicit ExpPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static ExpPoly constant(std::size_t nvars, const Rational& c);
    static ExpPoly one(std::size_t nvars) { return constant(nvars, 1); }
    /// The coordinate function with index `var`; `var == nvars` is t.
    static ExpPoly variable(std::size_t nvars, std::size_t var);
    static ExpPoly t(std::size_t nvars) { return variable(nvars, nvars); }
    /// e^{weight * t}.
    static ExpPoly exp_t(std::size_t nvars, int weight);
    /// Single term c * e^{weight t} * x^exps.
    static ExpPoly term(std::size_t nvars, int weight, Exponents exps, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    std::size_t t_index() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Poly>& terms() const { return terms_; }

    /// The rational value when this is a constant (weight 0, degree 0).
    std::optional<Rational> as_constant() const;
    /// True when exactly one weight is present and its polynomial is a nonzero constant.
    bool is_unit() const;
    /// Inverse of a unit; throws NotInvertible otherwise.
    ExpPoly unit_inverse() const;

    ExpPoly derivative(std::size_t var) const;
    bool depends_on(std::size_t var) const;

    /// Substitutes rational values for x_1..x_n, t (size nvars+1) and `exp_t` for e^t.
    Rational evaluate(std::span<const Rational> point, const Rational& exp_t) const;

    ExpPoly pow(unsigned e) const;

    ExpPoly operator-() const;
    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator-=(const ExpPoly& o);
    ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }
    ExpPoly& operator*=(const Rational& c);

    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator*(ExpPoly a, const Rational& c) { return a *= c; }
    friend ExpPoly operator*(const Rational& c, ExpPoly a) { return a *= c; }

    friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Canonical text: weights ascending, monomials in descending grlex order.
    /// `names` holds the n coordinate names followed by the name of t.
    std::string to_string(std::span<const std::string> names) const;

private:
    void check_same(const ExpPoly& o) const;
    void check_var(std::size_t var) const;

    std::size_t nvars_;
    std::map<int, Poly> terms_;
};

/// Default variable names x1..xn, t.
std::vector<std::string> default_variable_names(std::size_t nvars);

}  // namespace jacobi

#endif  // JACOBI_COEFF_HPP
