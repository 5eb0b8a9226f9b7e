#ifndef JACOBI_ALGEBROID_HPP
#define JACOBI_ALGEBROID_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/check.hpp"
#include "jacobi/coeff.hpp"
#include "jacobi/graded.hpp"

namespace jacobi {

/// A single coordinate chart: base coordinates x_1..x_n and the parameter t.
///
/// Every coefficient ring carries t.  On a base patch t is inert (no anchor
/// reaches it); a lifted patch over M x R has `lifted` set and anchors may
/// differentiate along t.
struct Patch {
    std::vector<std::string> coords;
    std::string t_name = "t";
    bool lifted = false;

    Patch() = default;
    explicit Patch(std::vector<std::string> names, std::string t = "t");

    std::size_t nvars() const { return coords.size(); }
    /// Names of every coefficient variable, t last.
    std::vector<std::string> variable_names() const;
    /// Index of a coordinate or of t (== nvars()).
    std::optional<std::size_t> index_of(const std::string& name) const;
    bool operator==(const Patch&) const = default;
};

/// Rank-r algebroid over a patch, given by its anchor and structure
/// functions in a fixed frame e_1..e_r.
///
/// Frames are 0-based internally.  The anchor is stored as an (n+1) x r
/// matrix; row n is the d/dt component, which is zero unless the patch is
/// lifted.  Brackets of sections are obtained from the frame data through
/// the Leibniz rule, so only frame brackets are stored.
class AlgebroidPatch {
public:
    AlgebroidPatch() = default;
    AlgebroidPatch(Patch patch, std::size_t rank);

    const Patch& patch() const { return patch_; }
    std::size_t rank() const { return rank_; }
    std::size_t nvars() const { return patch_.nvars(); }

    /// rho(e_i) applied to the coordinate with index `var` (t is nvars()).
    const ExpPoly& anchor(std::size_t var, std::size_t i) const;
    void set_anchor(std::size_t var, std::size_t i, ExpPoly value);

    /// [e_i, e_j] as a degree-1 multivector.
    const MultiVector& structure(std::size_t i, std::size_t j) const;
    /// Sets [e_i, e_j] and [e_j, e_i] = -[e_i, e_j].
    void set_structure(std::size_t i, std::size_t j, const MultiVector& value);

    /// Display names of the frame and coframe elements.
    const std::vector<std::string>& frame_labels() const { return frame_labels_; }
    const std::vector<std::string>& coframe_labels() const { return coframe_labels_; }
    void set_labels(std::vector<std::string> frames, std::vector<std::string> coframes);

    /// Set when this algebroid is B + R for some rank-(r-1) algebroid B; the
    /// last frame element is then the unit section of the R summand.
    bool is_extension() const { return extension_; }
    void mark_extension(bool on) { extension_ = on; }

    MultiVector zero_vector(std::size_t degree) const { return MultiVector(rank_, nvars(), degree); }
    Form zero_form(std::size_t degree) const { return Form(rank_, nvars(), degree); }
    MultiVector frame(std::size_t i) const { return MultiVector::basis(rank_, nvars(), i); }
    Form coframe(std::size_t i) const { return Form::basis(rank_, nvars(), i); }
    ExpPoly zero() const { return ExpPoly(nvars()); }
    ExpPoly one() const { return ExpPoly::one(nvars()); }

    /// Throws ShapeMismatch if u does not live over this algebroid.
    template <Kind K>
    void require(const Graded<K>& u) const {
        if (u.rank() != rank_ || u.nvars() != nvars()) {
            throw ShapeMismatch("value does not live over this algebroid (rank " + std::to_string(u.rank()) +
                                ", expected " + std::to_string(rank_) + ")");
        }
    }
    void require(const ExpPoly& f) const;

    bool operator==(const AlgebroidPatch&) const = default;

private:
    Patch patch_;
    std::size_t rank_ = 0;
    std::vector<ExpPoly> anchor_;
    std::vector<MultiVector> structure_;
    std::vector<std::string> frame_labels_;
    std::vector<std::string> coframe_labels_;
    bool extension_ = false;
};

/// A Lie algebroid together with a closed 1-cosection phi0.
struct JacobiAlgebroidData {
    AlgebroidPatch A;
    Form phi0;

    JacobiAlgebroidData() = default;
    /// phi0 defaults to zero.
    explicit JacobiAlgebroidData(AlgebroidPatch a);
    JacobiAlgebroidData(AlgebroidPatch a, Form phi);
};

/// A pair of Jacobi algebroids (A, phi0) and (A*, X0) in positional duality.
///
/// `Astar` is an algebroid whose frame is the coframe eps_i of A; a form on A
/// is a multivector on Astar and vice versa (see flip).  X0 is stored as a
/// section of A.
struct JacobiBialgebroidData {
    JacobiAlgebroidData A_side;
    AlgebroidPatch Astar;
    MultiVector X0;

    /// The dual pair as a Jacobi algebroid (A*, X0) with X0 read as a cosection of A*.
    JacobiAlgebroidData dual_side() const;
    /// The same data with the roles of the two sides exchanged.
    JacobiBialgebroidData swapped() const;
};

ExpPoly anchor_apply(const AlgebroidPatch& A, const MultiVector& X, const ExpPoly& f);
/// rho_{A,phi0}(X) f = rho_A(X) f + <phi0, X> f.
ExpPoly anchor_apply(const JacobiAlgebroidData& J, const MultiVector& X, const ExpPoly& f);
MultiVector bracket_sections(const AlgebroidPatch& A, const MultiVector& X, const MultiVector& Y);

/// Checks rho([e_i,e_j]) = [rho(e_i), rho(e_j)] on every coordinate and the
/// Jacobi identity on every frame triple.  With the Leibniz rule built in,
/// frame triples suffice for all sections.
CheckResult validate_algebroid(const AlgebroidPatch& A);
/// validate_algebroid plus d_A phi0 = 0.
CheckResult validate_jacobi_algebroid(const JacobiAlgebroidData& J);

/// Patch built from names; throws InvalidStructure on duplicate or empty names.
Patch make_patch(std::vector<std::string> coords, std::string t_name = "t");
AlgebroidPatch make_tangent(const Patch& patch);
AlgebroidPatch make_trivial(const Patch& patch, std::size_t rank);
/// The same frame with every structure function and anchor set to zero.
AlgebroidPatch make_trivial_like(const AlgebroidPatch& A);
/// Over a point-like patch: constants c^k_ij given as c[i][j][k], zero anchor.
AlgebroidPatch make_from_constants(const Patch& patch, const std::vector<std::vector<std::vector<Rational>>>& c);

/// (A + R, (0,1)): frame (e_1..e_r, ehat), bracket [(X,f),(Y,g)] =
/// ([X,Y], rho(X)g - rho(Y)f), anchor rho o pr_1.
JacobiAlgebroidData extend_with_R(const AlgebroidPatch& A);
/// The base algebroid of an extension (drops the last frame element).
AlgebroidPatch extension_base(const AlgebroidPatch& A);

/// Lie algebroid structures on A x R over M x R.
AlgebroidPatch lift_bar(const JacobiAlgebroidData& J);
AlgebroidPatch lift_hat(const JacobiAlgebroidData& J);

/// The standard pair ((A, phi0), (A*_0, 0)) with trivial dual structure.
JacobiBialgebroidData standard_bialgebroid(const JacobiAlgebroidData& J);
/// Algebroid structure on the dual frame, labelled with A's coframe names.
AlgebroidPatch dual_frame_algebroid(const AlgebroidPatch& A, const AlgebroidPatch& structure);

}  // namespace jacobi

#endif  // JACOBI_ALGEBROID_HPP
