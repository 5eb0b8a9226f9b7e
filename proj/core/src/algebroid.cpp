#include "jacobi/algebroid.hpp"

#include <set>

#include "jacobi/calculus.hpp"
#include "jacobi/printing.hpp"

namespace jacobi {

namespace {

template <Kind K>
Graded<K> embed(const Graded<K>& u, std::size_t rank) {
    Graded<K> out(rank, u.nvars(), u.degree());
    for (const auto& [m, c] : u.components()) {
        out.add(m, c);
    }
    return out;
}

template <Kind K>
Graded<K> truncate(const Graded<K>& u, std::size_t rank) {
    Graded<K> out(rank, u.nvars(), u.degree());
    const IndexMask keep = rank >= 32 ? ~IndexMask{0} : ((IndexMask{1} << rank) - 1);
    for (const auto& [m, c] : u.components()) {
        if ((m & ~keep) == 0) {
            out.add(m, c);
        }
    }
    return out;
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(prefix + std::to_string(i + 1));
    }
    return out;
}

}  // namespace

Patch::Patch(std::vector<std::string> names, std::string t) : coords(std::move(names)), t_name(std::move(t)) {}

std::vector<std::string> Patch::variable_names() const {
    std::vector<std::string> out = coords;
    out.push_back(t_name);
    return out;
}

std::optional<std::size_t> Patch::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == name) {
            return i;
        }
    }
    if (name == t_name) {
        return coords.size();
    }
    return std::nullopt;
}

Patch make_patch(std::vector<std::string> coords, std::string t_name) {
    std::set<std::string> seen;
    for (const auto& c : coords) {
        if (c.empty()) {
            throw InvalidStructure("coordinate names must be nonempty");
        }
        if (!seen.insert(c).second || c == t_name) {
            throw InvalidStructure("duplicate coordinate name '" + c + "'");
        }
    }
    if (t_name.empty()) {
        throw InvalidStructure("the name of t must be nonempty");
    }
    return Patch(std::move(coords), std::move(t_name));
}

AlgebroidPatch::AlgebroidPatch(Patch patch, std::size_t rank)
    : patch_(std::move(patch)),
      rank_(rank),
      anchor_((patch_.nvars() + 1) * rank, ExpPoly(patch_.nvars())),
      structure_(rank * rank, MultiVector(rank, patch_.nvars(), rank == 0 ? 0 : 1)),
      frame_labels_(numbered("e", rank)),
      coframe_labels_(numbered("eps", rank)) {
    if (rank == 0 || rank > kMaxRank) {
        throw ShapeMismatch("algebroid rank must be between 1 and " + std::to_string(kMaxRank));
    }
}

const ExpPoly& AlgebroidPatch::anchor(std::size_t var, std::size_t i) const {
    if (var > nvars() || i >= rank_) {
        throw ShapeMismatch("anchor index out of range");
    }
    return anchor_[var * rank_ + i];
}

void AlgebroidPatch::set_anchor(std::size_t var, std::size_t i, ExpPoly value) {
    if (var > nvars() || i >= rank_) {
        throw ShapeMismatch("anchor index out of range");
    }
    require(value);
    if (var == nvars() && !patch_.lifted && !value.is_zero()) {
        throw InvalidStructure("the anchor may only reach " + patch_.t_name + " on a lifted patch");
    }
    anchor_[var * rank_ + i] = std::move(value);
}

const MultiVector& AlgebroidPatch::structure(std::size_t i, std::size_t j) const {
    if (i >= rank_ || j >= rank_) {
        throw ShapeMismatch("frame index out of range");
    }
    return structure_[i * rank_ + j];
}

void AlgebroidPatch::set_structure(std::size_t i, std::size_t j, const MultiVector& value) {
    if (i >= rank_ || j >= rank_) {
        throw ShapeMismatch("frame index out of range");
    }
    require(value);
    if (value.degree() != 1) {
        throw ShapeMismatch("structure functions must form a degree-1 section");
    }
    if (i == j) {
        if (!value.is_zero()) {
            throw InvalidStructure("[e_i, e_i] must vanish");
        }
        return;
    }
    structure_[i * rank_ + j] = value;
    structure_[j * rank_ + i] = -value;
}

void AlgebroidPatch::set_labels(std::vector<std::string> frames, std::vector<std::string> coframes) {
    if (frames.size() != rank_ || coframes.size() != rank_) {
        throw ShapeMismatch("label count differs from rank");
    }
    frame_labels_ = std::move(frames);
    coframe_labels_ = std::move(coframes);
}

void AlgebroidPatch::require(const ExpPoly& f) const {
    if (f.nvars() != nvars()) {
        throw ShapeMismatch("coefficient does not live over this patch");
    }
}

JacobiAlgebroidData::JacobiAlgebroidData(AlgebroidPatch a) : A(std::move(a)), phi0(A.zero_form(1)) {}

JacobiAlgebroidData::JacobiAlgebroidData(AlgebroidPatch a, Form phi) : A(std::move(a)), phi0(std::move(phi)) {
    A.require(phi0);
    if (phi0.degree() != 1) {
        throw ShapeMismatch("phi0 must be a 1-cosection");
    }
}

JacobiAlgebroidData JacobiBialgebroidData::dual_side() const {
    return JacobiAlgebroidData(Astar, flip(X0));
}

JacobiBialgebroidData JacobiBialgebroidData::swapped() const {
    JacobiBialgebroidData out;
    out.A_side = dual_side();
    out.Astar = A_side.A;
    out.X0 = flip(A_side.phi0);
    return out;
}

ExpPoly anchor_apply(const AlgebroidPatch& A, const MultiVector& X, const ExpPoly& f) {
    A.require(X);
    A.require(f);
    if (X.degree() != 1) {
        throw ShapeMismatch("the anchor acts on degree-1 sections");
    }
    ExpPoly out(A.nvars());
    for (std::size_t var = 0; var <= A.nvars(); ++var) {
        if (!f.depends_on(var)) {
            continue;
        }
        ExpPoly coeff(A.nvars());
        for (const auto& [m, c] : X.components()) {
            const auto i = static_cast<std::size_t>(std::countr_zero(m));
            const ExpPoly& rho = A.anchor(var, i);
            if (!rho.is_zero()) {
                coeff += c * rho;
            }
        }
        if (!coeff.is_zero()) {
            out += coeff * f.derivative(var);
        }
    }
    return out;
}

ExpPoly anchor_apply(const JacobiAlgebroidData& J, const MultiVector& X, const ExpPoly& f) {
    return anchor_apply(J.A, X, f) + pair(J.phi0, X) * f;
}

MultiVector bracket_sections(const AlgebroidPatch& A, const MultiVector& X, const MultiVector& Y) {
    A.require(X);
    A.require(Y);
    if (X.degree() != 1 || Y.degree() != 1) {
        throw ShapeMismatch("the section bracket takes two degree-1 sections");
    }
    MultiVector out = A.zero_vector(1);
    for (const auto& [mx, cx] : X.components()) {
        const auto i = static_cast<std::size_t>(std::countr_zero(mx));
        for (const auto& [my, cy] : Y.components()) {
            const auto j = static_cast<std::size_t>(std::countr_zero(my));
            if (i != j) {
                out += (cx * cy) * A.structure(i, j);
            }
        }
    }
    for (const auto& [my, cy] : Y.components()) {
        out.add(my, anchor_apply(A, X, cy));
    }
    for (const auto& [mx, cx] : X.components()) {
        out.add(mx, -anchor_apply(A, Y, cx));
    }
    return out;
}

CheckResult validate_algebroid(const AlgebroidPatch& A) {
    const std::size_t r = A.rank();
    const std::size_t n = A.nvars();
    const auto names = A.patch().variable_names();
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            const MultiVector ei = A.frame(i);
            const MultiVector ej = A.frame(j);
            const MultiVector bij = A.structure(i, j);
            for (std::size_t var = 0; var <= n; ++var) {
                const ExpPoly x = ExpPoly::variable(n, var);
                ExpPoly residue = anchor_apply(A, bij, x) -
                                  (anchor_apply(A, ei, anchor_apply(A, ej, x)) -
                                   anchor_apply(A, ej, anchor_apply(A, ei, x)));
                if (!residue.is_zero()) {
                    return CheckResult::fail(
                        "frame identities",
                        Witness{"anchor([e_i,e_j]) - [anchor(e_i), anchor(e_j)] applied to " + names[var],
                                {A.frame_labels()[i], A.frame_labels()[j]},
                                to_text(residue, A.patch())});
                }
            }
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            for (std::size_t k = j + 1; k < r; ++k) {
                const MultiVector ei = A.frame(i);
                const MultiVector ej = A.frame(j);
                const MultiVector ek = A.frame(k);
                MultiVector residue = bracket_sections(A, A.structure(i, j), ek) +
                                      bracket_sections(A, A.structure(j, k), ei) +
                                      bracket_sections(A, A.structure(k, i), ej);
                if (!residue.is_zero()) {
                    return CheckResult::fail(
                        "frame identities",
                        Witness{"[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y]",
                                {A.frame_labels()[i], A.frame_labels()[j], A.frame_labels()[k]},
                                to_text(residue, A)});
                }
            }
        }
    }
    return CheckResult::pass("frame identities");
}

CheckResult validate_jacobi_algebroid(const JacobiAlgebroidData& J) {
    CheckResult base = validate_algebroid(J.A);
    if (!base.passed()) {
        return base;
    }
    Form dphi = differential(J.A, J.phi0);
    if (!dphi.is_zero()) {
        return CheckResult::fail("frame identities",
                                 Witness{"d phi0", {to_text(J.phi0, J.A)}, to_text(dphi, J.A)});
    }
    return CheckResult::pass("frame identities");
}

AlgebroidPatch make_tangent(const Patch& patch) {
    const std::size_t n = patch.nvars();
    AlgebroidPatch A(patch, n);
    for (std::size_t i = 0; i < n; ++i) {
        A.set_anchor(i, i, ExpPoly::one(n));
    }
    std::vector<std::string> frames;
    std::vector<std::string> coframes;
    for (const auto& c : patch.coords) {
        frames.push_back("dd" + c);
        coframes.push_back("d" + c);
    }
    A.set_labels(std::move(frames), std::move(coframes));
    return A;
}

AlgebroidPatch make_trivial(const Patch& patch, std::size_t rank) {
    return AlgebroidPatch(patch, rank);
}

AlgebroidPatch make_trivial_like(const AlgebroidPatch& A) {
    AlgebroidPatch out(A.patch(), A.rank());
    out.set_labels(A.frame_labels(), A.coframe_labels());
    return out;
}

AlgebroidPatch make_from_constants(const Patch& patch, const std::vector<std::vector<std::vector<Rational>>>& c) {
    const std::size_t r = c.size();
    AlgebroidPatch A(patch, r);
    const std::size_t n = patch.nvars();
    for (std::size_t i = 0; i < r; ++i) {
        if (c[i].size() != r) {
            throw ShapeMismatch("structure constants must be an r x r x r array");
        }
        for (std::size_t j = i + 1; j < r; ++j) {
            if (c[i][j].size() != r || c[j][i].size() != r) {
                throw ShapeMismatch("structure constants must be an r x r x r array");
            }
            MultiVector v = A.zero_vector(1);
            for (std::size_t k = 0; k < r; ++k) {
                if (c[i][j][k] != -c[j][i][k]) {
                    throw InvalidStructure("structure constants must be antisymmetric");
                }
                v.add(IndexMask{1} << k, ExpPoly::constant(n, c[i][j][k]));
            }
            A.set_structure(i, j, v);
        }
    }
    return A;
}

JacobiAlgebroidData extend_with_R(const AlgebroidPatch& A) {
    if (A.is_extension()) {
        throw InvalidStructure("algebroid is already of the form B + R");
    }
    CheckResult valid = validate_algebroid(A);
    if (!valid.passed()) {
        throw InvalidStructure("cannot extend an invalid algebroid");
    }
    const std::size_t r = A.rank();
    AlgebroidPatch out(A.patch(), r + 1);
    for (std::size_t var = 0; var <= A.nvars(); ++var) {
        for (std::size_t i = 0; i < r; ++i) {
            out.set_anchor(var, i, A.anchor(var, i));
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            out.set_structure(i, j, embed(A.structure(i, j), r + 1));
        }
    }
    auto frames = A.frame_labels();
    auto coframes = A.coframe_labels();
    frames.emplace_back("ehat");
    coframes.emplace_back("epshat");
    out.set_labels(std::move(frames), std::move(coframes));
    out.mark_extension(true);
    Form phi0 = out.coframe(r);
    return JacobiAlgebroidData(std::move(out), std::move(phi0));
}

AlgebroidPatch extension_base(const AlgebroidPatch& A) {
    if (!A.is_extension()) {
        throw InvalidStructure("not an algebroid of the form B + R");
    }
    const std::size_t r = A.rank() - 1;
    AlgebroidPatch out(A.patch(), r);
    for (std::size_t var = 0; var <= A.nvars(); ++var) {
        for (std::size_t i = 0; i < r; ++i) {
            out.set_anchor(var, i, A.anchor(var, i));
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            out.set_structure(i, j, truncate(A.structure(i, j), r));
        }
    }
    auto frames = A.frame_labels();
    auto coframes = A.coframe_labels();
    frames.pop_back();
    coframes.pop_back();
    out.set_labels(std::move(frames), std::move(coframes));
    return out;
}

namespace {

Patch lifted_patch(const JacobiAlgebroidData& J) {
    if (J.A.patch().lifted) {
        throw InvalidStructure("algebroid already lives over M x R");
    }
    CheckResult valid = validate_jacobi_algebroid(J);
    if (!valid.passed()) {
        throw InvalidStructure("cannot lift an invalid Jacobi algebroid");
    }
    Patch p = J.A.patch();
    p.lifted = true;
    return p;
}

AlgebroidPatch lifted_shell(const JacobiAlgebroidData& J, Patch p) {
    AlgebroidPatch out(std::move(p), J.A.rank());
    out.set_labels(J.A.frame_labels(), J.A.coframe_labels());
    out.mark_extension(J.A.is_extension());
    return out;
}

}  // namespace

AlgebroidPatch lift_bar(const JacobiAlgebroidData& J) {
    AlgebroidPatch out = lifted_shell(J, lifted_patch(J));
    const std::size_t r = J.A.rank();
    const std::size_t n = J.A.nvars();
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t var = 0; var < n; ++var) {
            out.set_anchor(var, i, J.A.anchor(var, i));
        }
        out.set_anchor(n, i, J.phi0.at(IndexMask{1} << i));
        for (std::size_t j = i + 1; j < r; ++j) {
            out.set_structure(i, j, J.A.structure(i, j));
        }
    }
    return out;
}

AlgebroidPatch lift_hat(const JacobiAlgebroidData& J) {
    AlgebroidPatch out = lifted_shell(J, lifted_patch(J));
    const std::size_t r = J.A.rank();
    const std::size_t n = J.A.nvars();
    const ExpPoly w = ExpPoly::exp_t(n, -1);
    for (std::size_t i = 0; i < r; ++i) {
        const ExpPoly phi_i = J.phi0.at(IndexMask{1} << i);
        for (std::size_t var = 0; var < n; ++var) {
            out.set_anchor(var, i, w * J.A.anchor(var, i));
        }
        out.set_anchor(n, i, w * phi_i);
        for (std::size_t j = i + 1; j < r; ++j) {
            const ExpPoly phi_j = J.phi0.at(IndexMask{1} << j);
            MultiVector b = J.A.structure(i, j) - phi_i * J.A.frame(j) + phi_j * J.A.frame(i);
            out.set_structure(i, j, w * b);
        }
    }
    return out;
}

JacobiBialgebroidData standard_bialgebroid(const JacobiAlgebroidData& J) {
    JacobiBialgebroidData B;
    B.A_side = J;
    B.Astar = dual_frame_algebroid(J.A, make_trivial(J.A.patch(), J.A.rank()));
    B.X0 = J.A.zero_vector(1);
    return B;
}

AlgebroidPatch dual_frame_algebroid(const AlgebroidPatch& A, const AlgebroidPatch& structure) {
    if (structure.rank() != A.rank() || !(structure.patch() == A.patch())) {
        throw ShapeMismatch("dual structure must live on the same patch with the same rank");
    }
    AlgebroidPatch out = structure;
    out.set_labels(A.coframe_labels(), A.frame_labels());
    out.mark_extension(false);
    return out;
}

}  // namespace jacobi
