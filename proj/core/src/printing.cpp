#include "jacobi/printing.hpp"

#include "jacobi/tensor_map.hpp"

namespace jacobi {

namespace {

bool is_compound(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        } else if (depth == 0 && i > 0 && (c == '+' || c == '-') && s[i - 1] == ' ') {
            return true;
        }
    }
    return false;
}

template <Kind K>
std::string graded_text(const Graded<K>& u, const AlgebroidPatch& A) {
    A.require(u);
    const auto& labels = K == Kind::vector ? A.frame_labels() : A.coframe_labels();
    if (u.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [m, c] : u.components()) {
        std::string basis;
        for (auto i : mask_indices(m)) {
            if (!basis.empty()) {
                basis += '^';
            }
            basis += labels[i];
        }
        std::string coeff = to_text(c, A.patch());
        std::string term;
        if (basis.empty()) {
            term = is_compound(coeff) ? "(" + coeff + ")" : coeff;
        } else if (coeff == "1") {
            term = basis;
        } else if (coeff == "-1") {
            term = "-" + basis;
        } else if (is_compound(coeff)) {
            term = "(" + coeff + ")*" + basis;
        } else {
            term = coeff + "*" + basis;
        }
        if (first) {
            out = term;
        } else if (term.front() == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
        first = false;
    }
    return out;
}

}  // namespace

std::string to_text(const ExpPoly& f, const Patch& patch) {
    const auto names = patch.variable_names();
    return f.to_string(names);
}

std::string to_text(const MultiVector& u, const AlgebroidPatch& A) { return graded_text(u, A); }

std::string to_text(const Form& u, const AlgebroidPatch& A) { return graded_text(u, A); }

std::string to_text(const TensorMap& m, const AlgebroidPatch& A) {
    std::string out = "matrix(";
    out += m.source() == Side::A ? "A" : "Astar";
    out += ", ";
    out += m.target() == Side::A ? "A" : "Astar";
    out += ", [";
    for (std::size_t i = 0; i < m.rank(); ++i) {
        out += i == 0 ? "[" : ", [";
        for (std::size_t j = 0; j < m.rank(); ++j) {
            if (j > 0) {
                out += ", ";
            }
            out += to_text(m(i, j), A.patch());
        }
        out += "]";
    }
    out += "])";
    return out;
}

}  // namespace jacobi
