#include "jacobi/dsl/interpreter.hpp"

#include <functional>

#include "jacobi/calculus.hpp"
#include "jacobi/dsl/parser.hpp"
#include "jacobi/dsl/printer.hpp"
#include "jacobi/instances.hpp"
#include "jacobi/printing.hpp"
#include "jacobi/structures.hpp"

namespace jacobi::dsl {

namespace {

using List = std::shared_ptr<ListValue>;

[[noreturn]] void fail(const Expr& e, const std::string& msg) { throw ScriptError(e.loc, msg); }

template <class T>
bool is(const Value& v) {
    return std::holds_alternative<T>(v);
}

bool is_scalar(const Value& v) { return is<Rational>(v) || is<ExpPoly>(v); }

ExpPoly to_poly(const Value& v, std::size_t nvars) {
    if (is<Rational>(v)) {
        return ExpPoly::constant(nvars, std::get<Rational>(v));
    }
    return std::get<ExpPoly>(v);
}

std::size_t nvars_of(const Value& v) {
    if (is<ExpPoly>(v)) {
        return std::get<ExpPoly>(v).nvars();
    }
    if (is<MultiVector>(v)) {
        return std::get<MultiVector>(v).nvars();
    }
    if (is<Form>(v)) {
        return std::get<Form>(v).nvars();
    }
    if (is<TensorMap>(v)) {
        return std::get<TensorMap>(v).nvars();
    }
    return 0;
}

long to_integer(const Expr& e, const Value& v) {
    std::optional<Rational> q;
    if (is<Rational>(v)) {
        q = std::get<Rational>(v);
    } else if (is<ExpPoly>(v)) {
        q = std::get<ExpPoly>(v).as_constant();
    }
    if (!q || q->get_den() != 1 || !q->get_num().fits_slong_p()) {
        fail(e, "expected an integer");
    }
    return q->get_num().get_si();
}

template <Kind K>
Graded<K> scale(const Graded<K>& u, const Value& s) {
    if (is<Rational>(s)) {
        return std::get<Rational>(s) * u;
    }
    return std::get<ExpPoly>(s) * u;
}

Value negate(const Expr& e, const Value& v) {
    if (is<Rational>(v)) {
        return Rational(-std::get<Rational>(v));
    }
    if (is<ExpPoly>(v)) {
        return -std::get<ExpPoly>(v);
    }
    if (is<MultiVector>(v)) {
        return -std::get<MultiVector>(v);
    }
    if (is<Form>(v)) {
        return -std::get<Form>(v);
    }
    if (is<TensorMap>(v)) {
        return -std::get<TensorMap>(v);
    }
    fail(e, std::string("cannot negate a ") + value_type_name(v));
}

Value add(const Expr& e, const Value& a, const Value& b) {
    if (is<Rational>(a) && is<Rational>(b)) {
        return Rational(std::get<Rational>(a) + std::get<Rational>(b));
    }
    if (is_scalar(a) && is_scalar(b)) {
        const std::size_t n = std::max(nvars_of(a), nvars_of(b));
        return to_poly(a, n) + to_poly(b, n);
    }
    if (is<MultiVector>(a) && is<MultiVector>(b)) {
        return std::get<MultiVector>(a) + std::get<MultiVector>(b);
    }
    if (is<Form>(a) && is<Form>(b)) {
        return std::get<Form>(a) + std::get<Form>(b);
    }
    if (is<TensorMap>(a) && is<TensorMap>(b)) {
        return std::get<TensorMap>(a) + std::get<TensorMap>(b);
    }
    // 0 + u and u + 0
    if (is<Rational>(a) && std::get<Rational>(a) == 0) {
        return b;
    }
    if (is<Rational>(b) && std::get<Rational>(b) == 0) {
        return a;
    }
    fail(e, std::string("cannot add a ") + value_type_name(a) + " and a " + value_type_name(b));
}

Value multiply(const Expr& e, const Value& a, const Value& b) {
    if (is<Rational>(a) && is<Rational>(b)) {
        return Rational(std::get<Rational>(a) * std::get<Rational>(b));
    }
    if (is_scalar(a) && is_scalar(b)) {
        const std::size_t n = std::max(nvars_of(a), nvars_of(b));
        return to_poly(a, n) * to_poly(b, n);
    }
    if (is_scalar(a) && is<MultiVector>(b)) {
        return scale(std::get<MultiVector>(b), a);
    }
    if (is_scalar(b) && is<MultiVector>(a)) {
        return scale(std::get<MultiVector>(a), b);
    }
    if (is_scalar(a) && is<Form>(b)) {
        return scale(std::get<Form>(b), a);
    }
    if (is_scalar(b) && is<Form>(a)) {
        return scale(std::get<Form>(a), b);
    }
    if (is_scalar(a) && is<TensorMap>(b)) {
        const auto& m = std::get<TensorMap>(b);
        return to_poly(a, m.nvars()) * m;
    }
    if (is_scalar(b) && is<TensorMap>(a)) {
        const auto& m = std::get<TensorMap>(a);
        return to_poly(b, m.nvars()) * m;
    }
    if (is<TensorMap>(a) && is<TensorMap>(b)) {
        return compose(std::get<TensorMap>(a), std::get<TensorMap>(b));
    }
    if (is<TensorMap>(a) && is<MultiVector>(b)) {
        const auto& m = std::get<TensorMap>(a);
        if (m.target() == Side::A) {
            return apply<Kind::vector>(m, std::get<MultiVector>(b));
        }
        return apply<Kind::form>(m, std::get<MultiVector>(b));
    }
    if (is<TensorMap>(a) && is<Form>(b)) {
        const auto& m = std::get<TensorMap>(a);
        if (m.target() == Side::A) {
            return apply<Kind::vector>(m, std::get<Form>(b));
        }
        return apply<Kind::form>(m, std::get<Form>(b));
    }
    if ((is<MultiVector>(a) || is<Form>(a)) && (is<MultiVector>(b) || is<Form>(b))) {
        fail(e, "use ^ for the wedge product");
    }
    fail(e, std::string("cannot multiply a ") + value_type_name(a) + " by a " + value_type_name(b));
}

Value divide(const Expr& e, const Value& a, const Value& b) {
    if (is<Rational>(b)) {
        const Rational& q = std::get<Rational>(b);
        if (q == 0) {
            fail(e, "division by zero");
        }
        return multiply(e, a, Rational(1 / q));
    }
    if (is<ExpPoly>(b)) {
        const ExpPoly& f = std::get<ExpPoly>(b);
        if (!f.is_unit()) {
            fail(e, "division by a coefficient that is not a unit");
        }
        return multiply(e, a, f.unit_inverse());
    }
    fail(e, std::string("cannot divide by a ") + value_type_name(b));
}

Value power_or_wedge(const Expr& e, const Value& a, const Value& b) {
    if (is<Rational>(b) && (is_scalar(a) || is<MultiVector>(a) || is<Form>(a))) {
        const long k = to_integer(*e.args[1], b);
        if (k < 0) {
            fail(e, "negative exponent");
        }
        const auto n = static_cast<unsigned>(k);
        if (is<Rational>(a)) {
            Rational out = 1;
            for (unsigned i = 0; i < n; ++i) {
                out *= std::get<Rational>(a);
            }
            return out;
        }
        if (is<ExpPoly>(a)) {
            return std::get<ExpPoly>(a).pow(n);
        }
        if (is<MultiVector>(a)) {
            return wedge_power(std::get<MultiVector>(a), n);
        }
        return wedge_power(std::get<Form>(a), n);
    }
    if (is<MultiVector>(a) && is<MultiVector>(b)) {
        return wedge(std::get<MultiVector>(a), std::get<MultiVector>(b));
    }
    if (is<Form>(a) && is<Form>(b)) {
        return wedge(std::get<Form>(a), std::get<Form>(b));
    }
    if (is_scalar(a) || is_scalar(b)) {
        return multiply(e, a, b);
    }
    fail(e, std::string("cannot wedge a ") + value_type_name(a) + " with a " + value_type_name(b));
}

const JacobiAlgebroidData* context_of(const Value& v) {
    if (is<JacobiAlgebroidData>(v)) {
        return &std::get<JacobiAlgebroidData>(v);
    }
    if (is<JacobiBialgebroidData>(v)) {
        return &std::get<JacobiBialgebroidData>(v).A_side;
    }
    if (is<LiftedInstance>(v)) {
        return &std::get<LiftedInstance>(v).source.A_side;
    }
    return nullptr;
}

AlgebroidPatch generic_algebroid(std::size_t rank, std::size_t nvars) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= nvars; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return AlgebroidPatch(make_patch(std::move(names)), rank);
}

template <Kind K>
std::string graded_text(const Graded<K>& u, const JacobiAlgebroidData* ctx) {
    if (ctx != nullptr && ctx->A.rank() == u.rank() && ctx->A.nvars() == u.nvars()) {
        return to_text(u, ctx->A);
    }
    return to_text(u, generic_algebroid(u.rank(), u.nvars()));
}

std::string text_of(const Value& v, const JacobiAlgebroidData* ctx) {
    if (is<Rational>(v)) {
        return std::get<Rational>(v).get_str();
    }
    if (is<ExpPoly>(v)) {
        const auto& f = std::get<ExpPoly>(v);
        if (ctx != nullptr && ctx->A.nvars() == f.nvars()) {
            return to_text(f, ctx->A.patch());
        }
        const auto names = default_variable_names(f.nvars());
        return f.to_string(names);
    }
    if (is<MultiVector>(v)) {
        return graded_text(std::get<MultiVector>(v), ctx);
    }
    if (is<Form>(v)) {
        return graded_text(std::get<Form>(v), ctx);
    }
    if (is<TensorMap>(v)) {
        const auto& m = std::get<TensorMap>(v);
        if (ctx != nullptr && ctx->A.rank() == m.rank() && ctx->A.nvars() == m.nvars()) {
            return to_text(m, ctx->A);
        }
        return to_text(m, generic_algebroid(m.rank(), m.nvars()));
    }
    return value_type_name(v);
}

bool value_is_zero(const Value& v) {
    if (is<Rational>(v)) {
        return std::get<Rational>(v) == 0;
    }
    if (is<ExpPoly>(v)) {
        return std::get<ExpPoly>(v).is_zero();
    }
    if (is<MultiVector>(v)) {
        return std::get<MultiVector>(v).is_zero();
    }
    if (is<Form>(v)) {
        return std::get<Form>(v).is_zero();
    }
    if (is<TensorMap>(v)) {
        return std::get<TensorMap>(v).is_zero();
    }
    throw ShapeMismatch(std::string("a ") + value_type_name(v) + " has no zero test");
}

std::optional<std::size_t> numbered(const std::string& name, const std::string& prefix) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) {
        return std::nullopt;
    }
    std::size_t k = 0;
    for (std::size_t i = prefix.size(); i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') {
            return std::nullopt;
        }
        k = k * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    if (k == 0) {
        return std::nullopt;
    }
    return k - 1;
}

// Witness for randomized property failures.
CheckResult property_failure(const std::string& identity, std::vector<std::string> args, std::string residue) {
    return CheckResult::fail("seeded random instances", Witness{identity, std::move(args), std::move(residue)});
}

}  // namespace

const char* value_type_name(const Value& v) {
    switch (v.index()) {
        case 0:
            return "number";
        case 1:
            return "scalar";
        case 2:
            return "multivector";
        case 3:
            return "form";
        case 4:
            return "map";
        case 5:
            return "graph";
        case 6:
            return "patch";
        case 7:
            return "algebroid";
        case 8:
            return "bialgebroid";
        case 9:
            return "lift";
        default:
            return "list";
    }
}

const JacobiAlgebroidData* Interpreter::current() const {
    if (current_.empty()) {
        return nullptr;
    }
    auto it = names_.find(current_);
    return it == names_.end() ? nullptr : &std::get<JacobiAlgebroidData>(it->second);
}

Value Interpreter::evaluate(const Expr& e) { return eval(e, current()); }

Value Interpreter::evaluate(const Expr& e, const JacobiAlgebroidData* context) { return eval(e, context); }

Value Interpreter::resolve_name(const Expr& e, const JacobiAlgebroidData* ctx) {
    if (auto it = names_.find(e.text); it != names_.end()) {
        return it->second;
    }
    if (ctx != nullptr) {
        const AlgebroidPatch& A = ctx->A;
        const std::size_t n = A.nvars();
        if (auto idx = A.patch().index_of(e.text)) {
            return ExpPoly::variable(n, *idx);
        }
        const auto& frames = A.frame_labels();
        const auto& coframes = A.coframe_labels();
        for (std::size_t i = 0; i < frames.size(); ++i) {
            if (frames[i] == e.text) {
                return A.frame(i);
            }
        }
        for (std::size_t i = 0; i < coframes.size(); ++i) {
            if (coframes[i] == e.text) {
                return A.coframe(i);
            }
        }
        if (auto k = numbered(e.text, "eps"); k && *k < A.rank()) {
            return A.coframe(*k);
        }
        if (auto k = numbered(e.text, "e"); k && *k < A.rank()) {
            return A.frame(*k);
        }
    }
    fail(e, "unknown identifier '" + e.text + "'");
}

Value Interpreter::eval(const Expr& e, const JacobiAlgebroidData* ctx) {
    switch (e.kind) {
        case Expr::Kind::number:
            return Rational(e.text);
        case Expr::Kind::name:
            return resolve_name(e, ctx);
        case Expr::Kind::negate:
            return negate(e, eval(*e.args[0], ctx));
        case Expr::Kind::binary: {
            const Value a = eval(*e.args[0], ctx);
            const Value b = eval(*e.args[1], ctx);
            if (e.text == "+") {
                return add(e, a, b);
            }
            if (e.text == "-") {
                return add(e, a, negate(e, b));
            }
            if (e.text == "*") {
                return multiply(e, a, b);
            }
            if (e.text == "/") {
                return divide(e, a, b);
            }
            return power_or_wedge(e, a, b);
        }
        case Expr::Kind::call:
            return call(e, ctx);
        case Expr::Kind::graph: {
            const Value inner = eval(*e.args[0], ctx);
            if (e.text == "sharp") {
                if (!is<MultiVector>(inner)) {
                    fail(e, "(sharp p) needs a 2-section");
                }
                return GraphRelation::sharp(std::get<MultiVector>(inner));
            }
            if (!is<Form>(inner)) {
                fail(e, "(flat w) needs a 2-cosection");
            }
            return GraphRelation::flat(std::get<Form>(inner));
        }
        case Expr::Kind::list: {
            auto out = std::make_shared<ListValue>();
            for (const auto& a : e.args) {
                out->items.push_back(eval(*a, ctx));
            }
            return out;
        }
        case Expr::Kind::tuple: {
            if (e.args.size() == 2 && ctx != nullptr && ctx->A.is_extension()) {
                const JacobiAlgebroidData base(extension_base(ctx->A));
                const Value p = eval(*e.args[0], &base);
                const Value q = eval(*e.args[1], &base);
                const std::size_t r = base.A.rank();
                const std::size_t n = base.A.nvars();
                auto zero_like = [&](const Value& v) { return is<Rational>(v) && std::get<Rational>(v) == 0; };
                if (is<MultiVector>(p) || is<MultiVector>(q)) {
                    MultiVector P = is<MultiVector>(p) ? std::get<MultiVector>(p) : MultiVector(r, n, 0);
                    MultiVector Q = is<MultiVector>(q) ? std::get<MultiVector>(q) : MultiVector(r, n, 0);
                    if (!is<MultiVector>(p)) {
                        if (!zero_like(p) && !is_scalar(p)) {
                            fail(e, "tuple components must have the same kind");
                        }
                        P = is_scalar(p) && !zero_like(p) ? MultiVector::scalar(to_poly(p, n), r)
                                                         : MultiVector(r, n, Q.degree() + 1);
                    }
                    if (!is<MultiVector>(q)) {
                        if (!zero_like(q) && !is_scalar(q)) {
                            fail(e, "tuple components must have the same kind");
                        }
                        if (zero_like(q)) {
                            Q = MultiVector(r, n, P.degree() == 0 ? 0 : P.degree() - 1);
                        } else {
                            Q = MultiVector::scalar(to_poly(q, n), r);
                        }
                    }
                    return merge(ctx->A, P, Q);
                }
                if (is<Form>(p) || is<Form>(q)) {
                    Form P = is<Form>(p) ? std::get<Form>(p) : Form(r, n, 0);
                    Form Q = is<Form>(q) ? std::get<Form>(q) : Form(r, n, 0);
                    if (!is<Form>(p)) {
                        if (!is_scalar(p)) {
                            fail(e, "tuple components must have the same kind");
                        }
                        P = zero_like(p) ? Form(r, n, Q.degree() + 1) : Form::scalar(to_poly(p, n), r);
                    }
                    if (!is<Form>(q)) {
                        if (!is_scalar(q)) {
                            fail(e, "tuple components must have the same kind");
                        }
                        Q = zero_like(q) ? Form(r, n, P.degree() == 0 ? 0 : P.degree() - 1)
                                         : Form::scalar(to_poly(q, n), r);
                    }
                    return merge(ctx->A, P, Q);
                }
                fail(e, "a tuple of two numbers is ambiguous; write it with frame tokens");
            }
            auto out = std::make_shared<ListValue>();
            out->tuple = true;
            for (const auto& a : e.args) {
                out->items.push_back(eval(*a, ctx));
            }
            return out;
        }
    }
    fail(e, "unsupported expression");
}

Value Interpreter::call(const Expr& e, const JacobiAlgebroidData* ctx) {
    const std::string& f = e.text;
    auto arity = [&](std::size_t n) {
        if (e.args.size() != n) {
            fail(e, f + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                        std::to_string(e.args.size()));
        }
    };
    auto no_keywords = [&] {
        if (!e.keywords.empty()) {
            fail(e, f + " takes no keyword arguments");
        }
    };
    auto need = [&](const Value& v, auto tag, const char* what) -> decltype(auto) {
        using T = typename decltype(tag)::type;
        if (!is<T>(v)) {
            fail(e, f + ": expected " + what + ", got a " + value_type_name(v));
        }
        return std::get<T>(v);
    };
    struct JT {
        using type = JacobiAlgebroidData;
    };
    struct PT {
        using type = Patch;
    };
    struct MT {
        using type = TensorMap;
    };
    struct VT {
        using type = MultiVector;
    };
    struct FT {
        using type = Form;
    };
    struct BT {
        using type = JacobiBialgebroidData;
    };

    // Constructors of algebroids, bialgebroids and lifts.
    if (f == "tangent") {
        arity(1);
        no_keywords();
        return JacobiAlgebroidData(make_tangent(need(eval(*e.args[0], ctx), PT{}, "a patch")));
    }
    if (f == "trivial") {
        arity(2);
        no_keywords();
        const Patch p = need(eval(*e.args[0], ctx), PT{}, "a patch");
        const long r = to_integer(*e.args[1], eval(*e.args[1], ctx));
        if (r < 0 || r > 12) {
            fail(e, "rank must be between 0 and 12");
        }
        return JacobiAlgebroidData(make_trivial(p, static_cast<std::size_t>(r)));
    }
    if (f == "extend_r") {
        arity(1);
        no_keywords();
        return extend_with_R(need(eval(*e.args[0], ctx), JT{}, "an algebroid").A);
    }
    if (f == "lift_bar" || f == "lift_hat") {
        arity(1);
        no_keywords();
        const JacobiAlgebroidData J = need(eval(*e.args[0], ctx), JT{}, "an algebroid");
        return JacobiAlgebroidData(f == "lift_bar" ? lift_bar(J) : lift_hat(J));
    }
    if (f == "jacobi") {
        arity(2);
        no_keywords();
        const JacobiAlgebroidData J = need(eval(*e.args[0], ctx), JT{}, "an algebroid");
        const Value phi = eval(*e.args[1], &J);
        return JacobiAlgebroidData(J.A, need(phi, FT{}, "a 1-cosection"));
    }
    if (f == "explicit") {
        arity(2);
        const Patch p = need(eval(*e.args[0], ctx), PT{}, "a patch");
        const long r = to_integer(*e.args[1], eval(*e.args[1], ctx));
        if (r <= 0 || r > 12) {
            fail(e, "rank must be between 1 and 12");
        }
        const auto rank = static_cast<std::size_t>(r);
        JacobiAlgebroidData shell{AlgebroidPatch(p, rank)};
        AlgebroidPatch& A = shell.A;
        const std::size_t n = p.nvars();
        for (const auto& k : e.keywords) {
            const Value v = eval(*k.value, &shell);
            if (!is<List>(v)) {
                fail(*k.value, k.key + " expects a list");
            }
            const auto& rows = std::get<List>(v)->items;
            if (k.key == "anchor") {
                if (rows.size() != rank) {
                    fail(*k.value, "anchor needs one row per frame element");
                }
                for (std::size_t i = 0; i < rank; ++i) {
                    if (!is<List>(rows[i]) || std::get<List>(rows[i])->items.size() != n) {
                        fail(*k.value, "each anchor row needs one entry per coordinate");
                    }
                    const auto& row = std::get<List>(rows[i])->items;
                    for (std::size_t a = 0; a < n; ++a) {
                        if (!is_scalar(row[a])) {
                            fail(*k.value, "anchor entries must be scalars");
                        }
                        A.set_anchor(a, i, to_poly(row[a], n));
                    }
                }
            } else if (k.key == "bracket") {
                for (const auto& item : rows) {
                    if (!is<List>(item) || std::get<List>(item)->items.size() != 3) {
                        fail(*k.value, "bracket entries are [i, j, value]");
                    }
                    const auto& t = std::get<List>(item)->items;
                    const long i = to_integer(*k.value, t[0]);
                    const long j = to_integer(*k.value, t[1]);
                    if (i < 1 || j < 1 || i > r || j > r || i == j) {
                        fail(*k.value, "bracket indices must be distinct and in 1.." + std::to_string(r));
                    }
                    MultiVector val = is<MultiVector>(t[2]) ? std::get<MultiVector>(t[2]) : A.zero_vector(1);
                    if (!is<MultiVector>(t[2]) && !value_is_zero(t[2])) {
                        fail(*k.value, "bracket values must be sections");
                    }
                    A.set_structure(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), val);
                }
            } else {
                fail(*k.value, "unknown keyword '" + k.key + "' for explicit");
            }
        }
        return shell;
    }
    if (f == "standard") {
        arity(1);
        no_keywords();
        return standard_bialgebroid(need(eval(*e.args[0], ctx), JT{}, "an algebroid"));
    }
    if (f == "dual_pair") {
        arity(2);
        no_keywords();
        const JacobiAlgebroidData J = need(eval(*e.args[0], ctx), JT{}, "an algebroid");
        const JacobiAlgebroidData D = need(eval(*e.args[1], ctx), JT{}, "an algebroid");
        JacobiBialgebroidData B;
        B.A_side = J;
        B.Astar = dual_frame_algebroid(J.A, D.A);
        B.X0 = flip(D.phi0);
        return B;
    }
    if (f == "jacobize") {
        arity(1);
        no_keywords();
        const Value v = eval(*e.args[0], ctx);
        if (is<JacobiAlgebroidData>(v)) {
            return lift_instance(std::get<JacobiAlgebroidData>(v));
        }
        return lift_instance(need(v, BT{}, "an algebroid or bialgebroid"));
    }
    if (f == "matrix") {
        arity(3);
        no_keywords();
        auto side = [&](const Expr& a) {
            if (a.kind == Expr::Kind::name && a.text == "A") {
                return Side::A;
            }
            if (a.kind == Expr::Kind::name && a.text == "Astar") {
                return Side::Astar;
            }
            fail(a, "matrix sides are A or Astar");
        };
        const Side src = side(*e.args[0]);
        const Side dst = side(*e.args[1]);
        if (ctx == nullptr) {
            fail(e, "matrix needs a current algebroid");
        }
        const std::size_t r = ctx->A.rank();
        const std::size_t n = ctx->A.nvars();
        const Value v = eval(*e.args[2], ctx);
        if (!is<List>(v) || std::get<List>(v)->items.size() != r) {
            fail(*e.args[2], "matrix needs " + std::to_string(r) + " rows");
        }
        TensorMap m(src, dst, r, n);
        const auto& rows = std::get<List>(v)->items;
        for (std::size_t i = 0; i < r; ++i) {
            if (!is<List>(rows[i]) || std::get<List>(rows[i])->items.size() != r) {
                fail(*e.args[2], "matrix rows need " + std::to_string(r) + " entries");
            }
            for (std::size_t j = 0; j < r; ++j) {
                const Value& x = std::get<List>(rows[i])->items[j];
                if (!is_scalar(x)) {
                    fail(*e.args[2], "matrix entries must be scalars");
                }
                m.set(i, j, to_poly(x, n));
            }
        }
        return m;
    }
    if (f == "identity") {
        arity(1);
        no_keywords();
        const Expr& a = *e.args[0];
        if (ctx == nullptr || a.kind != Expr::Kind::name || (a.text != "A" && a.text != "Astar")) {
            fail(e, "identity(A) or identity(Astar) with a current algebroid");
        }
        return TensorMap::identity(a.text == "A" ? Side::A : Side::Astar, ctx->A.rank(), ctx->A.nvars());
    }
    if (f == "exp") {
        arity(1);
        no_keywords();
        if (ctx == nullptr) {
            fail(e, "exp needs a current algebroid");
        }
        const std::size_t n = ctx->A.nvars();
        const ExpPoly arg = to_poly(eval(*e.args[0], ctx), n);
        // arg must be k * t for an integer k
        ExpPoly k_part = arg.derivative(n);
        const auto k = k_part.as_constant();
        if (!k || k->get_den() != 1 || !(arg == ExpPoly::constant(n, *k) * ExpPoly::t(n))) {
            fail(e, "exp takes k*t with an integer k");
        }
        return ExpPoly::exp_t(n, static_cast<int>(k->get_num().get_si()));
    }

    no_keywords();
    // An algebroid, bialgebroid or lift as first argument fixes the context.
    std::size_t first = 0;
    Value owner;
    if (!e.args.empty() && e.args[0]->kind == Expr::Kind::name) {
        if (auto it = names_.find(e.args[0]->text); it != names_.end() && context_of(it->second) != nullptr) {
            owner = it->second;
            ctx = context_of(owner);
            first = 1;
        }
    }
    if (ctx == nullptr) {
        fail(e, f + " needs an algebroid context; declare one or pass it as the first argument");
    }
    const JacobiAlgebroidData& J = *ctx;
    std::vector<Value> args;
    for (std::size_t i = first; i < e.args.size(); ++i) {
        args.push_back(eval(*e.args[i], ctx));
    }
    auto count = [&](std::size_t n) {
        if (args.size() != n) {
            fail(e, f + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                        std::to_string(args.size()));
        }
    };
    auto form_arg = [&](std::size_t i) -> Form {
        if (is_scalar(args[i])) {
            return Form::scalar(to_poly(args[i], J.A.nvars()), J.A.rank());
        }
        return need(args[i], FT{}, "a form");
    };
    auto vector_arg = [&](std::size_t i) -> MultiVector {
        if (is_scalar(args[i])) {
            return MultiVector::scalar(to_poly(args[i], J.A.nvars()), J.A.rank());
        }
        return need(args[i], VT{}, "a multivector");
    };

    if (f == "d" || f == "d_phi") {
        count(1);
        const Form w = form_arg(0);
        return f == "d" ? differential(J.A, w) : differential(J, w);
    }
    if (f == "d_dual") {
        count(1);
        if (!is<JacobiBialgebroidData>(owner)) {
            fail(e, "d_dual takes a bialgebroid as first argument");
        }
        return dual_differential(std::get<JacobiBialgebroidData>(owner), vector_arg(0));
    }
    if (f == "schouten" || f == "sbracket_phi") {
        count(2);
        const MultiVector P = vector_arg(0);
        const MultiVector Q = vector_arg(1);
        return f == "schouten" ? schouten(J.A, P, Q) : phi0_schouten(J, P, Q);
    }
    if (f == "lie" || f == "lie_phi") {
        count(2);
        const MultiVector X = need(args[0], VT{}, "a section");
        const bool twisted = f == "lie_phi";
        if (is_scalar(args[1])) {
            const ExpPoly g = to_poly(args[1], J.A.nvars());
            return twisted ? anchor_apply(J, X, g) : anchor_apply(J.A, X, g);
        }
        if (is<Form>(args[1])) {
            return twisted ? lie_derivative(J, X, std::get<Form>(args[1]))
                           : lie_derivative(J.A, X, std::get<Form>(args[1]));
        }
        const MultiVector D = need(args[1], VT{}, "a form or multivector");
        return twisted ? lie_derivative(J, X, D) : lie_derivative(J.A, X, D);
    }
    if (f == "iota") {
        count(2);
        if (is<Form>(args[0])) {
            return contract(std::get<Form>(args[0]), need(args[1], VT{}, "a multivector"));
        }
        return contract(need(args[0], VT{}, "a section or cosection"), need(args[1], FT{}, "a form"));
    }
    if (f == "pair") {
        count(2);
        if (is<Form>(args[0])) {
            return pair(std::get<Form>(args[0]), need(args[1], VT{}, "a multivector"));
        }
        return pair(need(args[0], VT{}, "a form or multivector"), need(args[1], FT{}, "a form"));
    }
    if (f == "wedge") {
        count(2);
        return power_or_wedge(e, args[0], args[1]);
    }
    if (f == "sharp") {
        count(1);
        return sharp_map(need(args[0], VT{}, "a 2-section"));
    }
    if (f == "flat") {
        count(1);
        return flat_map(need(args[0], FT{}, "a 2-cosection"));
    }
    if (f == "inverse") {
        count(1);
        return inverse(need(args[0], MT{}, "a map"));
    }
    if (f == "compose") {
        count(2);
        return compose(need(args[0], MT{}, "a map"), need(args[1], MT{}, "a map"));
    }
    if (f == "transpose") {
        count(1);
        return transpose(need(args[0], MT{}, "a map"));
    }
    if (f == "det") {
        count(1);
        return determinant(need(args[0], MT{}, "a map"));
    }
    if (f == "bivector") {
        count(1);
        return bivector_of(need(args[0], MT{}, "a map"));
    }
    if (f == "twoform") {
        count(1);
        return two_form_of(need(args[0], MT{}, "a map"));
    }
    if (f == "omega_from_pi") {
        count(1);
        return omega_from_pi(need(args[0], VT{}, "a 2-section"));
    }
    if (f == "pi_from_omega") {
        count(1);
        return pi_from_omega(need(args[0], FT{}, "a 2-cosection"));
    }
    if (f == "omega_n") {
        count(2);
        return omega_n(need(args[0], FT{}, "a 2-cosection"), need(args[1], MT{}, "a map"));
    }
    if (f == "jacobi_bracket") {
        count(3);
        return jacobi_bracket(J, need(args[0], VT{}, "a 2-section"), need(args[1], FT{}, "a cosection"),
                              need(args[2], FT{}, "a cosection"));
    }
    if (f == "torsion") {
        count(3);
        return torsion_tensor(J.A, need(args[0], MT{}, "a map"), need(args[1], VT{}, "a section"),
                              need(args[2], VT{}, "a section"));
    }
    if (f == "fst" || f == "snd") {
        count(1);
        if (is<Form>(args[0])) {
            auto parts = split(J.A, std::get<Form>(args[0]));
            return f == "fst" ? parts.first : parts.second;
        }
        auto parts = split(J.A, need(args[0], VT{}, "a form or multivector"));
        return f == "fst" ? parts.first : parts.second;
    }
    if (f == "lift") {
        count(1);
        if (!is<LiftedInstance>(owner)) {
            fail(e, "lift takes a lift as first argument");
        }
        const auto& L = std::get<LiftedInstance>(owner);
        if (is<Form>(args[0])) {
            return L.lift(std::get<Form>(args[0]));
        }
        return L.lift(need(args[0], VT{}, "a form or multivector"));
    }
    fail(e, "unknown function '" + f + "'");
}

void Interpreter::declare(const Statement& s) {
    if (names_.contains(s.name)) {
        throw ScriptError(s.loc, "'" + s.name + "' is already declared");
    }
    if (s.kind == Statement::Kind::patch) {
        names_.emplace(s.name, make_patch(s.coords));
        return;
    }
    Value v = eval(*s.value, current());
    const std::string& kw = s.keyword;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) {
            throw ScriptError(s.value->loc, kw + " '" + s.name + "' must be " + what + ", got a " +
                                                value_type_name(v));
        }
    };
    if (kw == "algebroid") {
        expect(is<JacobiAlgebroidData>(v), "an algebroid");
    } else if (kw == "bialgebroid") {
        expect(is<JacobiBialgebroidData>(v), "a bialgebroid");
    } else if (kw == "lift") {
        expect(is<LiftedInstance>(v), "a lift");
    } else if (kw == "form") {
        expect(is<Form>(v), "a form");
    } else if (kw == "multivector" || kw == "section") {
        expect(is<MultiVector>(v), "a multivector");
    } else if (kw == "scalar") {
        expect(is_scalar(v), "a scalar");
        if (is<Rational>(v) && current() != nullptr) {
            v = to_poly(v, current()->A.nvars());
        }
    } else if (kw == "map") {
        expect(is<TensorMap>(v), "a map");
    }
    names_.emplace(s.name, std::move(v));
    if (kw == "algebroid") {
        current_ = s.name;
    }
}

CheckResult Interpreter::run_check(const Statement& s) {
    const std::string& kind = s.keyword;
    std::vector<Value> args;
    const JacobiAlgebroidData* ctx = current();
    Value owner;
    for (std::size_t i = 0; i < s.args.size(); ++i) {
        Value v = eval(*s.args[i], ctx);
        if (i == 0 && context_of(v) != nullptr) {
            owner = std::move(v);
            ctx = context_of(owner);
            args.push_back(owner);
        } else {
            args.push_back(std::move(v));
        }
    }
    std::map<std::string, const Expr*> options;
    for (const auto& o : s.options) {
        options[o.key] = o.value.get();
    }
    auto count = [&](std::size_t n) {
        if (args.size() != n) {
            throw ScriptError(s.loc, "check " + kind + " takes " + std::to_string(n) + " argument" +
                                         (n == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
        }
    };
    auto allow = [&](std::initializer_list<const char*> keys) {
        for (const auto& [k, v] : options) {
            bool ok = false;
            for (const char* a : keys) {
                ok = ok || k == a;
            }
            if (!ok) {
                throw ScriptError(v->loc, "unknown option '" + k + "' for check " + kind);
            }
        }
    };
    auto get = [&](std::size_t i, auto tag, const char* what) -> decltype(auto) {
        using T = typename decltype(tag)::type;
        if (!is<T>(args[i])) {
            throw ScriptError(s.args[i]->loc, "check " + kind + ": argument " + std::to_string(i + 1) +
                                                  " must be " + what + ", got a " + value_type_name(args[i]));
        }
        return std::get<T>(args[i]);
    };
    struct JT {
        using type = JacobiAlgebroidData;
    };
    struct BT {
        using type = JacobiBialgebroidData;
    };
    struct LT {
        using type = LiftedInstance;
    };
    struct VT {
        using type = MultiVector;
    };
    struct FT {
        using type = Form;
    };
    struct MT {
        using type = TensorMap;
    };
    struct GT {
        using type = GraphRelation;
    };
    auto name_option = [&](const char* key, const std::string& fallback) -> std::string {
        auto it = options.find(key);
        if (it == options.end()) {
            return fallback;
        }
        if (it->second->kind != Expr::Kind::name) {
            throw ScriptError(it->second->loc, std::string("option ") + key + " takes a name");
        }
        return it->second->text;
    };
    auto strategy_option = [&]() {
        const std::string v = name_option("strategy", "automatic");
        if (v == "automatic" || v == "auto") {
            return PairStrategy::automatic;
        }
        if (v == "compatibility") {
            return PairStrategy::compatibility;
        }
        if (v == "invertible") {
            return PairStrategy::invertible;
        }
        if (v == "witness") {
            return PairStrategy::witness;
        }
        throw ScriptError(options.at("strategy")->loc,
                          "strategy is one of automatic, compatibility, invertible, witness");
    };
    auto bool_option = [&](const char* key) {
        const std::string v = name_option(key, "false");
        if (v != "true" && v != "false") {
            throw ScriptError(options.at(key)->loc, std::string(key) + " is true or false");
        }
        return v == "true";
    };

    if (kind == "algebroid") {
        count(1);
        allow({});
        return validate_jacobi_algebroid(get(0, JT{}, "an algebroid"));
    }
    if (kind == "jacobi") {
        count(2);
        allow({});
        return jacobi_check(get(0, JT{}, "an algebroid"), get(1, VT{}, "a 2-section"));
    }
    if (kind == "compat") {
        count(3);
        allow({});
        return compat_check(get(0, JT{}, "an algebroid"), get(1, VT{}, "a 2-section"), get(2, VT{}, "a 2-section"));
    }
    if (kind == "presymplectic") {
        count(2);
        allow({});
        return presymplectic_check(get(0, JT{}, "an algebroid"), get(1, FT{}, "a 2-cosection"));
    }
    if (kind == "nondegenerate") {
        allow({});
        if (args.size() == 2) {
            const auto& J = get(0, JT{}, "an algebroid");
            return nondegenerate_check(get(1, MT{}, "a map"), J.A);
        }
        count(1);
        if (ctx == nullptr) {
            throw ScriptError(s.loc, "check nondegenerate needs a current algebroid");
        }
        return nondegenerate_check(get(0, MT{}, "a map"), ctx->A);
    }
    if (kind == "mc" || kind == "closure") {
        count(2);
        allow({});
        const auto& B = get(0, BT{}, "a bialgebroid");
        if (is<Form>(args[1])) {
            const Form& w = std::get<Form>(args[1]);
            return kind == "mc" ? maurer_cartan_check(B, w) : graph_closure_check(B, w);
        }
        const auto& p = get(1, VT{}, "a 2-section or 2-cosection");
        return kind == "mc" ? maurer_cartan_check(B, p) : graph_closure_check(B, p);
    }
    if (kind == "bialgebroid") {
        count(1);
        allow({});
        return bialgebroid_compat_check(get(0, BT{}, "a bialgebroid"));
    }
    if (kind == "torsion") {
        count(2);
        allow({});
        return torsion_tensor_check(get(0, JT{}, "an algebroid").A, get(1, MT{}, "a map"));
    }
    if (kind == "dirac_pair") {
        count(3);
        allow({"strategy", "triples"});
        std::vector<CosectionTriple> triples;
        if (auto it = options.find("triples"); it != options.end()) {
            const Value v = eval(*it->second, ctx);
            if (!is<List>(v)) {
                throw ScriptError(it->second->loc, "triples is a list of (xi, xi', xi'')");
            }
            for (const auto& item : std::get<List>(v)->items) {
                if (!is<List>(item) || std::get<List>(item)->items.size() != 3) {
                    throw ScriptError(it->second->loc, "triples is a list of (xi, xi', xi'')");
                }
                const auto& t = std::get<List>(item)->items;
                for (const auto& x : t) {
                    if (!is<Form>(x)) {
                        throw ScriptError(it->second->loc, "triple entries must be cosections");
                    }
                }
                triples.push_back(CosectionTriple{std::get<Form>(t[0]), std::get<Form>(t[1]), std::get<Form>(t[2])});
            }
        }
        return dirac_pair_check(get(0, BT{}, "a bialgebroid"), get(1, GT{}, "a graph"), get(2, GT{}, "a graph"),
                                strategy_option(), triples);
    }
    if (kind == "jomega") {
        count(3);
        allow({});
        return jomega_check(get(0, JT{}, "an algebroid"), get(1, VT{}, "a 2-section"), get(2, FT{}, "a 2-cosection"));
    }
    if (kind == "omegan") {
        count(3);
        allow({"weak"});
        return omegan_check(get(0, JT{}, "an algebroid"), get(1, FT{}, "a 2-cosection"), get(2, MT{}, "a map"),
                            bool_option("weak"));
    }
    if (kind == "jacobi_pair" || kind == "hamiltonian" || kind == "image_condition") {
        count(3);
        allow(kind == "jacobi_pair" ? std::initializer_list<const char*>{"strategy"}
                                    : std::initializer_list<const char*>{});
        const auto& J = get(0, JT{}, "an algebroid");
        const auto& p1 = get(1, VT{}, "a 2-section");
        const auto& p2 = get(2, VT{}, "a 2-section");
        if (kind == "jacobi_pair") {
            return jacobi_pair_check(J, p1, p2, strategy_option());
        }
        if (kind == "hamiltonian") {
            return hamiltonian_pair_check(J, p1, p2);
        }
        return image_condition_check(p1, p2, J.A);
    }
    if (kind == "presymplectic_pair" || kind == "symplectic_pair") {
        count(3);
        allow({"strategy"});
        const auto& J = get(0, JT{}, "an algebroid");
        const auto& w1 = get(1, FT{}, "a 2-cosection");
        const auto& w2 = get(2, FT{}, "a 2-cosection");
        return kind == "presymplectic_pair" ? presymplectic_pair_check(J, w1, w2, strategy_option())
                                            : symplectic_pair_check(J, w1, w2, strategy_option());
    }
    if (kind == "lift_scaling") {
        count(3);
        allow({});
        return verify_bracket_scaling(get(0, LT{}, "a lift"), get(1, VT{}, "a 2-section"),
                                      get(2, FT{}, "a 2-cosection"));
    }
    if (kind == "lift_differentials") {
        count(3);
        allow({});
        const auto& J = get(0, JT{}, "an algebroid");
        if (!is_scalar(args[1])) {
            throw ScriptError(s.args[1]->loc, "check lift_differentials: argument 2 must be a scalar");
        }
        return verify_hat_bar_differentials(J, to_poly(args[1], J.A.nvars()), get(2, FT{}, "a 1-cosection"));
    }
    if (kind == "main1") {
        count(3);
        allow({});
        return theorem_main1_crosscheck(get(0, BT{}, "a bialgebroid"), get(1, GT{}, "a graph"),
                                        get(2, GT{}, "a graph"));
    }
    if (kind == "zero" || kind == "nonzero") {
        count(1);
        allow({});
        const bool zero = value_is_zero(args[0]);
        if (zero == (kind == "zero")) {
            return CheckResult::pass("direct");
        }
        return CheckResult::fail("direct", Witness{kind == "zero" ? "value = 0" : "value != 0",
                                                   {print(*s.args[0])}, text_of(args[0], ctx)});
    }
    if (kind == "equal") {
        count(2);
        allow({});
        Value diff = add(*s.args[1], args[0], negate(*s.args[1], args[1]));
        if (value_is_zero(diff)) {
            return CheckResult::pass("direct");
        }
        return CheckResult::fail("direct", Witness{"lhs = rhs", {text_of(args[0], ctx), text_of(args[1], ctx)},
                                                   text_of(diff, ctx)});
    }
    if (kind == "properties") {
        count(1);
        allow({"samples", "degree"});
        const auto& J = get(0, JT{}, "an algebroid");
        long samples = 10;
        if (auto it = options.find("samples"); it != options.end()) {
            samples = to_integer(*it->second, eval(*it->second, ctx));
        }
        long degree = 1;
        if (auto it = options.find("degree"); it != options.end()) {
            degree = to_integer(*it->second, eval(*it->second, ctx));
        }
        if (samples < 1 || degree < 0) {
            throw ScriptError(s.loc, "samples must be positive and degree non-negative");
        }
        RandomSource rs(options_.seed * 1000003u + static_cast<std::uint64_t>(s.loc.line));
        const AlgebroidPatch& A = J.A;
        const auto pd = static_cast<unsigned>(degree);
        const bool lifted = A.patch().lifted;
        for (long k = 0; k < samples; ++k) {
            const auto deg = static_cast<std::size_t>(rs.integer(0, static_cast<int>(std::min<std::size_t>(A.rank(), 3))));
            const Form w = rs.form(A, deg, pd, lifted);
            if (const Form dd = differential(A, differential(A, w)); !dd.is_zero()) {
                return property_failure("d(d(w)) = 0", {to_text(w, A)}, to_text(dd, A));
            }
            if (const Form dd = differential(J, differential(J, w)); !dd.is_zero()) {
                return property_failure("d_phi(d_phi(w)) = 0", {to_text(w, A)}, to_text(dd, A));
            }
            const auto p = static_cast<std::size_t>(rs.integer(0, 2));
            const auto q = static_cast<std::size_t>(rs.integer(1, 2));
            const MultiVector P = rs.multivector(A, p, pd, lifted);
            const MultiVector Q = rs.multivector(A, q, pd, lifted);
            const MultiVector R = rs.multivector(A, 1, pd, lifted);
            const MultiVector lhs = schouten(A, P, Q);
            const long sign = ((static_cast<long>(p) - 1) * (static_cast<long>(q) - 1)) % 2 == 0 ? -1 : 1;
            if (const MultiVector res = lhs - Rational(sign) * schouten(A, Q, P); !res.is_zero()) {
                return property_failure("schouten(P, Q) = -(-1)^((p-1)(q-1)) schouten(Q, P)",
                                        {to_text(P, A), to_text(Q, A)}, to_text(res, A));
            }
            const long lsign = ((static_cast<long>(p) + 1) * static_cast<long>(q)) % 2 == 0 ? 1 : -1;
            const MultiVector leibniz = schouten(A, P, wedge(Q, R)) - wedge(schouten(A, P, Q), R) -
                                        Rational(lsign) * wedge(Q, schouten(A, P, R));
            if (!leibniz.is_zero()) {
                return property_failure("schouten(P, Q^R) = schouten(P, Q)^R + (-1)^((p+1)q) Q^schouten(P, R)",
                                        {to_text(P, A), to_text(Q, A), to_text(R, A)}, to_text(leibniz, A));
            }
            if (A.rank() >= 2) {
                const MultiVector pi = rs.multivector(A, 2, pd, lifted);
                const Form xi = rs.form(A, 1, pd, lifted);
                const Form eta = rs.form(A, 1, pd, lifted);
                if (const MultiVector res = bracket_identity_residue(J, pi, xi, eta); !res.is_zero()) {
                    return property_failure(
                        "1/2 sbracket_phi(pi, pi)(xi, eta, .) = [pi# xi, pi# eta] - pi# jacobi_bracket(pi, xi, eta)",
                        {to_text(pi, A), to_text(xi, A), to_text(eta, A)}, to_text(res, A));
                }
            }
        }
        return CheckResult::pass("seeded random instances", std::to_string(samples) + " samples");
    }
    throw ScriptError(s.loc, "unknown check '" + kind + "'");
}

void Interpreter::execute(const Statement& s, Report& report) {
    const std::string name = s.kind == Statement::Kind::check ? print(s).substr(6) : print(s);
    try {
        switch (s.kind) {
            case Statement::Kind::patch:
            case Statement::Kind::declare:
                declare(s);
                break;
            case Statement::Kind::use: {
                auto it = names_.find(s.name);
                if (it == names_.end() || !is<JacobiAlgebroidData>(it->second)) {
                    throw ScriptError(s.loc, "'" + s.name + "' is not an algebroid");
                }
                current_ = s.name;
                break;
            }
            case Statement::Kind::check:
                report.checks.push_back(record_from(name, s.loc.line, run_check(s)));
                break;
        }
    } catch (const ScriptError& err) {
        CheckRecord rec;
        rec.name = name;
        rec.line = s.loc.line;
        rec.status = RecordStatus::error;
        rec.note = "column " + std::to_string(err.location().column) + ": " + err.message();
        report.checks.push_back(std::move(rec));
    } catch (const std::exception& err) {
        CheckRecord rec;
        rec.name = name;
        rec.line = s.loc.line;
        rec.status = RecordStatus::error;
        rec.note = err.what();
        report.checks.push_back(std::move(rec));
    }
}

Report Interpreter::run(const Script& script) {
    Report report;
    for (const auto& s : script.statements) {
        execute(s, report);
    }
    return report;
}

Report run_script(const std::string& text, RunOptions options) {
    Script script;
    try {
        script = parse(text);
    } catch (const ScriptError& err) {
        Report r;
        r.parse_error = err.what();
        return r;
    }
    Interpreter interp(options);
    return interp.run(script);
}

}  // namespace jacobi::dsl
