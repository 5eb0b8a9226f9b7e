#include "jacobi/coeff.hpp"

#include <numeric>
#include <sstream>

namespace jacobi {

namespace {

std::uint64_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

void add_into(Poly& dst, const Poly& src, bool negate) {
    for (const auto& [mono, c] : src) {
        auto [it, inserted] = dst.try_emplace(mono, negate ? Rational(-c) : c);
        if (!inserted) {
            if (negate) {
                it->second -= c;
            } else {
                it->second += c;
            }
            if (sgn(it->second) == 0) {
                dst.erase(it);
            }
        }
    }
}

Poly multiply(const Poly& a, const Poly& b) {
    Poly out;
    Exponents sum;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            sum.resize(ma.size());
            for (std::size_t i = 0; i < ma.size(); ++i) {
                sum[i] = ma[i] + mb[i];
            }
            Rational prod = ca * cb;
            auto [it, inserted] = out.try_emplace(sum, prod);
            if (!inserted) {
                it->second += prod;
            }
        }
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

Rational rational_pow(const Rational& base, std::int64_t e) {
    Rational r = 1;
    Rational b = e < 0 ? Rational(1 / base) : base;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    while (n != 0) {
        if (n & 1u) {
            r *= b;
        }
        b *= b;
        n >>= 1u;
    }
    return r;
}

std::string rational_text(const Rational& c) {
    return c.get_str();
}

}  // namespace

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    const auto da = total_degree(a);
    const auto db = total_degree(b);
    if (da != db) {
        return da < db;
    }
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return false;
}

ExpPoly ExpPoly::constant(std::size_t nvars, const Rational& c) {
    return term(nvars, 0, Exponents(nvars + 1, 0), c);
}

ExpPoly ExpPoly::variable(std::size_t nvars, std::size_t var) {
    if (var > nvars) {
        throw UnknownVariable("variable index " + std::to_string(var) + " out of range");
    }
    Exponents e(nvars + 1, 0);
    e[var] = 1;
    return term(nvars, 0, std::move(e), 1);
}

ExpPoly ExpPoly::exp_t(std::size_t nvars, int weight) {
    return term(nvars, weight, Exponents(nvars + 1, 0), 1);
}

ExpPoly ExpPoly::term(std::size_t nvars, int weight, Exponents exps, const Rational& c) {
    if (exps.size() != nvars + 1) {
        throw ShapeMismatch("exponent vector has wrong length");
    }
    ExpPoly out(nvars);
    if (sgn(c) != 0) {
        Rational v = c;
        v.canonicalize();
        out.terms_[weight].emplace(std::move(exps), std::move(v));
    }
    return out;
}

void ExpPoly::check_same(const ExpPoly& o) const {
    if (nvars_ != o.nvars_) {
        throw ShapeMismatch("coefficient variable sets differ (" + std::to_string(nvars_) + " vs " +
                            std::to_string(o.nvars_) + " coordinates)");
    }
}

void ExpPoly::check_var(std::size_t var) const {
    if (var > nvars_) {
        throw UnknownVariable("variable index " + std::to_string(var) + " out of range");
    }
}

std::optional<Rational> ExpPoly::as_constant() const {
    if (terms_.empty()) {
        return Rational(0);
    }
    if (terms_.size() != 1 || terms_.begin()->first != 0) {
        return std::nullopt;
    }
    const Poly& p = terms_.begin()->second;
    if (p.size() != 1 || total_degree(p.begin()->first) != 0) {
        return std::nullopt;
    }
    return p.begin()->second;
}

bool ExpPoly::is_unit() const {
    if (terms_.size() != 1) {
        return false;
    }
    const Poly& p = terms_.begin()->second;
    return p.size() == 1 && total_degree(p.begin()->first) == 0;
}

ExpPoly ExpPoly::unit_inverse() const {
    if (!is_unit()) {
        throw NotInvertible("coefficient is not a unit of the ring");
    }
    const auto& [weight, p] = *terms_.begin();
    return term(nvars_, -weight, Exponents(nvars_ + 1, 0), Rational(1 / p.begin()->second));
}

ExpPoly ExpPoly::derivative(std::size_t var) const {
    check_var(var);
    ExpPoly out(nvars_);
    const bool is_t = var == nvars_;
    for (const auto& [weight, p] : terms_) {
        Poly dp;
        for (const auto& [mono, c] : p) {
            if (mono[var] == 0) {
                continue;
            }
            Exponents e = mono;
            e[var] -= 1;
            dp.emplace(std::move(e), c * mono[var]);
        }
        if (is_t && weight != 0) {
            Poly scaled;
            for (const auto& [mono, c] : p) {
                scaled.emplace(mono, c * weight);
            }
            add_into(dp, scaled, false);
        }
        if (!dp.empty()) {
            out.terms_.emplace(weight, std::move(dp));
        }
    }
    return out;
}

bool ExpPoly::depends_on(std::size_t var) const {
    check_var(var);
    if (var == nvars_) {
        for (const auto& [weight, p] : terms_) {
            if (weight != 0) {
                return true;
            }
        }
    }
    for (const auto& [weight, p] : terms_) {
        for (const auto& [mono, c] : p) {
            if (mono[var] != 0) {
                return true;
            }
        }
    }
    return false;
}

Rational ExpPoly::evaluate(std::span<const Rational> point, const Rational& exp_t) const {
    if (point.size() != nvars_ + 1) {
        throw ShapeMismatch("evaluation point must assign every coordinate and t");
    }
    if (sgn(exp_t) == 0) {
        throw AlgebraError("stand-in value for e^t must be nonzero");
    }
    Rational total = 0;
    for (const auto& [weight, p] : terms_) {
        Rational sum = 0;
        for (const auto& [mono, c] : p) {
            Rational v = c;
            for (std::size_t i = 0; i < mono.size(); ++i) {
                if (mono[i] != 0) {
                    v *= rational_pow(point[i], mono[i]);
                }
            }
            sum += v;
        }
        total += sum * rational_pow(exp_t, weight);
    }
    return total;
}

ExpPoly ExpPoly::pow(unsigned e) const {
    ExpPoly r = one(nvars_);
    ExpPoly b = *this;
    while (e != 0) {
        if (e & 1u) {
            r = r * b;
        }
        e >>= 1u;
        if (e != 0) {
            b = b * b;
        }
    }
    return r;
}

ExpPoly ExpPoly::operator-() const {
    ExpPoly out = *this;
    for (auto& [weight, p] : out.terms_) {
        for (auto& [mono, c] : p) {
            c = -c;
        }
    }
    return out;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    check_same(o);
    for (const auto& [weight, p] : o.terms_) {
        Poly& dst = terms_[weight];
        add_into(dst, p, false);
        if (dst.empty()) {
            terms_.erase(weight);
        }
    }
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
    check_same(o);
    for (const auto& [weight, p] : o.terms_) {
        Poly& dst = terms_[weight];
        add_into(dst, p, true);
        if (dst.empty()) {
            terms_.erase(weight);
        }
    }
    return *this;
}

ExpPoly& ExpPoly::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [weight, p] : terms_) {
        for (auto& [mono, coeff] : p) {
            coeff *= c;
        }
    }
    return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    a.check_same(b);
    ExpPoly out(a.nvars_);
    for (const auto& [wa, pa] : a.terms_) {
        for (const auto& [wb, pb] : b.terms_) {
            Poly prod = multiply(pa, pb);
            if (prod.empty()) {
                continue;
            }
            Poly& dst = out.terms_[wa + wb];
            add_into(dst, prod, false);
            if (dst.empty()) {
                out.terms_.erase(wa + wb);
            }
        }
    }
    return out;
}

namespace {

std::string monomial_text(const Exponents& e, std::span<const std::string> names) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) {
            continue;
        }
        if (!s.empty()) {
            s += '*';
        }
        s += names[i];
        if (e[i] > 1) {
            s += '^' + std::to_string(e[i]);
        }
    }
    return s;
}

std::string poly_text(const Poly& p, std::span<const std::string> names) {
    std::string s;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const auto& [mono, c] = *it;
        const std::string m = monomial_text(mono, names);
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) {
                s += '-';
            }
        } else {
            s += sgn(c) < 0 ? " - " : " + ";
        }
        first = false;
        if (m.empty()) {
            s += rational_text(mag);
        } else if (mag == 1) {
            s += m;
        } else {
            s += rational_text(mag) + '*' + m;
        }
    }
    return s;
}

}  // namespace

std::string ExpPoly::to_string(std::span<const std::string> names) const {
    if (names.size() != nvars_ + 1) {
        throw ShapeMismatch("name list must cover every coordinate and t");
    }
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto& [weight, p] : terms_) {
        if (!first) {
            s += " + ";
        }
        first = false;
        if (weight == 0) {
            s += poly_text(p, names);
            continue;
        }
        std::string e = "exp(" + std::to_string(weight) + "*" + names[nvars_] + ")";
        if (p.size() == 1 && total_degree(p.begin()->first) == 0 && p.begin()->second == 1) {
            s += e;
        } else {
            s += e + "*(" + poly_text(p, names) + ")";
        }
    }
    return s;
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
    std::vector<std::string> names;
    names.reserve(nvars + 1);
    for (std::size_t i = 0; i < nvars; ++i) {
        names.push_back("x" + std::to_string(i + 1));
    }
    names.emplace_back("t");
    return names;
}

}  // namespace jacobi
