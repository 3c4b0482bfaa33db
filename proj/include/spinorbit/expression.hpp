#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "spinorbit/context.hpp"

namespace spinorbit {

using DenMap = std::map<int, int>;  // registered base index -> positive exponent

namespace detail {
inline Poly den_to_poly(const Context &ctx, const DenMap &den) {
    Poly p = poly_scalar(GaussianRational::one());
    for (const auto &[idx, exp] : den)
        for (int k = 0; k < exp; ++k)
            p = poly_mul(p, ctx.den_bases[idx]);
    return p;
}
}  // namespace detail

// Element of the restricted rational-function ring: a multivariate polynomial
// over GaussianRational divided by a power product of registered bases.
// Always held in canonical form: zero iff the numerator is empty, and no
// registered base divides the numerator while it still appears below.
class Expression {
  public:
    Expression() = default;

    static Expression make(ContextPtr ctx, Poly num, DenMap den = {}) {
        Expression e;
        e.ctx_ = std::move(ctx);
        e.num_ = std::move(num);
        e.den_ = std::move(den);
        e.normalize();
        return e;
    }
    static Expression zero(ContextPtr ctx) { return make(std::move(ctx), Poly{}); }
    static Expression one(ContextPtr ctx) {
        return make(std::move(ctx), poly_scalar(GaussianRational::one()));
    }
    static Expression scalar(ContextPtr ctx, GaussianRational c) {
        return make(std::move(ctx), poly_scalar(std::move(c)));
    }
    static Expression integer(ContextPtr ctx, long n) {
        return scalar(std::move(ctx), GaussianRational::of(n));
    }
    static Expression rational(ContextPtr ctx, long num, long den) {
        return scalar(std::move(ctx), GaussianRational::of(num, den));
    }
    static Expression imaginary_unit(ContextPtr ctx) {
        return scalar(std::move(ctx), GaussianRational::i());
    }
    static Expression symbol(ContextPtr ctx, const Symbol &s) {
        return make(std::move(ctx), poly_symbol(s));
    }
    static Expression coordinate(ContextPtr ctx, int axis) {
        if (axis >= coord_count(ctx->mode))
            throw Error("coordinate index outside the active mode");
        return symbol(std::move(ctx), Symbol::coordinate(axis));
    }
    static Expression parameter(ContextPtr ctx, const std::string &name) {
        if (!ctx->has_param(name))
            throw Error("undeclared constant: " + name);
        return symbol(std::move(ctx), Symbol::parameter(name));
    }
    static Expression jet(ContextPtr ctx, const std::string &name) {
        Symbol s = ctx->jet_symbol(name);
        return symbol(std::move(ctx), s);
    }
    // x^2+y^2 (planar) or x^2+y^2+z^2 (spatial)
    static Expression radius_squared(ContextPtr ctx) {
        Poly u = radius_squared_poly(coord_count(ctx->mode));
        return make(std::move(ctx), std::move(u));
    }

    const ContextPtr &ctx() const { return ctx_; }
    const Poly &num() const { return num_; }
    const DenMap &den() const { return den_; }

    bool is_zero() const { return num_.empty(); }
    bool is_scalar() const {
        return den_.empty() && (num_.empty() || (num_.size() == 1 && num_.begin()->first.is_unit()));
    }
    std::optional<GaussianRational> as_scalar() const {
        if (!is_scalar())
            return std::nullopt;
        if (num_.empty())
            return GaussianRational::zero();
        return num_.begin()->second;
    }

    friend Expression operator+(const Expression &a, const Expression &b) {
        a.check_ctx(b);
        if (a.den_ == b.den_)
            return make(a.ctx_, poly_add(a.num_, b.num_), a.den_);
        DenMap lcm = a.den_;
        for (const auto &[i, e] : b.den_) {
            auto it = lcm.find(i);
            if (it == lcm.end())
                lcm[i] = e;
            else
                it->second = std::max(it->second, e);
        }
        Poly na = poly_mul(a.num_, detail::den_to_poly(*a.ctx_, den_diff(lcm, a.den_)));
        Poly nb = poly_mul(b.num_, detail::den_to_poly(*a.ctx_, den_diff(lcm, b.den_)));
        return make(a.ctx_, poly_add(na, nb), lcm);
    }
    friend Expression operator-(const Expression &a, const Expression &b) { return a + (-b); }
    Expression operator-() const { return make(ctx_, poly_neg(num_), den_); }
    friend Expression operator*(const Expression &a, const Expression &b) {
        a.check_ctx(b);
        DenMap den = a.den_;
        for (const auto &[i, e] : b.den_)
            den[i] += e;
        return make(a.ctx_, poly_mul(a.num_, b.num_), std::move(den));
    }
    Expression &operator+=(const Expression &b) { return *this = *this + b; }
    Expression &operator-=(const Expression &b) { return *this = *this - b; }
    Expression &operator*=(const Expression &b) { return *this = *this * b; }

    friend bool operator==(const Expression &a, const Expression &b) {
        a.check_ctx(b);
        if (a.num_ == b.num_ && a.den_ == b.den_)
            return true;
        return (a - b).is_zero();
    }
    friend bool operator!=(const Expression &a, const Expression &b) { return !(a == b); }

    void check_ctx(const Expression &o) const {
        if (ctx_ != o.ctx_)
            throw Error("expressions belong to different symbol contexts");
    }

  private:
    ContextPtr ctx_;
    Poly num_;
    DenMap den_;

    static DenMap den_diff(const DenMap &a, const DenMap &b) {
        DenMap d;
        for (const auto &[i, e] : a) {
            auto it = b.find(i);
            int r = e - (it == b.end() ? 0 : it->second);
            if (r != 0)
                d[i] = r;
        }
        return d;
    }

    void normalize() {
        if (num_.empty()) {
            den_.clear();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            if (it->second <= 0)
                throw EngineError("denominator exponent must be positive");
            while (it->second > 0) {
                auto q = poly_exact_divide(num_, ctx_->den_bases[it->first]);
                if (!q)
                    break;
                num_ = std::move(*q);
                --(it->second);
            }
            it = (it->second == 0) ? den_.erase(it) : std::next(it);
        }
    }
};

inline Expression operator*(const GaussianRational &c, const Expression &e) {
    return Expression::make(e.ctx(), poly_scale(e.num(), c), e.den());
}
inline Expression operator*(long n, const Expression &e) { return GaussianRational::of(n) * e; }

// Exact division. The divisor must be a scalar multiple of a power product of
// registered bases, or divide the dividend exactly as a polynomial.
inline Expression div(const Expression &a, const Expression &b) {
    a.check_ctx(b);
    const Context &ctx = *a.ctx();
    if (b.is_zero())
        throw DivisionError("division by zero");
    if (auto s = b.as_scalar())
        return Expression::make(a.ctx(), poly_scale(a.num(), GaussianRational::one() / *s),
                                a.den());
    // reciprocal of scalar * prod(base^g)
    Poly rem = b.num();
    DenMap g;
    for (size_t i = 0; i < ctx.den_bases.size(); ++i) {
        while (true) {
            auto q = poly_exact_divide(rem, ctx.den_bases[i]);
            if (!q)
                break;
            rem = std::move(*q);
            g[static_cast<int>(i)] += 1;
        }
    }
    if (rem.size() == 1 && rem.begin()->first.is_unit()) {
        GaussianRational c = rem.begin()->second;
        Expression recip = Expression::make(
            a.ctx(), poly_scale(detail::den_to_poly(ctx, b.den()), GaussianRational::one() / c),
            std::move(g));
        return a * recip;
    }
    // last resort: exact polynomial division
    if (auto q = poly_exact_divide(poly_mul(a.num(), detail::den_to_poly(ctx, b.den())), b.num()))
        return Expression::make(a.ctx(), std::move(*q), a.den());
    throw DivisionError("divisor is neither a registered-base product nor an exact factor");
}

inline Expression pow(const Expression &e, int k) {
    if (k < 0)
        return div(Expression::one(e.ctx()), pow(e, -k));
    Expression acc = Expression::one(e.ctx());
    Expression base = e;
    unsigned n = static_cast<unsigned>(k);
    while (n) {
        if (n & 1)
            acc *= base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

inline Expression differentiate(const Expression &e, int axis) {
    if (axis >= coord_count(e.ctx()->mode))
        throw Error("differentiation axis outside the active mode");
    const Context &ctx = *e.ctx();
    Expression result = Expression::make(e.ctx(), poly_derivative(e.num(), axis), e.den());
    for (const auto &[i, exp] : e.den()) {
        Poly db = poly_derivative(ctx.den_bases[i], axis);
        if (poly_is_zero(db))
            continue;
        DenMap d2 = e.den();
        d2[i] += 1;
        result += Expression::make(
            e.ctx(), poly_scale(poly_mul(e.num(), db), GaussianRational::of(-exp)), std::move(d2));
    }
    return result;
}

inline Expression conjugate(const Expression &e) {
    return Expression::make(e.ctx(), poly_conjugate(e.num()), e.den());
}

inline std::pair<Expression, Expression> re_im(const Expression &e) {
    auto [re, im] = poly_re_im(e.num());
    return {Expression::make(e.ctx(), std::move(re), e.den()),
            Expression::make(e.ctx(), std::move(im), e.den())};
}

inline std::set<int> coordinate_support(const Expression &e) {
    std::set<int> s;
    for (const auto &[m, c] : e.num())
        for (const auto &[sym, exp] : m.factors)
            if (sym.is_coordinate())
                s.insert(sym.axis());
    for (const auto &[i, exp] : e.den())
        for (const auto &[m, c] : e.ctx()->den_bases[i])
            for (const auto &[sym, k] : m.factors)
                if (sym.is_coordinate())
                    s.insert(sym.axis());
    return s;
}

// Formal d/du for a function of u = x^2+y^2(+z^2) alone: computed through
// d/dx and exact division by 2x, then cross-checked on every other axis.
inline Expression diff_radial(const Expression &e) {
    auto ctx = e.ctx();
    Expression g = div(differentiate(e, 0),
                       2 * Expression::coordinate(ctx, 0));
    for (int a = 1; a < coord_count(ctx->mode); ++a) {
        if (differentiate(e, a) != 2 * Expression::coordinate(ctx, a) * g)
            throw SubstitutionError("expression is not a function of the squared radius");
    }
    return g;
}

// ---- substitution -----------------------------------------------------

struct Bindings {
    std::map<std::string, Expression> constants;  // parameter name -> value
    std::map<std::string, Expression> functions;  // jet base name -> value

    Bindings &bind_constant(const std::string &n, Expression v) {
        constants.emplace(n, std::move(v));
        return *this;
    }
    Bindings &bind_function(const std::string &n, Expression v) {
        functions.emplace(n, std::move(v));
        return *this;
    }
};

// Simultaneous substitution: bound values are final, never re-substituted.
// Derivative jets of a bound function are derived from the bound value.
inline Expression substitute(const Expression &e, const Bindings &b) {
    auto ctx = e.ctx();
    for (const auto &[name, val] : b.constants) {
        if (!ctx->has_param(name))
            throw SubstitutionError("undeclared constant in binding: " + name);
        val.check_ctx(e);
    }
    for (const auto &[name, val] : b.functions) {
        const JetDecl *decl = ctx->find_jet(name);
        if (!decl)
            throw SubstitutionError("undeclared function in binding: " + name);
        val.check_ctx(e);
        if (decl->rule == JetRule::free) {
            for (int a : coordinate_support(val))
                if (!decl->deps[a])
                    throw SubstitutionError("value bound to " + name +
                                            " depends on a coordinate outside its dependency set");
        } else if (decl->rule == JetRule::radial) {
            diff_radial(val);  // throws if the value is not radial
        } else {
            auto vt = b.functions.find(decl->anti_of);
            if (vt == b.functions.end())
                throw SubstitutionError("incomplete bindings: antiderivative " + name +
                                        " bound without its integrand " + decl->anti_of);
            std::set<int> sup = coordinate_support(val);
            if (sup.count(1) || sup.count(2))
                throw SubstitutionError("antiderivative value for " + name +
                                        " must depend on x alone");
            if (differentiate(val, 0) != vt->second)
                throw SubstitutionError("inconsistent bindings: d/dx of " + name +
                                        " does not equal the value bound to " + decl->anti_of);
        }
    }

    std::map<Symbol, Expression> memo;
    auto value_of = [&](const Symbol &s) -> std::optional<Expression> {
        if (s.is_parameter()) {
            auto it = b.constants.find(s.name);
            if (it == b.constants.end())
                return std::nullopt;
            return it->second;
        }
        if (!s.is_jet())
            return std::nullopt;
        auto it = b.functions.find(s.name);
        if (it == b.functions.end())
            return std::nullopt;
        auto mit = memo.find(s);
        if (mit != memo.end())
            return mit->second;
        Expression v = it->second;
        if (s.rule == JetRule::free) {
            for (int a = 0; a < 3; ++a)
                for (int k = 0; k < s.alpha[a]; ++k)
                    v = differentiate(v, a);
        } else if (s.rule == JetRule::radial) {
            for (int k = 0; k < s.radial_order; ++k)
                v = diff_radial(v);
        }
        memo.emplace(s, v);
        return v;
    };

    Expression acc = Expression::zero(ctx);
    for (const auto &[m, c] : e.num()) {
        Expression term = Expression::scalar(ctx, c);
        Poly passthrough = poly_scalar(GaussianRational::one());
        for (const auto &[s, exp] : m.factors) {
            if (auto v = value_of(s))
                term *= pow(*v, exp);
            else
                passthrough = poly_mul(passthrough, poly_symbol(s, exp));
        }
        term *= Expression::make(ctx, std::move(passthrough));
        acc += term;
    }
    return acc * Expression::make(ctx, poly_scalar(GaussianRational::one()), e.den());
}

// Rewrites individual jet symbols (not whole families): fn returns the
// replacement expression for a symbol or nullopt to keep it.
inline Expression rewrite_jets(const Expression &e,
                               const std::function<std::optional<Expression>(const Symbol &)> &fn) {
    auto ctx = e.ctx();
    Expression acc = Expression::zero(ctx);
    for (const auto &[m, c] : e.num()) {
        Expression term = Expression::scalar(ctx, c);
        Poly passthrough = poly_scalar(GaussianRational::one());
        for (const auto &[s, exp] : m.factors) {
            std::optional<Expression> v = s.is_jet() ? fn(s) : std::nullopt;
            if (v)
                term *= pow(*v, exp);
            else
                passthrough = poly_mul(passthrough, poly_symbol(s, exp));
        }
        term *= Expression::make(ctx, std::move(passthrough));
        acc += term;
    }
    return acc * Expression::make(ctx, poly_scalar(GaussianRational::one()), e.den());
}

// Splits into (part whose monomials satisfy pred, remainder).
inline std::pair<Expression, Expression> split_monomials(
    const Expression &e, const std::function<bool(const Monomial &)> &pred) {
    Poly hit, rest;
    for (const auto &[m, c] : e.num())
        (pred(m) ? hit : rest).emplace(m, c);
    return {Expression::make(e.ctx(), std::move(hit), e.den()),
            Expression::make(e.ctx(), std::move(rest), e.den())};
}

// ---- exact evaluation --------------------------------------------------

using Point = std::map<int, GaussianRational>;          // axis -> value
using ParamValues = std::map<std::string, GaussianRational>;

inline GaussianRational evaluate(const Expression &e, const Point &point,
                                 const ParamValues &params = {}) {
    const Context &ctx = *e.ctx();
    auto eval_poly = [&](const Poly &p) {
        GaussianRational acc;
        for (const auto &[m, c] : p) {
            GaussianRational t = c;
            for (const auto &[s, exp] : m.factors) {
                if (s.is_coordinate()) {
                    auto it = point.find(s.axis());
                    if (it == point.end())
                        throw Error("evaluation point does not bind coordinate " +
                                    std::string(axis_name(s.axis())));
                    t *= it->second.pow(static_cast<unsigned>(exp));
                } else if (s.is_parameter()) {
                    auto it = params.find(s.name);
                    if (it == params.end())
                        throw Error("unbound constant in evaluation: " + s.name);
                    t *= it->second.pow(static_cast<unsigned>(exp));
                } else {
                    throw Error("cannot evaluate formal function " + s.display());
                }
            }
            acc += t;
        }
        return acc;
    };
    GaussianRational n = eval_poly(e.num());
    for (const auto &[i, exp] : e.den()) {
        GaussianRational d = eval_poly(ctx.den_bases[i]);
        if (d.is_zero())
            throw PoleError("evaluation point lies on a pole of the denominator");
        n = n / d.pow(static_cast<unsigned>(exp));
    }
    return n;
}

// ---- canonical printer ---------------------------------------------------

namespace detail {

inline std::string rational_magnitude(const Rational &r) {
    Rational a = abs(r);
    return a.get_str();
}

// body text of a coefficient magnitude; empty string means "coefficient 1"
inline std::string coeff_body(const GaussianRational &c, bool &negative) {
    negative = false;
    if (c.is_real()) {
        negative = c.re < 0;
        Rational a = abs(c.re);
        if (a == 1)
            return "";
        return a.get_str();
    }
    if (c.is_imaginary()) {
        negative = c.im < 0;
        Rational a = abs(c.im);
        if (a == 1)
            return "i";
        return a.get_str() + "*i";
    }
    // mixed complex scalar: keep it inside parentheses, never signed outside
    std::string im_mag = abs(c.im) == 1 ? "i" : rational_magnitude(c.im) + "*i";
    return "(" + c.re.get_str() + (c.im > 0 ? " + " : " - ") + im_mag + ")";
}

inline std::string monomial_body(const Monomial &m) {
    std::string out;
    for (const auto &[s, e] : m.factors) {
        if (!out.empty())
            out += "*";
        out += s.display();
        if (e != 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

inline std::string poly_to_string(const Poly &p) {
    if (p.empty())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        bool neg = false;
        std::string c = coeff_body(it->second, neg);
        std::string m = monomial_body(it->first);
        std::string body;
        if (m.empty())
            body = c.empty() ? "1" : c;
        else if (c.empty())
            body = m;
        else
            body = c + "*" + m;
        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

inline std::string den_to_string(const Context &ctx, const DenMap &den) {
    std::string out;
    int nfact = 0;
    for (const auto &[i, exp] : den) {
        const Poly &b = ctx.den_bases[i];
        std::string base;
        if (b.size() == 1 && b.begin()->first.factors.size() == 1 &&
            b.begin()->first.factors[0].second == 1 && b.begin()->second.is_one())
            base = b.begin()->first.factors[0].first.display();
        else
            base = "(" + poly_to_string(b) + ")";
        if (exp != 1)
            base += "^" + std::to_string(exp);
        if (!out.empty())
            out += "*";
        out += base;
        ++nfact;
        if (exp != 1)
            ++nfact;  // "x^2" parses as a single factor; counting is only for wrapping
    }
    if (den.size() > 1)
        out = "(" + out + ")";
    return out;
}

}  // namespace detail

inline std::string to_string(const Expression &e) {
    if (e.is_zero())
        return "0";
    std::string num = detail::poly_to_string(e.num());
    if (e.den().empty())
        return num;
    if (e.num().size() > 1)
        num = "(" + num + ")";
    return num + "/" + detail::den_to_string(*e.ctx(), e.den());
}

}  // namespace spinorbit
