#pragma once

#include <array>
#include <map>

#include "spinorbit/expression.hpp"

namespace spinorbit {

using DerivIndex = std::array<uint8_t, 3>;

inline int deriv_order(const DerivIndex &d) { return d[0] + d[1] + d[2]; }

struct DerivIndexLess {
    bool operator()(const DerivIndex &a, const DerivIndex &b) const {
        int oa = deriv_order(a), ob = deriv_order(b);
        if (oa != ob)
            return oa < ob;
        return a < b;
    }
};

inline std::string deriv_index_to_string(const DerivIndex &d) {
    if (deriv_order(d) == 0)
        return "1";
    static const char *names[3] = {"Dx", "Dy", "Dz"};
    std::string out;
    for (int a = 0; a < 3; ++a) {
        if (d[a] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += names[a];
        if (d[a] > 1)
            out += "^" + std::to_string(d[a]);
    }
    return out;
}

// Linear differential operator in normal form: every coefficient stands to
// the left of every derivative, zero coefficients pruned. Equality of
// operators is equality of normal forms.
class ScalarDiffOp {
  public:
    ScalarDiffOp() = default;
    explicit ScalarDiffOp(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static ScalarDiffOp zero(ContextPtr ctx) { return ScalarDiffOp(std::move(ctx)); }
    static ScalarDiffOp identity(ContextPtr ctx) {
        return mult(Expression::one(std::move(ctx)));
    }
    // multiplication by a function
    static ScalarDiffOp mult(Expression f) {
        ScalarDiffOp op(f.ctx());
        op.set_term({0, 0, 0}, std::move(f));
        return op;
    }
    static ScalarDiffOp partial(ContextPtr ctx, int axis) {
        if (axis >= coord_count(ctx->mode))
            throw Error("derivative axis outside the active mode");
        ScalarDiffOp op(ctx);
        DerivIndex d{0, 0, 0};
        d[axis] = 1;
        op.set_term(d, Expression::one(ctx));
        return op;
    }

    const ContextPtr &ctx() const { return ctx_; }
    const std::map<DerivIndex, Expression, DerivIndexLess> &terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int order() const {
        int o = 0;
        for (const auto &[d, c] : terms_)
            o = std::max(o, deriv_order(d));
        return o;
    }
    Expression coefficient(const DerivIndex &d) const {
        auto it = terms_.find(d);
        return it == terms_.end() ? Expression::zero(ctx_) : it->second;
    }

    void set_term(const DerivIndex &d, Expression c) {
        if (c.is_zero())
            terms_.erase(d);
        else
            terms_.insert_or_assign(d, std::move(c));
    }
    void add_term(const DerivIndex &d, const Expression &c) {
        auto it = terms_.find(d);
        if (it == terms_.end()) {
            if (!c.is_zero())
                terms_.emplace(d, c);
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    friend ScalarDiffOp operator+(const ScalarDiffOp &a, const ScalarDiffOp &b) {
        a.check_ctx(b);
        ScalarDiffOp r = a;
        for (const auto &[d, c] : b.terms_)
            r.add_term(d, c);
        return r;
    }
    ScalarDiffOp operator-() const {
        ScalarDiffOp r(ctx_);
        for (const auto &[d, c] : terms_)
            r.terms_.emplace(d, -c);
        return r;
    }
    friend ScalarDiffOp operator-(const ScalarDiffOp &a, const ScalarDiffOp &b) {
        return a + (-b);
    }
    friend ScalarDiffOp operator*(const Expression &f, const ScalarDiffOp &a) {
        ScalarDiffOp r(a.ctx_);
        for (const auto &[d, c] : a.terms_)
            r.add_term(d, f * c);
        return r;
    }
    friend ScalarDiffOp operator*(const GaussianRational &s, const ScalarDiffOp &a) {
        return Expression::scalar(a.ctx_, s) * a;
    }
    friend ScalarDiffOp operator*(long s, const ScalarDiffOp &a) {
        return Expression::integer(a.ctx_, s) * a;
    }

    // operator composition (Leibniz normal ordering)
    friend ScalarDiffOp operator*(const ScalarDiffOp &a, const ScalarDiffOp &b) {
        return compose(a, b);
    }

    friend bool operator==(const ScalarDiffOp &a, const ScalarDiffOp &b) {
        a.check_ctx(b);
        if (a.terms_.size() != b.terms_.size())
            return (a - b).is_zero();
        for (auto ita = a.terms_.begin(), itb = b.terms_.begin(); ita != a.terms_.end();
             ++ita, ++itb) {
            if (ita->first != itb->first || !(ita->second == itb->second))
                return (a - b).is_zero();
        }
        return true;
    }
    friend bool operator!=(const ScalarDiffOp &a, const ScalarDiffOp &b) { return !(a == b); }

    void check_ctx(const ScalarDiffOp &o) const {
        if (ctx_ != o.ctx_)
            throw Error("operators belong to different symbol contexts");
    }

    friend ScalarDiffOp compose(const ScalarDiffOp &a, const ScalarDiffOp &b);
    friend Expression apply(const ScalarDiffOp &a, const Expression &f);

  private:
    ContextPtr ctx_;
    std::map<DerivIndex, Expression, DerivIndexLess> terms_;
};

inline Expression apply(const ScalarDiffOp &a, const Expression &f) {
    f.check_ctx(Expression::zero(a.ctx()));
    Expression acc = Expression::zero(a.ctx());
    for (const auto &[d, c] : a.terms_) {
        Expression g = f;
        for (int axis = 0; axis < 3; ++axis)
            for (int k = 0; k < d[axis]; ++k)
                g = differentiate(g, axis);
        acc += c * g;
    }
    return acc;
}

namespace detail {
inline long binomial(int n, int k) {
    long r = 1;
    for (int j = 1; j <= k; ++j)
        r = r * (n - j + 1) / j;
    return r;
}
// all gamma <= alpha componentwise
inline void for_each_subindex(const DerivIndex &alpha,
                              const std::function<void(const DerivIndex &, long)> &fn) {
    for (uint8_t g0 = 0; g0 <= alpha[0]; ++g0)
        for (uint8_t g1 = 0; g1 <= alpha[1]; ++g1)
            for (uint8_t g2 = 0; g2 <= alpha[2]; ++g2) {
                long coeff = binomial(alpha[0], g0) * binomial(alpha[1], g1) *
                             binomial(alpha[2], g2);
                fn(DerivIndex{g0, g1, g2}, coeff);
            }
}
}  // namespace detail

// A o B via the iterated Leibniz rule:
//   d^a (f g) = sum_{c<=a} C(a,c) (d^c f) d^{a-c} g
inline ScalarDiffOp compose(const ScalarDiffOp &a, const ScalarDiffOp &b) {
    a.check_ctx(b);
    ScalarDiffOp r(a.ctx());
    for (const auto &[alpha, ca] : a.terms_) {
        for (const auto &[beta, cb] : b.terms_) {
            detail::for_each_subindex(alpha, [&](const DerivIndex &gamma, long binom) {
                Expression g = cb;
                for (int axis = 0; axis < 3; ++axis)
                    for (int k = 0; k < gamma[axis]; ++k)
                        g = differentiate(g, axis);
                if (g.is_zero())
                    return;
                DerivIndex idx;
                for (int axis = 0; axis < 3; ++axis)
                    idx[axis] = static_cast<uint8_t>(alpha[axis] - gamma[axis] + beta[axis]);
                r.add_term(idx, GaussianRational::of(binom) * (ca * g));
            });
        }
    }
    return r;
}

inline ScalarDiffOp commutator(const ScalarDiffOp &a, const ScalarDiffOp &b) {
    return compose(a, b) - compose(b, a);
}
inline ScalarDiffOp anticommutator(const ScalarDiffOp &a, const ScalarDiffOp &b) {
    return compose(a, b) + compose(b, a);
}

// (1/2){f, D} for first-order D; equals f*D + (1/2)(D f) in normal form.
inline ScalarDiffOp symmetrize(const Expression &f, const ScalarDiffOp &d) {
    if (d.order() > 1)
        throw Error("symmetrize expects a first-order operator");
    ScalarDiffOp fd = ScalarDiffOp::mult(f);
    ScalarDiffOp half = GaussianRational::of(1, 2) * (compose(fd, d) + compose(d, fd));
    return half;
}

// Formal adjoint under the canonical involution: (c d^b)* = (-1)^|b| d^b conj(c).
inline ScalarDiffOp adjoint(const ScalarDiffOp &a) {
    ScalarDiffOp r(a.ctx());
    for (const auto &[d, c] : a.terms()) {
        ScalarDiffOp deriv = ScalarDiffOp::identity(a.ctx());
        for (int axis = 0; axis < 3; ++axis)
            for (int k = 0; k < d[axis]; ++k)
                deriv = compose(deriv, ScalarDiffOp::partial(a.ctx(), axis));
        GaussianRational sign =
            (deriv_order(d) % 2 == 0) ? GaussianRational::one() : GaussianRational::of(-1);
        r = r + sign * compose(deriv, ScalarDiffOp::mult(conjugate(c)));
    }
    return r;
}

inline std::string to_string(const ScalarDiffOp &a) {
    if (a.is_zero())
        return "0";
    std::string out;
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
        if (!out.empty())
            out += " + ";
        std::string c = to_string(it->second);
        if (deriv_order(it->first) == 0)
            out += "(" + c + ")";
        else
            out += "(" + c + ")*" + deriv_index_to_string(it->first);
    }
    return out;
}

// ---- standard builders --------------------------------------------------

enum class HbarMode : uint8_t { unit, tracked };

inline Expression hbar_factor(const ContextPtr &ctx, HbarMode mode) {
    if (mode == HbarMode::unit)
        return Expression::one(ctx);
    return Expression::parameter(ctx, "hbar");
}

// p_k = -i hbar d_k  (hbar = 1 unless tracked)
inline ScalarDiffOp momentum(const ContextPtr &ctx, int axis, HbarMode hbar = HbarMode::unit) {
    Expression c = GaussianRational::i() * hbar_factor(ctx, hbar);
    return (-c) * ScalarDiffOp::partial(ctx, axis);
}

// L_i = eps_{ijk} x_j p_k; in the plane only L_3 = x p_2 - y p_1 exists.
inline ScalarDiffOp angular_momentum(const ContextPtr &ctx, int axis,
                                     HbarMode hbar = HbarMode::unit) {
    static const int eps[3][2][2] = {{{1, 2}, {2, 1}}, {{2, 0}, {0, 2}}, {{0, 1}, {1, 0}}};
    if (ctx->mode == Mode::planar && axis != 2)
        throw Error("planar mode only carries L_3");
    int j = eps[axis][0][0], k = eps[axis][0][1];
    int j2 = eps[axis][1][0], k2 = eps[axis][1][1];
    return Expression::coordinate(ctx, j) * momentum(ctx, k, hbar) -
           Expression::coordinate(ctx, j2) * momentum(ctx, k2, hbar);
}

inline ScalarDiffOp laplacian(const ContextPtr &ctx) {
    ScalarDiffOp r(ctx);
    for (int a = 0; a < ctx->n_coords(); ++a) {
        DerivIndex d{0, 0, 0};
        d[a] = 2;
        r.set_term(d, Expression::one(ctx));
    }
    return r;
}

}  // namespace spinorbit
