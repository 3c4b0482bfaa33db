#pragma once

#include "spinorbit/diffop.hpp"

namespace spinorbit {

// sigma_a sigma_b = delta_ab sigma_0 + i eps_abc sigma_c, sigma_0 = identity.
// Returns the component index and phase of the product.
inline std::pair<int, GaussianRational> sigma_product(int a, int b) {
    if (a == 0)
        return {b, GaussianRational::one()};
    if (b == 0)
        return {a, GaussianRational::one()};
    if (a == b)
        return {0, GaussianRational::one()};
    // remaining index and the sign of eps_abc
    int c = 6 - a - b;
    bool positive = (b - a + 3) % 3 == 1;  // (1,2),(2,3),(3,1) are the positive cycles
    return {c, positive ? GaussianRational::i() : -GaussianRational::i()};
}

inline int epsilon3(int i, int j, int k) {
    if (i == j || j == k || i == k)
        return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

struct Spinor {
    std::array<Expression, 2> comp;

    static Spinor zero(const ContextPtr &ctx) {
        return {Expression::zero(ctx), Expression::zero(ctx)};
    }
    friend Spinor operator+(const Spinor &a, const Spinor &b) {
        return {a.comp[0] + b.comp[0], a.comp[1] + b.comp[1]};
    }
    friend Spinor operator-(const Spinor &a, const Spinor &b) {
        return {a.comp[0] - b.comp[0], a.comp[1] - b.comp[1]};
    }
    bool is_zero() const { return comp[0].is_zero() && comp[1].is_zero(); }
    friend bool operator==(const Spinor &a, const Spinor &b) {
        return a.comp[0] == b.comp[0] && a.comp[1] == b.comp[1];
    }
};

// Pauli-matrix-valued differential operator in the unique sigma-expansion
// P = sum_mu P_mu sigma_mu with scalar operators P_mu.
class PauliOperator {
  public:
    PauliOperator() = default;
    explicit PauliOperator(ContextPtr ctx)
        : ctx_(ctx),
          comp_{ScalarDiffOp::zero(ctx), ScalarDiffOp::zero(ctx), ScalarDiffOp::zero(ctx),
                ScalarDiffOp::zero(ctx)} {}

    static PauliOperator zero(const ContextPtr &ctx) { return PauliOperator(ctx); }
    static PauliOperator identity(const ContextPtr &ctx) {
        return from_component(0, ScalarDiffOp::identity(ctx));
    }
    static PauliOperator sigma(const ContextPtr &ctx, int mu) {
        return from_component(mu, ScalarDiffOp::identity(ctx));
    }
    static PauliOperator from_component(int mu, ScalarDiffOp op) {
        PauliOperator p(op.ctx());
        p.comp_[mu] = std::move(op);
        return p;
    }
    // embed a scalar operator as P sigma_0
    static PauliOperator scalar_op(ScalarDiffOp op) { return from_component(0, std::move(op)); }

    const ContextPtr &ctx() const { return ctx_; }
    const ScalarDiffOp &component(int mu) const { return comp_[mu]; }
    void set_component(int mu, ScalarDiffOp op) { comp_[mu] = std::move(op); }

    bool is_zero() const {
        for (const auto &c : comp_)
            if (!c.is_zero())
                return false;
        return true;
    }
    bool is_diagonal() const { return comp_[1].is_zero() && comp_[2].is_zero(); }
    int order() const {
        int o = 0;
        for (const auto &c : comp_)
            o = std::max(o, c.order());
        return o;
    }

    friend PauliOperator operator+(const PauliOperator &a, const PauliOperator &b) {
        PauliOperator r(a.ctx_);
        for (int mu = 0; mu < 4; ++mu)
            r.comp_[mu] = a.comp_[mu] + b.comp_[mu];
        return r;
    }
    PauliOperator operator-() const {
        PauliOperator r(ctx_);
        for (int mu = 0; mu < 4; ++mu)
            r.comp_[mu] = -comp_[mu];
        return r;
    }
    friend PauliOperator operator-(const PauliOperator &a, const PauliOperator &b) {
        return a + (-b);
    }
    friend PauliOperator operator*(const Expression &f, const PauliOperator &a) {
        PauliOperator r(a.ctx_);
        for (int mu = 0; mu < 4; ++mu)
            r.comp_[mu] = f * a.comp_[mu];
        return r;
    }
    friend PauliOperator operator*(const GaussianRational &s, const PauliOperator &a) {
        return Expression::scalar(a.ctx_, s) * a;
    }
    friend PauliOperator operator*(long s, const PauliOperator &a) {
        return Expression::integer(a.ctx_, s) * a;
    }

    friend PauliOperator operator*(const PauliOperator &a, const PauliOperator &b) {
        PauliOperator r(a.ctx_);
        for (int mu = 0; mu < 4; ++mu) {
            if (a.comp_[mu].is_zero())
                continue;
            for (int nu = 0; nu < 4; ++nu) {
                if (b.comp_[nu].is_zero())
                    continue;
                auto [k, phase] = sigma_product(mu, nu);
                r.comp_[k] = r.comp_[k] + phase * compose(a.comp_[mu], b.comp_[nu]);
            }
        }
        return r;
    }

    friend bool operator==(const PauliOperator &a, const PauliOperator &b) {
        for (int mu = 0; mu < 4; ++mu)
            if (!(a.comp_[mu] == b.comp_[mu]))
                return false;
        return true;
    }
    friend bool operator!=(const PauliOperator &a, const PauliOperator &b) { return !(a == b); }

  private:
    ContextPtr ctx_;
    std::array<ScalarDiffOp, 4> comp_;
};

inline PauliOperator commutator(const PauliOperator &a, const PauliOperator &b) {
    return a * b - b * a;
}
inline PauliOperator anticommutator(const PauliOperator &a, const PauliOperator &b) {
    return a * b + b * a;
}

// sigma matrices commute with scalar coefficients, so the adjoint acts
// componentwise.
inline PauliOperator adjoint(const PauliOperator &p) {
    PauliOperator r(p.ctx());
    for (int mu = 0; mu < 4; ++mu)
        r.set_component(mu, adjoint(p.component(mu)));
    return r;
}

inline bool is_hermitian(const PauliOperator &p) { return adjoint(p) == p; }

inline Spinor apply_sigma(int mu, const Spinor &s) {
    switch (mu) {
    case 0:
        return s;
    case 1:
        return {s.comp[1], s.comp[0]};
    case 2:
        return {-GaussianRational::i() * s.comp[1], GaussianRational::i() * s.comp[0]};
    default:
        return {s.comp[0], -s.comp[1]};
    }
}

inline Spinor apply_to_spinor(const PauliOperator &p, const Spinor &s) {
    Spinor acc = Spinor::zero(p.ctx());
    for (int mu = 0; mu < 4; ++mu) {
        if (p.component(mu).is_zero())
            continue;
        Spinor t{apply(p.component(mu), s.comp[0]), apply(p.component(mu), s.comp[1])};
        acc = acc + apply_sigma(mu, t);
    }
    return acc;
}

// first nonzero (sigma, derivative index, coefficient) triple, for diagnostics
inline std::string first_nonzero_coefficient(const PauliOperator &p) {
    for (int mu = 0; mu < 4; ++mu)
        for (const auto &[d, c] : p.component(mu).terms())
            return "sigma" + std::to_string(mu) + " * " + deriv_index_to_string(d) + " : " +
                   to_string(c);
    return "";
}

inline std::string to_string(const PauliOperator &p) {
    if (p.is_zero())
        return "0";
    std::string out;
    for (int mu = 0; mu < 4; ++mu) {
        if (p.component(mu).is_zero())
            continue;
        if (!out.empty())
            out += "  +  ";
        out += "sigma" + std::to_string(mu) + "*[" + to_string(p.component(mu)) + "]";
    }
    return out;
}

}  // namespace spinorbit
