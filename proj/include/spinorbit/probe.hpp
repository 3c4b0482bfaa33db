#pragma once

#include <random>

#include "spinorbit/catalog.hpp"

namespace spinorbit {

// Deterministic random source; every randomized check takes one so a seed
// reproduces the run exactly.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    long below(long n) { return static_cast<long>(eng() % static_cast<uint64_t>(n)); }
    long range(long lo, long hi) { return lo + below(hi - lo + 1); }
    bool flip() { return (eng() & 1) != 0; }
};

inline GaussianRational random_rational(Rng &rng, long max_num = 6, long max_den = 4,
                                        bool nonzero = false) {
    long n = rng.range(-max_num, max_num);
    if (nonzero && n == 0)
        n = 1 + rng.below(max_num);
    return GaussianRational::of(n, 1 + rng.below(max_den));
}

inline GaussianRational random_gaussian(Rng &rng, bool nonzero = false) {
    GaussianRational g(random_rational(rng).re, random_rational(rng).re);
    if (nonzero && g.is_zero())
        g = GaussianRational::one();
    return g;
}

// Random polynomial in the coordinates (optionally with complex coefficients
// and parameter factors), a handful of terms of bounded degree.
inline Expression random_polynomial(const ContextPtr &ctx, Rng &rng, int max_degree,
                                    bool complex_coeffs = true, bool with_params = false) {
    Poly p;
    int terms = static_cast<int>(2 + rng.below(4));
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int deg = static_cast<int>(rng.below(max_degree + 1));
        for (int d = 0; d < deg; ++d)
            m = m.times(Monomial::of(Symbol::coordinate(static_cast<int>(rng.below(ctx->n_coords())))));
        if (with_params && !ctx->parameters.empty() && rng.flip())
            m = m.times(Monomial::of(
                Symbol::parameter(ctx->parameters[rng.below(static_cast<long>(ctx->parameters.size()))])));
        poly_accumulate(p, m, complex_coeffs ? random_gaussian(rng) : random_rational(rng));
    }
    return Expression::make(ctx, std::move(p));
}

inline Expression random_polynomial_in(const Expression &var, Rng &rng, int max_degree) {
    auto ctx = var.ctx();
    Expression acc = Expression::zero(ctx);
    for (int k = 0; k <= max_degree; ++k)
        acc += Expression::scalar(ctx, random_rational(rng)) * pow(var, k);
    return acc;
}

inline ScalarDiffOp random_operator(const ContextPtr &ctx, Rng &rng, int max_order,
                                    int coeff_degree = 2) {
    ScalarDiffOp op(ctx);
    int terms = static_cast<int>(1 + rng.below(3));
    for (int t = 0; t < terms; ++t) {
        DerivIndex d{0, 0, 0};
        int ord = static_cast<int>(rng.below(max_order + 1));
        for (int k = 0; k < ord; ++k)
            ++d[rng.below(ctx->n_coords())];
        op.add_term(d, random_polynomial(ctx, rng, coeff_degree));
    }
    return op;
}

inline Spinor random_spinor(const ContextPtr &ctx, Rng &rng, int max_degree = 3) {
    return {random_polynomial(ctx, rng, max_degree), random_polynomial(ctx, rng, max_degree)};
}

inline Point random_point(const ContextPtr &ctx, Rng &rng) {
    Point p;
    for (int a = 0; a < ctx->n_coords(); ++a)
        p[a] = random_rational(rng, 5, 3, /*nonzero=*/true);
    return p;
}

inline ParamValues random_param_values(const ContextPtr &ctx, Rng &rng) {
    ParamValues v;
    for (const auto &n : ctx->parameters)
        v[n] = random_rational(rng, 4, 3, /*nonzero=*/true);
    return v;
}

// Commutator action through apply only: H(X psi) - X(H psi). This never
// forms the composed operator, so it is an oracle independent of the
// normal-form engine.
inline Spinor commutator_action(const PauliOperator &h, const PauliOperator &x,
                                const Spinor &psi) {
    return apply_to_spinor(h, apply_to_spinor(x, psi)) -
           apply_to_spinor(x, apply_to_spinor(h, psi));
}

// Binds the formal potentials of a catalog family to random concrete members
// (polynomials of the right shape), so residuals can be evaluated at points.
inline SystemSpec instantiate_random(const SystemSpec &s, Rng &rng) {
    Bindings b;
    const ContextPtr &ctx = s.ctx;
    if (s.id == "2d-radial" || s.id == "3d-spherical") {
        Expression u = Expression::radius_squared(ctx);
        b.bind_function("V0", random_polynomial_in(u, rng, 2));
        b.bind_function("V1", random_polynomial_in(u, rng, 2));
    } else if (s.id == "2d-cartesian") {
        Expression x = Expression::coordinate(ctx, 0);
        Expression v1 = Expression::zero(ctx);
        Expression w = Expression::zero(ctx);
        for (int k = 0; k <= 2; ++k) {
            GaussianRational c = random_rational(rng);
            v1 += Expression::scalar(ctx, c) * pow(x, k);
            w += Expression::scalar(ctx, c / GaussianRational::of(k + 1)) * pow(x, k + 1);
        }
        b.bind_function("V1", v1);
        b.bind_function("W", w);
        b.bind_function("F", random_polynomial_in(x, rng, 2));
    } else {
        return s;
    }
    SystemSpec t = s;
    t.hamiltonian = substitute(s.hamiltonian, b);
    for (auto &[n, xop] : t.integrals)
        xop = substitute(xop, b);
    t.v0 = substitute(s.v0, b);
    t.v1 = substitute(s.v1, b);
    return t;
}

struct ProbeResult {
    bool ok = true;
    size_t spinors = 0;
    size_t evaluations = 0;
    std::string failure;
};

// Applies [H, X] to random polynomial spinors and evaluates the residual at
// random non-pole rational points; every value must be exactly zero.
inline ProbeResult numeric_probe(const SystemSpec &concrete, const PauliOperator &x,
                                 int n_spinors, int n_points, Rng &rng) {
    ProbeResult res;
    const ContextPtr &ctx = concrete.ctx;
    for (int si = 0; si < n_spinors; ++si) {
        Spinor psi = random_spinor(ctx, rng);
        Spinor residual = commutator_action(concrete.hamiltonian, x, psi);
        ++res.spinors;
        for (int pi = 0; pi < n_points; ++pi) {
            ParamValues pv = random_param_values(ctx, rng);
            for (int attempt = 0;; ++attempt) {
                Point pt = random_point(ctx, rng);
                try {
                    GaussianRational v0 = evaluate(residual.comp[0], pt, pv);
                    GaussianRational v1 = evaluate(residual.comp[1], pt, pv);
                    ++res.evaluations;
                    if (!v0.is_zero() || !v1.is_zero()) {
                        res.ok = false;
                        res.failure = "nonzero residual value " + to_string(v0) + ", " +
                                      to_string(v1);
                        return res;
                    }
                    break;
                } catch (const PoleError &) {
                    if (attempt > 50)
                        throw;
                }
            }
        }
    }
    return res;
}

// apply(compose(A,B), f) must equal apply(A, apply(B, f)); validates the
// normal-form engine on random operators and functions.
inline ProbeResult compose_apply_oracle(const ContextPtr &ctx, Rng &rng, int trials,
                                        int max_order = 2, int f_degree = 4) {
    ProbeResult res;
    for (int t = 0; t < trials; ++t) {
        ScalarDiffOp a = random_operator(ctx, rng, max_order);
        ScalarDiffOp b = random_operator(ctx, rng, max_order);
        Expression f = random_polynomial(ctx, rng, f_degree);
        Expression lhs = apply(compose(a, b), f);
        Expression rhs = apply(a, apply(b, f));
        ++res.evaluations;
        if (!(lhs == rhs)) {
            res.ok = false;
            res.failure = "compose/apply mismatch on trial " + std::to_string(t);
            return res;
        }
    }
    return res;
}

// Random rational function of xi = y/x over the registered denominators:
// P(xi) / (xi^a (1+xi^2)^b).
inline Expression random_alpha_dot(const ContextPtr &ctx, Rng &rng) {
    Expression xi = div(Expression::coordinate(ctx, 1), Expression::coordinate(ctx, 0));
    Expression num = Expression::zero(ctx);
    for (int k = 0; k <= static_cast<int>(rng.below(3)); ++k)
        num += Expression::scalar(ctx, random_rational(rng)) * pow(xi, k);
    Expression den = pow(xi, static_cast<int>(rng.below(3)));
    Expression one_xi2 = Expression::one(ctx) + xi * xi;
    den *= pow(one_xi2, static_cast<int>(rng.below(2)));
    return div(num, den);
}

}  // namespace spinorbit
