#pragma once

#include <optional>
#include <vector>

#include "spinorbit/parser.hpp"
#include "spinorbit/pauli.hpp"

namespace spinorbit {

inline ScalarDiffOp substitute(const ScalarDiffOp &op, const Bindings &b) {
    ScalarDiffOp r(op.ctx());
    for (const auto &[d, c] : op.terms())
        r.add_term(d, substitute(c, b));
    return r;
}
inline PauliOperator substitute(const PauliOperator &p, const Bindings &b) {
    PauliOperator r(p.ctx());
    for (int mu = 0; mu < 4; ++mu)
        r.set_component(mu, substitute(p.component(mu), b));
    return r;
}

// A Hamiltonian with its named first-order integrals of motion. In verified
// mode construction fails unless every [H, X] vanishes identically and H is
// Hermitian.
struct SystemSpec {
    std::string id;
    ContextPtr ctx;
    PauliOperator hamiltonian;
    std::vector<std::pair<std::string, PauliOperator>> integrals;
    Expression v0, v1;
    HbarMode hbar = HbarMode::unit;

    const PauliOperator &integral(const std::string &name) const {
        for (const auto &[n, x] : integrals)
            if (n == name)
                return x;
        throw Error("no integral named " + name);
    }
};

struct BuildOptions {
    bool verified = true;
    HbarMode hbar = HbarMode::unit;
    std::string gamma_text;     // optional value substituted for the coupling constant
    std::string v0_extra_text;  // optional perturbation added to V0 (for negative demos)
};

inline void verify_system(const SystemSpec &s) {
    if (!is_hermitian(s.hamiltonian))
        throw VerificationError(s.id + ": Hamiltonian is not Hermitian");
    for (const auto &[name, x] : s.integrals) {
        PauliOperator k = commutator(s.hamiltonian, x);
        if (!k.is_zero())
            throw VerificationError(s.id + ": [H, " + name +
                                    "] != 0, first nonzero coefficient: " +
                                    first_nonzero_coefficient(k));
    }
}

// H = (1/2)(p1^2 + p2^2) sigma0 + V0 sigma0 + (1/2){V1, sigma3 L3}
inline PauliOperator build_hamiltonian_2d(const ContextPtr &ctx, const Expression &v0,
                                          const Expression &v1,
                                          HbarMode hbar = HbarMode::unit) {
    ScalarDiffOp p1 = momentum(ctx, 0, hbar), p2 = momentum(ctx, 1, hbar);
    ScalarDiffOp kinetic = GaussianRational::of(1, 2) * (compose(p1, p1) + compose(p2, p2));
    PauliOperator h(ctx);
    h.set_component(0, kinetic + ScalarDiffOp::mult(v0));
    h.set_component(3, symmetrize(v1, angular_momentum(ctx, 2, hbar)));
    return h;
}

// H = (1/2) p^2 sigma0 + V0 sigma0 + (1/2){V1, sigma.L}
inline PauliOperator build_hamiltonian_3d(const ContextPtr &ctx, const Expression &v0,
                                          const Expression &v1,
                                          HbarMode hbar = HbarMode::unit) {
    ScalarDiffOp kinetic = ScalarDiffOp::zero(ctx);
    for (int a = 0; a < 3; ++a) {
        ScalarDiffOp p = momentum(ctx, a, hbar);
        kinetic = kinetic + GaussianRational::of(1, 2) * compose(p, p);
    }
    PauliOperator h(ctx);
    h.set_component(0, kinetic + ScalarDiffOp::mult(v0));
    for (int i = 0; i < 3; ++i)
        h.set_component(i + 1, symmetrize(v1, angular_momentum(ctx, i, hbar)));
    return h;
}

// Oscillator-strength spin-orbit system in the plane with its 8 first-order
// integrals L+-, X+-, Y+-, I+-.
inline SystemSpec build_superintegrable_2d(const BuildOptions &opts = {}) {
    std::vector<std::string> params = {"gamma"};
    if (opts.hbar == HbarMode::tracked)
        params.push_back("hbar");
    auto ctx = make_context(Mode::planar, params);
    Expression gamma = opts.gamma_text.empty() ? Expression::parameter(ctx, "gamma")
                                               : parse_expr(opts.gamma_text, ctx);
    Expression u = Expression::radius_squared(ctx);
    Expression v0 = GaussianRational::of(1, 2) * gamma * gamma * u;
    if (!opts.v0_extra_text.empty())
        v0 += parse_expr(opts.v0_extra_text, ctx);
    Expression v1 = gamma;

    SystemSpec s;
    s.id = "2d-superintegrable";
    s.ctx = ctx;
    s.hbar = opts.hbar;
    s.v0 = v0;
    s.v1 = v1;
    s.hamiltonian = build_hamiltonian_2d(ctx, v0, v1, opts.hbar);

    Expression hb = hbar_factor(ctx, opts.hbar);
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1);
    ScalarDiffOp l3 = angular_momentum(ctx, 2, opts.hbar);
    for (int sgn : {+1, -1}) {
        PauliOperator proj = PauliOperator::identity(ctx) +
                             GaussianRational::of(sgn) * PauliOperator::sigma(ctx, 3);
        std::string tag = sgn > 0 ? "+" : "-";
        ScalarDiffOp ix = GaussianRational::i() * hb * ScalarDiffOp::partial(ctx, 0);
        ScalarDiffOp iy = GaussianRational::i() * hb * ScalarDiffOp::partial(ctx, 1);
        ScalarDiffOp xcore = ix - GaussianRational::of(sgn) * ScalarDiffOp::mult(gamma * y);
        ScalarDiffOp ycore = iy + GaussianRational::of(sgn) * ScalarDiffOp::mult(gamma * x);
        s.integrals.push_back({"L" + tag, PauliOperator::scalar_op(l3) * proj});
        s.integrals.push_back({"X" + tag, PauliOperator::scalar_op(xcore) * proj});
        s.integrals.push_back({"Y" + tag, PauliOperator::scalar_op(ycore) * proj});
        s.integrals.push_back({"I" + tag, proj});
    }
    if (opts.verified)
        verify_system(s);
    return s;
}

enum class IntegrableKind { radial, cartesian };

// The two planar integrable families with formal potentials: radial
// V0(rho), V1(rho) with X = (w0 + w1 sigma3) L3, and the cartesian family
// V1(x), V0 = y^2/2 V1^2 + F(x) with X = -i d_y - sigma3 W, W' = V1.
inline SystemSpec build_integrable_2d(IntegrableKind kind, const BuildOptions &opts = {}) {
    SystemSpec s;
    s.hbar = opts.hbar;
    if (kind == IntegrableKind::radial) {
        std::vector<std::string> params = {"omega0", "omega1"};
        if (opts.hbar == HbarMode::tracked)
            params.push_back("hbar");
        auto ctx = make_context(Mode::planar, params,
                                {JetDecl::radial("V0"), JetDecl::radial("V1")});
        s.id = "2d-radial";
        s.ctx = ctx;
        s.v0 = Expression::jet(ctx, "V0");
        s.v1 = Expression::jet(ctx, "V1");
        s.hamiltonian = build_hamiltonian_2d(ctx, s.v0, s.v1, opts.hbar);
        ScalarDiffOp l3 = angular_momentum(ctx, 2, opts.hbar);
        PauliOperator x =
            PauliOperator::from_component(0, Expression::parameter(ctx, "omega0") * l3) +
            PauliOperator::from_component(3, Expression::parameter(ctx, "omega1") * l3);
        s.integrals.push_back({"X", x});
    } else {
        std::vector<std::string> params;
        if (opts.hbar == HbarMode::tracked)
            params.push_back("hbar");
        auto ctx = make_context(Mode::planar, params,
                                {JetDecl::free("V1", {true, false, false}),
                                 JetDecl::free("F", {true, false, false}),
                                 JetDecl::antiderivative("W", "V1")});
        s.id = "2d-cartesian";
        s.ctx = ctx;
        s.v1 = Expression::jet(ctx, "V1");
        Expression y = Expression::coordinate(ctx, 1);
        s.v0 = GaussianRational::of(1, 2) * y * y * s.v1 * s.v1 + Expression::jet(ctx, "F");
        s.hamiltonian = build_hamiltonian_2d(ctx, s.v0, s.v1, opts.hbar);
        PauliOperator x =
            PauliOperator::scalar_op(momentum(ctx, 1, opts.hbar)) -
            PauliOperator::from_component(3, ScalarDiffOp::mult(Expression::jet(ctx, "W")));
        s.integrals.push_back({"X", x});
    }
    if (opts.verified)
        verify_system(s);
    return s;
}

// Inverse-square spin-orbit system in space with the 9 integrals J_i
// (total angular momentum), Pi_i (modified linear momentum), S_i (modified
// spin). With hbar tracked the potentials are hbar^2/r^2 and hbar/r^2 and
// every generator carries its natural hbar weight; the whole family is
// hbar-homogeneous, so the commutators vanish for formal hbar.
inline SystemSpec build_superintegrable_3d(const BuildOptions &opts = {}) {
    std::vector<std::string> params;
    if (opts.hbar == HbarMode::tracked)
        params.push_back("hbar");
    auto ctx = make_context(Mode::spatial, params);
    Expression hb = hbar_factor(ctx, opts.hbar);
    Expression r2 = Expression::radius_squared(ctx);
    Expression inv_r2 = div(Expression::one(ctx), r2);

    SystemSpec s;
    s.id = "3d-superintegrable";
    s.ctx = ctx;
    s.hbar = opts.hbar;
    s.v0 = hb * hb * inv_r2;
    s.v1 = hb * inv_r2;
    if (!opts.v0_extra_text.empty())
        s.v0 += parse_expr(opts.v0_extra_text, ctx);
    s.hamiltonian = build_hamiltonian_3d(ctx, s.v0, s.v1, opts.hbar);

    std::array<Expression, 3> coord = {Expression::coordinate(ctx, 0),
                                       Expression::coordinate(ctx, 1),
                                       Expression::coordinate(ctx, 2)};
    // r.sigma
    PauliOperator r_dot_sigma(ctx);
    for (int i = 0; i < 3; ++i)
        r_dot_sigma.set_component(i + 1, ScalarDiffOp::mult(coord[i]));

    for (int i = 0; i < 3; ++i) {
        std::string n = std::to_string(i + 1);
        PauliOperator j = PauliOperator::scalar_op(angular_momentum(ctx, i, opts.hbar)) +
                          PauliOperator::from_component(
                              i + 1, ScalarDiffOp::mult(GaussianRational::of(1, 2) * hb));
        s.integrals.push_back({"J" + n, j});
    }
    for (int i = 0; i < 3; ++i) {
        std::string n = std::to_string(i + 1);
        PauliOperator pi = PauliOperator::scalar_op(momentum(ctx, i, opts.hbar));
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                int e = epsilon3(i, k, l);
                if (e != 0)
                    pi = pi - PauliOperator::from_component(
                                  l + 1,
                                  ScalarDiffOp::mult(GaussianRational::of(e) * s.v1 * coord[k]));
            }
        s.integrals.push_back({"Pi" + n, pi});
    }
    for (int i = 0; i < 3; ++i) {
        std::string n = std::to_string(i + 1);
        PauliOperator si =
            (coord[i] * inv_r2) * r_dot_sigma -
            PauliOperator::from_component(i + 1,
                                          ScalarDiffOp::mult(GaussianRational::of(1, 2) *
                                                             Expression::one(ctx)));
        s.integrals.push_back({"S" + n, hb * si});
    }
    if (opts.verified)
        verify_system(s);
    return s;
}

// Spherically symmetric family: formal radial V0(r), V1(r), integrals J_i.
inline SystemSpec build_spherical_3d(const BuildOptions &opts = {}) {
    std::vector<std::string> params;
    if (opts.hbar == HbarMode::tracked)
        params.push_back("hbar");
    auto ctx = make_context(Mode::spatial, params,
                            {JetDecl::radial("V0"), JetDecl::radial("V1")});
    Expression hb = hbar_factor(ctx, opts.hbar);
    SystemSpec s;
    s.id = "3d-spherical";
    s.ctx = ctx;
    s.hbar = opts.hbar;
    s.v0 = Expression::jet(ctx, "V0");
    s.v1 = Expression::jet(ctx, "V1");
    s.hamiltonian = build_hamiltonian_3d(ctx, s.v0, s.v1, opts.hbar);
    for (int i = 0; i < 3; ++i) {
        PauliOperator j = PauliOperator::scalar_op(angular_momentum(ctx, i, opts.hbar)) +
                          PauliOperator::from_component(
                              i + 1, ScalarDiffOp::mult(GaussianRational::of(1, 2) * hb));
        s.integrals.push_back({"J" + std::to_string(i + 1), j});
    }
    if (opts.verified)
        verify_system(s);
    return s;
}

inline const std::vector<std::string> &system_ids() {
    static const std::vector<std::string> ids = {"2d-superintegrable", "2d-radial",
                                                 "2d-cartesian", "3d-superintegrable",
                                                 "3d-spherical"};
    return ids;
}

inline SystemSpec build_system(const std::string &id, const BuildOptions &opts = {}) {
    if (id == "2d-superintegrable")
        return build_superintegrable_2d(opts);
    if (id == "2d-radial")
        return build_integrable_2d(IntegrableKind::radial, opts);
    if (id == "2d-cartesian")
        return build_integrable_2d(IntegrableKind::cartesian, opts);
    if (id == "3d-superintegrable")
        return build_superintegrable_3d(opts);
    if (id == "3d-spherical")
        return build_spherical_3d(opts);
    throw Error("unknown system id: " + id);
}

// sigma3 times any planar integral is again an integral ("doubling").
inline void check_sigma3_doubling(const SystemSpec &s) {
    if (s.ctx->mode != Mode::planar)
        throw Error("sigma3 doubling is a planar property");
    PauliOperator s3 = PauliOperator::sigma(s.ctx, 3);
    if (!commutator(s.hamiltonian, s3).is_zero())
        throw VerificationError(s.id + ": sigma3 itself fails to commute with H");
    for (const auto &[name, x] : s.integrals) {
        PauliOperator k = commutator(s.hamiltonian, s3 * x);
        if (!k.is_zero())
            throw VerificationError(s.id + ": [H, sigma3*" + name +
                                    "] != 0: " + first_nonzero_coefficient(k));
    }
}

// ---- gauge action on the planar potentials -------------------------------
//
//   V1 -> V1 + adot/x^2
//   V0 -> V0 + (1 + y^2/x^2) (adot^2/(2 x^2) + adot V1)
// where adot is a rational function of xi = y/x (bound here to y/x if the
// context declares the constant "xi").

inline Expression resolve_xi(const Expression &e) {
    auto ctx = e.ctx();
    if (!ctx->has_param("xi"))
        return e;
    Expression y_over_x = div(Expression::coordinate(ctx, 1), Expression::coordinate(ctx, 0));
    Bindings b;
    b.bind_constant("xi", y_over_x);
    return substitute(e, b);
}

// Parses a rational function of xi = y/x by rewriting the token "xi" to
// (y/x) before parsing, so denominators like xi^2 or 1+xi^2 land in the
// registered class (powers of x, y, x^2+y^2).
inline Expression parse_alpha_dot(const ContextPtr &ctx, std::string_view text) {
    std::string rewritten;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            std::string_view word = text.substr(start, i - start);
            if (word == "xi")
                rewritten += "(y/x)";
            else
                rewritten += std::string(word);
        } else {
            rewritten += text[i++];
        }
    }
    return parse_expr(rewritten, ctx);
}

inline std::pair<Expression, Expression> apply_gauge(const Expression &v0, const Expression &v1,
                                                     const Expression &alpha_dot_in) {
    auto ctx = v0.ctx();
    if (ctx->mode != Mode::planar)
        throw Error("gauge transformations act on planar potentials");
    Expression adot = resolve_xi(alpha_dot_in);
    Expression x2 = pow(Expression::coordinate(ctx, 0), 2);
    Expression inv_x2 = div(Expression::one(ctx), x2);
    Expression y2 = pow(Expression::coordinate(ctx, 1), 2);
    Expression v1t = v1 + adot * inv_x2;
    Expression v0t = v0 + (Expression::one(ctx) + y2 * inv_x2) *
                              (GaussianRational::of(1, 2) * adot * adot * inv_x2 + adot * v1);
    return {v0t, v1t};
}

// V0 - (1/2)(x^2+y^2) V1^2, unchanged under the gauge action.
inline Expression gauge_invariant(const Expression &v0, const Expression &v1) {
    Expression u = Expression::radius_squared(v0.ctx());
    return v0 - GaussianRational::of(1, 2) * u * v1 * v1;
}

}  // namespace spinorbit
