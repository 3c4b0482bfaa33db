#pragma once

#include <algorithm>

#include "spinorbit/liealg.hpp"

namespace spinorbit {

enum class Stage : uint8_t { second = 2, first = 1, zeroth = 0 };

inline const char *stage_name(Stage s) {
    switch (s) {
    case Stage::second:
        return "second";
    case Stage::first:
        return "first";
    default:
        return "zeroth";
    }
}

// One determining equation: a differential polynomial that must vanish,
// keyed by its origin (sigma component, derivative monomial) and by which
// real/imaginary part of the extracted coefficient it is. The clearing
// multiplier records any denominator removed from the raw coefficient.
struct DetEquation {
    int sigma = 0;
    DerivIndex beta{0, 0, 0};
    std::string flavor;  // "re" or "im"
    Expression lhs;      // normalized: polynomial, unit leading coefficient
    Expression multiplier;

    std::string origin() const {
        return "sigma" + std::to_string(sigma) + "/" + deriv_index_to_string(beta) + "/" + flavor;
    }
};

struct DeterminingSystem {
    Mode mode = Mode::planar;
    Stage stage = Stage::second;
    ContextPtr ctx;
    std::vector<DetEquation> equations;
    // 3D first stage: the A_i/B_i/C_i-dependent remainders of the sigma_i
    // coefficients. They vanish on every solution of the second-stage system
    // (checked on all catalog solutions) and are reported informationally.
    std::vector<DetEquation> consequence_block;
};

// Shared symbol universe for the determining computation in each mode.
// The planar ansatz is diagonal, so only A_mu, B_mu, phi_mu with mu in {0,1}
// occur; spatially the full sigma expansion appears. V0r/V1r are spare
// radial jets used when specializing to radial potentials.
inline std::vector<JetDecl> determining_jets(Mode mode) {
    std::vector<JetDecl> jets;
    if (mode == Mode::planar) {
        std::array<bool, 3> xy{true, true, false};
        for (const char *n : {"A0", "A1", "B0", "B1", "phi0", "phi1", "V0", "V1"})
            jets.push_back(JetDecl::free(n, xy));
        // spare formal potentials for specializations: radial and x-only
        jets.push_back(JetDecl::radial("V0r"));
        jets.push_back(JetDecl::radial("V1r"));
        jets.push_back(JetDecl::free("V1c", {true, false, false}));
        jets.push_back(JetDecl::free("Fc", {true, false, false}));
        jets.push_back(JetDecl::antiderivative("Wc", "V1c"));
    } else {
        std::array<bool, 3> xyz{true, true, true};
        for (const char *n : {"A0", "B0", "C0", "phi0", "A1", "A2", "A3", "B1", "B2", "B3",
                              "C1", "C2", "C3", "phi1", "phi2", "phi3", "V0", "V1"})
            jets.push_back(JetDecl::free(n, xyz));
        jets.push_back(JetDecl::radial("V0r"));
        jets.push_back(JetDecl::radial("V1r"));
    }
    return jets;
}

inline std::vector<std::string> determining_parameters(Mode mode) {
    if (mode == Mode::planar)
        return {"omega0", "omega1", "a0", "a1", "b0", "b1"};
    return {"a1", "a2", "a3", "b1", "b2", "b3", "w"};
}

inline ContextPtr determining_context(Mode mode) {
    static const ContextPtr planar =
        make_context(Mode::planar, determining_parameters(Mode::planar),
                     determining_jets(Mode::planar));
    static const ContextPtr spatial =
        make_context(Mode::spatial, determining_parameters(Mode::spatial),
                     determining_jets(Mode::spatial));
    return mode == Mode::planar ? planar : spatial;
}

// General first-order integral ansatz in symmetrized form.
inline PauliOperator determining_ansatz(const ContextPtr &ctx, Mode mode) {
    auto jet = [&](const std::string &n) { return Expression::jet(ctx, n); };
    if (mode == Mode::planar) {
        PauliOperator x(ctx);
        ScalarDiffOp p1 = momentum(ctx, 0), p2 = momentum(ctx, 1);
        for (int mu : {0, 1}) {
            std::string s = std::to_string(mu);
            ScalarDiffOp part = symmetrize(jet("A" + s), p1) + symmetrize(jet("B" + s), p2) +
                                ScalarDiffOp::mult(jet("phi" + s));
            x.set_component(mu == 0 ? 0 : 3, part);
        }
        return x;
    }
    PauliOperator x(ctx);
    const char *cols[3] = {"A", "B", "C"};
    for (int mu = 0; mu < 4; ++mu) {
        std::string s = std::to_string(mu);
        ScalarDiffOp part = ScalarDiffOp::mult(jet("phi" + s));
        for (int k = 0; k < 3; ++k)
            part = part + symmetrize(jet(cols[k] + s), momentum(ctx, k));
        x.set_component(mu, part);
    }
    return x;
}

inline PauliOperator determining_hamiltonian(const ContextPtr &ctx, Mode mode) {
    Expression v0 = Expression::jet(ctx, "V0"), v1 = Expression::jet(ctx, "V1");
    return mode == Mode::planar ? build_hamiltonian_2d(ctx, v0, v1)
                                : build_hamiltonian_3d(ctx, v0, v1);
}

namespace detail {

// The translation/rotation solution of the planar and spatial second-order
// blocks, substituted when generating the later stages.
inline Bindings stage_substitution(const ContextPtr &ctx, Mode mode) {
    Bindings b;
    auto par = [&](const std::string &n) { return Expression::parameter(ctx, n); };
    Expression x = Expression::coordinate(ctx, 0);
    Expression y = Expression::coordinate(ctx, 1);
    if (mode == Mode::planar) {
        for (int mu : {0, 1}) {
            std::string s = std::to_string(mu);
            b.bind_function("A" + s, par("omega" + s) * y + par("a" + s));
            b.bind_function("B" + s, -(par("omega" + s) * x) + par("b" + s));
        }
        return b;
    }
    Expression z = Expression::coordinate(ctx, 2);
    b.bind_function("A0", par("b1") - par("a3") * y + par("a2") * z);
    b.bind_function("B0", par("b2") + par("a3") * x - par("a1") * z);
    b.bind_function("C0", par("b3") - par("a2") * x + par("a1") * y);
    return b;
}

struct RawCoefficient {
    int sigma;
    DerivIndex beta;
    Expression value;
};

inline std::vector<RawCoefficient> extract_coefficients(const PauliOperator &k, int order) {
    std::vector<RawCoefficient> out;
    for (int mu = 0; mu < 4; ++mu)
        for (const auto &[d, c] : k.component(mu).terms())
            if (deriv_order(d) == order)
                out.push_back({mu, d, c});
    return out;
}

inline bool monomial_mentions(const Monomial &m, const std::set<std::string> &bases) {
    for (const auto &[s, e] : m.factors)
        if (s.is_jet() && bases.count(s.name))
            return true;
    return false;
}

// Solves each first-stage planar equation for its unique first-derivative
// phi jet; the zeroth stage rewrites higher phi derivatives through these.
inline std::map<Symbol, Expression> phi_gradient_rules(const DeterminingSystem &first_stage) {
    std::map<Symbol, Expression> rules;
    for (const auto &eq : first_stage.equations) {
        const Symbol *grad = nullptr;
        GaussianRational coeff;
        bool bad = false;
        for (const auto &[m, c] : eq.lhs.num()) {
            for (const auto &[s, e] : m.factors) {
                if (s.is_jet() && (s.name == "phi0" || s.name == "phi1") &&
                    s.derivative_order() >= 1) {
                    if (s.derivative_order() != 1 || e != 1 || m.factors.size() != 1) {
                        bad = true;
                        break;
                    }
                    if (grad && !(*grad == s)) {
                        bad = true;
                        break;
                    }
                    grad = &m.factors[0].first;
                    coeff = c;
                }
            }
            if (bad)
                break;
        }
        if (bad || !grad)
            throw EngineError("first-stage equation is not solvable for a phi gradient: " +
                              to_string(eq.lhs));
        Symbol key = *grad;
        Expression rest =
            eq.lhs - Expression::make(eq.lhs.ctx(), poly_scale(poly_symbol(key), coeff));
        rules.emplace(key, Expression::scalar(eq.lhs.ctx(), -GaussianRational::one() / coeff) *
                               rest);
    }
    if (rules.size() != 4)
        throw EngineError("expected exactly four phi gradient rules");
    return rules;
}

inline Expression reduce_phi_derivatives(const Expression &e,
                                         const std::map<Symbol, Expression> &rules) {
    return rewrite_jets(e, [&](const Symbol &s) -> std::optional<Expression> {
        if (!(s.name == "phi0" || s.name == "phi1") || s.derivative_order() < 2)
            return std::nullopt;
        int axis = s.alpha[0] ? 0 : s.alpha[1] ? 1 : 2;
        Symbol base = s;
        base.alpha = {0, 0, 0};
        base.alpha[axis] = 1;
        auto it = rules.find(base);
        if (it == rules.end())
            throw EngineError("missing phi gradient rule for " + base.display());
        Expression v = it->second;
        Symbol remaining = s;
        remaining.alpha[axis] = static_cast<uint8_t>(remaining.alpha[axis] - 1);
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < remaining.alpha[a]; ++k)
                v = differentiate(v, a);
        return v;
    });
}

inline DetEquation normalize_equation(int sigma, const DerivIndex &beta, std::string flavor,
                                      const Expression &poly_part) {
    DetEquation eq;
    eq.sigma = sigma;
    eq.beta = beta;
    eq.flavor = std::move(flavor);
    auto ctx = poly_part.ctx();
    // clear the denominator, record the multiplier
    eq.multiplier = Expression::make(ctx, den_to_poly(*ctx, poly_part.den()));
    Expression cleared = Expression::make(ctx, poly_part.num());
    auto [lm, lc] = poly_leading(cleared.num());
    eq.lhs = Expression::scalar(ctx, GaussianRational::one() / lc) * cleared;
    return eq;
}

}  // namespace detail

// Expands [H, X] with the general ansatz, collects the coefficient of every
// (sigma_mu, momentum monomial) pair at the requested order, applies the
// staged substitutions, splits real and imaginary parts, and returns the
// deduplicated system.
inline DeterminingSystem generate(Mode mode, Stage stage, ContextPtr custom_ctx = nullptr) {
    ContextPtr ctx = custom_ctx ? custom_ctx : determining_context(mode);
    PauliOperator h = determining_hamiltonian(ctx, mode);
    PauliOperator x = determining_ansatz(ctx, mode);
    PauliOperator k = commutator(h, x);
    if (mode == Mode::planar && !k.is_diagonal())
        throw EngineError("planar commutator left the diagonal subalgebra");

    int order = static_cast<int>(stage);
    auto raw = detail::extract_coefficients(k, order);

    bool substitute_killing = (mode == Mode::spatial) || (stage != Stage::second);
    Bindings killing = detail::stage_substitution(ctx, mode);
    if (substitute_killing)
        for (auto &rc : raw)
            rc.value = substitute(rc.value, killing);

    DeterminingSystem sys;
    sys.mode = mode;
    sys.stage = stage;
    sys.ctx = ctx;

    std::map<Symbol, Expression> phi_rules;
    if (mode == Mode::planar && stage == Stage::zeroth)
        phi_rules = detail::phi_gradient_rules(generate(Mode::planar, Stage::first, custom_ctx));

    const std::set<std::string> spatial_vector_jets = {"A1", "A2", "A3", "B1", "B2",
                                                       "B3", "C1", "C2", "C3"};

    std::map<const std::vector<DetEquation> *, std::set<std::string>> seen;
    auto emit = [&](std::vector<DetEquation> &dst, int sigma, const DerivIndex &beta,
                    const std::string &flavor, const Expression &part) {
        if (part.is_zero())
            return;
        DetEquation eq = detail::normalize_equation(sigma, beta, flavor, part);
        if (!seen[&dst].insert(to_string(eq.lhs)).second)
            return;
        dst.push_back(std::move(eq));
    };

    for (auto &rc : raw) {
        Expression value = rc.value;
        if (mode == Mode::planar && stage == Stage::zeroth)
            value = detail::reduce_phi_derivatives(value, phi_rules);

        std::vector<DetEquation> *dst = &sys.equations;
        if (mode == Mode::spatial && stage == Stage::first && rc.sigma != 0) {
            auto [consequence, kept] = split_monomials(value, [&](const Monomial &m) {
                return detail::monomial_mentions(m, spatial_vector_jets);
            });
            if (!consequence.is_zero()) {
                auto [cre, cim] = re_im(consequence);
                emit(sys.consequence_block, rc.sigma, rc.beta, "re", cre);
                emit(sys.consequence_block, rc.sigma, rc.beta, "im", cim);
            }
            value = kept;
        }
        auto [vre, vim] = re_im(value);
        emit(*dst, rc.sigma, rc.beta, "re", vre);
        emit(*dst, rc.sigma, rc.beta, "im", vim);
    }

    auto order_key = [](const DetEquation &e) {
        return std::make_tuple(e.sigma, e.beta, e.flavor);
    };
    auto by_key = [&](const DetEquation &a, const DetEquation &b) {
        return order_key(a) < order_key(b);
    };
    std::sort(sys.equations.begin(), sys.equations.end(), by_key);
    std::sort(sys.consequence_block.begin(), sys.consequence_block.end(), by_key);
    return sys;
}

inline std::vector<DeterminingSystem> generate_all(Mode mode) {
    return {generate(mode, Stage::second), generate(mode, Stage::first),
            generate(mode, Stage::zeroth)};
}

// ---- solution checking ----------------------------------------------------

struct SolutionVerdict {
    size_t index;
    std::string origin;
    bool zero;
    std::string residual;
};

struct SolutionReport {
    std::vector<SolutionVerdict> verdicts;
    bool all_zero = true;
    size_t nonzero_count = 0;
};

// Substitutes the bindings into every equation and reports which normalize
// to zero. Jets without a binding stay formal.
inline SolutionReport check_solution(const DeterminingSystem &sys, const Bindings &b) {
    SolutionReport rep;
    for (size_t i = 0; i < sys.equations.size(); ++i) {
        Expression r = substitute(sys.equations[i].lhs, b);
        bool zero = r.is_zero();
        rep.verdicts.push_back({i, sys.equations[i].origin(), zero,
                                zero ? std::string() : to_string(r)});
        if (!zero) {
            rep.all_zero = false;
            ++rep.nonzero_count;
        }
    }
    return rep;
}

// The one-constant solution of the spatial second-order block, valid for
// every V1.
inline Bindings universal_rotation_solution(const ContextPtr &ctx) {
    Expression w = Expression::parameter(ctx, "w");
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1),
               z = Expression::coordinate(ctx, 2);
    Bindings b;
    b.bind_function("A1", Expression::zero(ctx));
    b.bind_function("A2", z * w);
    b.bind_function("A3", -(y * w));
    b.bind_function("B1", -(z * w));
    b.bind_function("B2", Expression::zero(ctx));
    b.bind_function("B3", x * w);
    b.bind_function("C1", y * w);
    b.bind_function("C2", -(x * w));
    b.bind_function("C3", Expression::zero(ctx));
    return b;
}

// ---- matching against the transcribed printed systems ---------------------

struct MatchReport {
    bool bijection = false;
    bool span_equal = false;
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<size_t> unmatched_generated;
    std::vector<size_t> unmatched_reference;
    std::vector<std::string> notes;

    bool ok() const { return bijection || span_equal; }
};

namespace detail {

inline Expression monic_poly(const Expression &e) {
    Expression cleared = Expression::make(e.ctx(), e.num());
    if (cleared.is_zero())
        return cleared;
    auto [lm, lc] = poly_leading(cleared.num());
    return Expression::scalar(e.ctx(), GaussianRational::one() / lc) * cleared;
}

// every target representable as a scalar combination of the basis
inline bool spans(const std::vector<Expression> &basis, const std::vector<Expression> &targets,
                  std::vector<std::string> &notes, const std::string &side) {
    std::map<Monomial, size_t> row_of;
    auto row_index = [&](const Monomial &m) {
        auto it = row_of.find(m);
        if (it != row_of.end())
            return it->second;
        size_t idx = row_of.size();
        row_of.emplace(m, idx);
        return idx;
    };
    for (const auto &e : basis)
        for (const auto &[m, c] : e.num())
            row_index(m);
    for (const auto &e : targets)
        for (const auto &[m, c] : e.num())
            row_index(m);
    bool all = true;
    for (size_t t = 0; t < targets.size(); ++t) {
        Mat a(row_of.size(), Vec(basis.size(), GaussianRational::zero()));
        Vec b(row_of.size(), GaussianRational::zero());
        for (size_t k = 0; k < basis.size(); ++k)
            for (const auto &[m, c] : basis[k].num())
                a[row_index(m)][k] = c;
        for (const auto &[m, c] : targets[t].num())
            b[row_index(m)] = c;
        LinearSolution sol = solve_linear(std::move(a), std::move(b));
        if (!sol.consistent) {
            notes.push_back(side + " #" + std::to_string(t) + " is outside the other side's span");
            all = false;
        } else {
            size_t used = 0;
            for (const auto &c : sol.solution)
                if (!c.is_zero())
                    ++used;
            if (used > 1)
                notes.push_back(side + " #" + std::to_string(t) + " required a combination of " +
                                std::to_string(used) + " equations");
        }
    }
    return all;
}

}  // namespace detail

// Attempts a bijection up to nonzero scalar multiples (both sides normalized
// to unit leading coefficient); on failure falls back to comparing linear
// spans over the scalar field and reports the equations needing combination.
inline MatchReport match_reference(const DeterminingSystem &sys,
                               const std::vector<Expression> &reference) {
    MatchReport rep;
    std::map<std::string, std::vector<size_t>> ref_index;
    std::vector<Expression> ref_norm;
    for (size_t j = 0; j < reference.size(); ++j) {
        ref_norm.push_back(detail::monic_poly(reference[j]));
        ref_index[to_string(ref_norm.back())].push_back(j);
    }
    std::vector<bool> ref_used(reference.size(), false);
    for (size_t i = 0; i < sys.equations.size(); ++i) {
        std::string key = to_string(sys.equations[i].lhs);
        auto it = ref_index.find(key);
        bool matched = false;
        if (it != ref_index.end()) {
            for (size_t j : it->second) {
                if (!ref_used[j]) {
                    ref_used[j] = true;
                    rep.pairs.push_back({i, j});
                    matched = true;
                    break;
                }
            }
        }
        if (!matched)
            rep.unmatched_generated.push_back(i);
    }
    for (size_t j = 0; j < reference.size(); ++j)
        if (!ref_used[j])
            rep.unmatched_reference.push_back(j);
    rep.bijection = rep.unmatched_generated.empty() && rep.unmatched_reference.empty();
    if (rep.bijection) {
        rep.span_equal = true;
        return rep;
    }
    std::vector<Expression> gen_norm;
    for (const auto &eq : sys.equations)
        gen_norm.push_back(eq.lhs);
    bool fwd = detail::spans(ref_norm, gen_norm, rep.notes, "generated");
    bool bwd = detail::spans(gen_norm, ref_norm, rep.notes, "reference");
    rep.span_equal = fwd && bwd;
    return rep;
}

// ---- solvability specializations (spatial first stage) --------------------

// phi bindings read off the modified-momentum integrals: the sigma_l
// coefficient of sum_i b_i Pi_i is -(1/r^2) eps_{ikl} b_i x_k.
inline Bindings momentum_family_bindings(const ContextPtr &ctx, const Expression &v1_value) {
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1),
               z = Expression::coordinate(ctx, 2);
    Expression inv_r2 = div(Expression::one(ctx), Expression::radius_squared(ctx));
    auto par = [&](const std::string &n) { return Expression::parameter(ctx, n); };
    Bindings b;
    b.bind_function("V1", v1_value);
    b.bind_function("phi1", (par("b3") * y - par("b2") * z) * inv_r2);
    b.bind_function("phi2", (par("b1") * z - par("b3") * x) * inv_r2);
    b.bind_function("phi3", (par("b2") * x - par("b1") * y) * inv_r2);
    b.bind_function("phi0", Expression::zero(ctx));
    for (const char *n : {"A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3"})
        b.bind_function(n, Expression::zero(ctx));
    for (const char *n : {"a1", "a2", "a3"})
        b.bind_constant(n, Expression::zero(ctx));
    return b;
}

// phi bindings of the rotational family J_i: phi_i = a_i/2, V1 radial.
inline Bindings rotation_family_bindings(const ContextPtr &ctx) {
    auto par = [&](const std::string &n) { return Expression::parameter(ctx, n); };
    Bindings b;
    b.bind_function("V1", Expression::jet(ctx, "V1r"));
    for (int i = 1; i <= 3; ++i)
        b.bind_function("phi" + std::to_string(i),
                        GaussianRational::of(1, 2) * par("a" + std::to_string(i)));
    b.bind_function("phi0", Expression::zero(ctx));
    for (const char *n : {"A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3"})
        b.bind_function(n, Expression::zero(ctx));
    for (const char *n : {"b1", "b2", "b3"})
        b.bind_constant(n, Expression::zero(ctx));
    return b;
}

// The two solvability claims for the spatial first-order system, checked as
// consistency statements: (1) with the b_i formal, V1 = 1/r^2 admits the
// momentum-family phis; (2) with b_i = 0 and V1 an arbitrary radial jet the
// rotation-family phis solve the system.
inline std::vector<CheckItem> specialize_conditions(const DeterminingSystem &first_stage) {
    if (first_stage.mode != Mode::spatial || first_stage.stage != Stage::first)
        throw Error("specialization checks apply to the spatial first-order system");
    const ContextPtr &ctx = first_stage.ctx;
    std::vector<CheckItem> items;
    {
        Expression inv_r2 = div(Expression::one(ctx), Expression::radius_squared(ctx));
        SolutionReport r = check_solution(first_stage, momentum_family_bindings(ctx, inv_r2));
        items.push_back({"b-family with V1 = 1/r^2", r.all_zero,
                         r.all_zero ? ""
                                    : std::to_string(r.nonzero_count) + " nonzero residuals"});
    }
    {
        SolutionReport r = check_solution(first_stage, rotation_family_bindings(ctx));
        items.push_back({"rotational family with radial V1", r.all_zero,
                         r.all_zero ? ""
                                    : std::to_string(r.nonzero_count) + " nonzero residuals"});
    }
    return items;
}

}  // namespace spinorbit
