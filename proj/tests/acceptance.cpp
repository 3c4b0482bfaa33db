// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Everything is exact arithmetic; the runtime targets are asserted too.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "spinorbit/spinorbit.hpp"

using namespace spinorbit;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string &)> body;
};

bool c1_planar_superintegrability(std::string &detail) {
    auto t0 = Clock::now();
    SystemSpec s = build_superintegrable_2d(BuildOptions{false, HbarMode::unit, "", ""});
    bool ok = true;
    size_t n = 0;
    for (const auto &[name, x] : s.integrals) {
        ok = ok && commutator(s.hamiltonian, x).is_zero();
        ++n;
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    detail = std::to_string(n) + "/8 commutators vanish with formal coupling, " +
             std::to_string(ms) + " ms";
    return ok && n == 8 && ms < 10000;
}

bool c2_spatial_superintegrability(std::string &detail) {
    auto t0 = Clock::now();
    SystemSpec s = build_superintegrable_3d(BuildOptions{false, HbarMode::unit, "", ""});
    bool ok = true;
    size_t n = 0;
    for (const auto &[name, x] : s.integrals) {
        ok = ok && commutator(s.hamiltonian, x).is_zero();
        ++n;
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    detail = std::to_string(n) + "/9 commutators vanish, " + std::to_string(ms) + " ms";
    return ok && n == 9 && ms < 60000;
}

bool c3_algebra_structure(std::string &detail) {
    SystemSpec s2 = build_superintegrable_2d();
    GeneratorSet g2 = generators_of(s2);
    StructureTable t2 = commutation_table(g2);
    bool ok = t2.closed() && jacobi_holds(t2);
    // direct sum: all cross brackets zero, the I's central
    RelationReport rel2 = verify_relations(t2, expected_relations_2d(s2));
    ok = ok && rel2.all_pass() && rel2.surplus.empty();
    // the central-extension cocycle [X+-, Y+-] = +-4 i gamma I+-
    Expression gamma = Expression::parameter(s2.ctx, "gamma");
    Decomposition dp = decompose(commutator(s2.integral("X+"), s2.integral("Y+")), g2);
    Decomposition dm = decompose(commutator(s2.integral("X-"), s2.integral("Y-")), g2);
    ok = ok && dp.in_span && dp.coefficients.size() == 1 &&
         dp.coefficients.at("I+") == GaussianRational::of(4) * GaussianRational::i() * gamma;
    ok = ok && dm.in_span && dm.coefficients.size() == 1 &&
         dm.coefficients.at("I-") == GaussianRational::of(-4) * GaussianRational::i() * gamma;

    SystemSpec s3 = build_superintegrable_3d();
    StructureTable t3 = commutation_table(generators_of(s3));
    bool ok3 = t3.closed() && jacobi_holds(t3);
    StructureTable ts = commutation_table(e3_o3_basis(s3));
    RelationReport rel3 = verify_relations(ts, expected_relations_3d(s3));
    ok3 = ok3 && ts.closed() && jacobi_holds(ts) && rel3.all_pass() && rel3.surplus.empty();
    detail = "planar table + relations + cocycle; spatial table + relation families; jacobi";
    return ok && ok3;
}

bool c4_casimir(std::string &detail) {
    auto items = casimir_check(build_superintegrable_2d());
    size_t pass = 0;
    for (const auto &i : items)
        if (i.pass)
            ++pass;
    detail = std::to_string(pass) + "/" + std::to_string(items.size()) +
             " bracket and reconstruction identities";
    return pass == items.size();
}

bool c5_determining(std::string &detail) {
    bool ok = true;
    ok = ok && generate(Mode::planar, Stage::second).equations.size() == 6;
    auto p1 = generate(Mode::planar, Stage::first);
    auto p0 = generate(Mode::planar, Stage::zeroth);
    ok = ok && p1.equations.size() == 4 && p0.equations.size() == 2;
    auto s2 = generate(Mode::spatial, Stage::second);
    auto s1 = generate(Mode::spatial, Stage::first);
    auto s0 = generate(Mode::spatial, Stage::zeroth);
    ok = ok && s2.equations.size() == 18 && s1.equations.size() == 12 &&
         s0.equations.size() == 8;
    size_t phi0_rows = 0;
    for (const auto &e : s1.equations)
        if (e.sigma == 0)
            ++phi0_rows;
    ok = ok && phi0_rows == 3;  // 12 = 9 (sigma block) + 3 (phi0 block)
    MatchReport m1 = match_reference(p1, reference_block(Mode::planar, Stage::first));
    MatchReport m0 = match_reference(p0, reference_block(Mode::planar, Stage::zeroth));
    MatchReport n2 = match_reference(s2, reference_block(Mode::spatial, Stage::second));
    MatchReport n1 = match_reference(s1, reference_block(Mode::spatial, Stage::first));
    ok = ok && m1.ok() && m0.ok() && n2.ok() && n1.ok();
    detail = std::string("counts 6+4+2 / 18+(9+3)+8; bijections: ") +
             (m1.bijection ? "y" : "n") + (m0.bijection ? "y" : "n") +
             (n2.bijection ? "y" : "n") + (n1.bijection ? "y" : "n");
    return ok;
}

bool c6_universal_solution(std::string &detail) {
    auto s2 = generate(Mode::spatial, Stage::second);
    SolutionReport rep = check_solution(s2, universal_rotation_solution(s2.ctx));
    detail = "one-constant rotation solution, V1 left formal: " +
             std::to_string(rep.verdicts.size() - rep.nonzero_count) + "/18 equations vanish";
    return rep.all_zero;
}

bool c7_integrable_families(std::string &detail) {
    bool ok = true;
    for (const char *id : {"2d-radial", "2d-cartesian", "3d-spherical"}) {
        SystemSpec s = build_system(id, BuildOptions{false, HbarMode::unit, "", ""});
        for (const auto &[name, x] : s.integrals)
            ok = ok && commutator(s.hamiltonian, x).is_zero();
    }
    detail = "radial, cartesian (with antiderivative), spherical: formal potentials";
    return ok;
}

bool c8_gauge(std::string &detail) {
    auto ctx = make_context(Mode::planar, {"c"}, {JetDecl::free("V0", {true, true, false}),
                                                  JetDecl::free("V1", {true, true, false})});
    Expression v0 = Expression::jet(ctx, "V0"), v1 = Expression::jet(ctx, "V1");
    Expression x2 = pow(Expression::coordinate(ctx, 0), 2);
    Expression y2 = pow(Expression::coordinate(ctx, 1), 2);
    // exact transformation law with a formal constant
    Expression c = Expression::parameter(ctx, "c");
    auto [v0c, v1c] = apply_gauge(v0, v1, c);
    bool ok = (v1c == v1 + div(c, x2)) &&
              (v0c == v0 + (Expression::one(ctx) + div(y2, x2)) *
                               (div(GaussianRational::of(1, 2) * c * c, x2) + c * v1));
    // invariance under 50 random rational alpha-dots, potentials formal
    Rng rng(20240008);
    int good = 0;
    for (int t = 0; t < 50; ++t) {
        Expression adot = random_alpha_dot(ctx, rng);
        auto [w0, w1] = apply_gauge(v0, v1, adot);
        if (gauge_invariant(w0, w1) == gauge_invariant(v0, v1))
            ++good;
    }
    ok = ok && good == 50;
    // the oscillator system sits on the zero level of the invariant
    SystemSpec s = build_superintegrable_2d();
    ok = ok && gauge_invariant(s.v0, s.v1).is_zero();
    detail = "exact law; invariant unchanged for " + std::to_string(good) +
             "/50 random gauges; oscillator invariant = 0";
    return ok;
}

bool c9_classical_limit(std::string &detail) {
    BuildOptions opts;
    opts.hbar = HbarMode::tracked;
    opts.verified = false;
    SystemSpec s3 = build_system("3d-superintegrable", opts);
    Expression hb = Expression::parameter(s3.ctx, "hbar");
    Expression inv_r2 = div(Expression::one(s3.ctx), Expression::radius_squared(s3.ctx));
    bool ok = (s3.v0 == hb * hb * inv_r2) && (s3.v1 == hb * inv_r2);
    Bindings limit;
    limit.bind_constant("hbar", Expression::zero(s3.ctx));
    ok = ok && substitute(s3.v0, limit).is_zero() && substitute(s3.v1, limit).is_zero();
    size_t vanishing = 0;
    for (const auto &[name, x] : s3.integrals)
        if (commutator(s3.hamiltonian, x).is_zero())
            ++vanishing;
    ok = ok && vanishing == 9;
    SystemSpec s2 = build_system("2d-superintegrable", opts);
    Bindings limit2;
    limit2.bind_constant("hbar", Expression::zero(s2.ctx));
    ok = ok && substitute(s2.v0, limit2) == s2.v0 && substitute(s2.v1, limit2) == s2.v1;
    detail = "V0 = hbar^2/r^2, V1 = hbar/r^2, vanish at hbar = 0; " +
             std::to_string(vanishing) + "/9 dressed commutators vanish; planar potentials hbar-free";
    return ok;
}

bool c10_independent_oracle(std::string &detail) {
    Rng rng(20240010);
    size_t pairs = 0, evals = 0;
    bool ok = true;
    for (const auto &id : system_ids()) {
        SystemSpec s = build_system(id);
        SystemSpec concrete = instantiate_random(s, rng);
        for (const auto &[name, x] : concrete.integrals) {
            ProbeResult r = numeric_probe(concrete, x, 20, 100, rng);
            ok = ok && r.ok;
            ++pairs;
            evals += r.evaluations;
        }
    }
    ProbeResult o2 = compose_apply_oracle(make_context(Mode::planar), rng, 100);
    ProbeResult o3 = compose_apply_oracle(make_context(Mode::spatial), rng, 100);
    ok = ok && o2.ok && o3.ok;
    detail = std::to_string(pairs) + " (H, X) pairs, 20 spinors x 100 points each (" +
             std::to_string(evals) + " evaluations); compose/apply agreement on 200 instances";
    return ok;
}

bool c11_sigma3_doubling(std::string &detail) {
    size_t doubled = 0;
    for (const char *id : {"2d-superintegrable", "2d-radial", "2d-cartesian"}) {
        SystemSpec s = build_system(id);
        PauliOperator s3 = PauliOperator::sigma(s.ctx, 3);
        for (const auto &[name, x] : s.integrals) {
            if (!commutator(s.hamiltonian, s3 * x).is_zero())
                return false;
            ++doubled;
        }
        if (!commutator(s.hamiltonian, s3).is_zero())
            return false;
    }
    detail = "sigma3 times each of the " + std::to_string(doubled) +
             " planar integrals is again an integral";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"planar superintegrability: [H, g] = 0 for the 8 generators", c1_planar_superintegrability},
        {"spatial superintegrability: [H, g] = 0 for the 9 generators", c2_spatial_superintegrability},
        {"algebra structure: closure, direct sums, cocycle, jacobi", c3_algebra_structure},
        {"casimir identities: [C, g] = 0 and H = (C+ + C-)/8", c4_casimir},
        {"determining systems: counts and transcription matches", c5_determining},
        {"universal solution of the 18 quasilinear equations", c6_universal_solution},
        {"integrable families commute with formal potentials", c7_integrable_families},
        {"gauge action: exact law and invariant", c8_gauge},
        {"classical limit of the tracked potentials", c9_classical_limit},
        {"independent oracle: pointwise probes and compose/apply", c10_independent_oracle},
        {"sigma3 doubling across the planar catalog", c11_sigma3_doubling},
    };

    int failures = 0;
    auto t0 = Clock::now();
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[i].body(detail);
        } catch (const std::exception &e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!pass)
            ++failures;
        std::printf("%s  criterion %02zu: %s%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.empty() ? "" : "  -- ", detail.c_str());
        std::fflush(stdout);
    }
    long total = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    std::printf("%d/%zu criteria passed in %ld ms\n", static_cast<int>(criteria.size()) - failures,
                criteria.size(), total);
    return failures == 0 ? 0 : 1;
}
