#include <catch2/catch.hpp>

#include "spinorbit/reference_systems.hpp"

using namespace spinorbit;

namespace {

size_t count(Mode m, Stage s) { return generate(m, s).equations.size(); }

// Ansatz values of each cataloged integral: jet values for the second stage
// plus the matching constants for the later stages, so one Bindings object
// zeroes every stage.
std::vector<Bindings> planar_catalog_bindings(const std::string &id) {
    ContextPtr ctx = determining_context(Mode::planar);
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1);
    Expression zero = Expression::zero(ctx), one = Expression::one(ctx);
    auto par = [&](const char *n) { return Expression::parameter(ctx, n); };

    // (A0, B0, phi0, A1, B1, phi1, omega0, a0, b0, omega1, a1, b1, V0, V1)
    auto pack = [&](Expression a0, Expression b0, Expression f0, Expression a1, Expression b1,
                    Expression f1, Expression w0, Expression c0, Expression d0, Expression w1,
                    Expression c1, Expression d1, Expression v0, Expression v1) {
        Bindings b;
        b.bind_function("A0", a0).bind_function("B0", b0).bind_function("phi0", f0);
        b.bind_function("A1", a1).bind_function("B1", b1).bind_function("phi1", f1);
        b.bind_constant("omega0", w0).bind_constant("a0", c0).bind_constant("b0", d0);
        b.bind_constant("omega1", w1).bind_constant("a1", c1).bind_constant("b1", d1);
        b.bind_function("V0", v0).bind_function("V1", v1);
        return b;
    };

    std::vector<Bindings> out;
    if (id == "2d-superintegrable") {
        Expression g = parse_expr("7/3", ctx);  // any fixed rational coupling
        Expression v0 = GaussianRational::of(1, 2) * g * g * Expression::radius_squared(ctx);
        // L+- : L3 (I +- sigma3), A = -y, B = x
        out.push_back(pack(-y, x, zero, -y, x, zero, -one, zero, zero, -one, zero, zero, v0, g));
        out.push_back(pack(-y, x, zero, y, -x, zero, -one, zero, zero, one, zero, zero, v0, g));
        // X+- : (i dx -+ gamma y)(I +- sigma3)
        out.push_back(pack(-one, zero, -(g * y), -one, zero, -(g * y), zero, -one, zero, zero,
                           -one, zero, v0, g));
        out.push_back(pack(-one, zero, g * y, one, zero, -(g * y), zero, -one, zero, zero, one,
                           zero, v0, g));
        // Y+- : (i dy +- gamma x)(I +- sigma3)
        out.push_back(pack(zero, -one, g * x, zero, -one, g * x, zero, zero, -one, zero, zero,
                           -one, v0, g));
        out.push_back(pack(zero, -one, -(g * x), zero, one, g * x, zero, zero, -one, zero, zero,
                           one, v0, g));
        // I+- : I +- sigma3
        out.push_back(pack(zero, zero, one, zero, zero, one, zero, zero, zero, zero, zero, zero,
                           v0, g));
        out.push_back(pack(zero, zero, one, zero, zero, -one, zero, zero, zero, zero, zero, zero,
                           v0, g));
    } else if (id == "2d-radial") {
        // X = (w0 + w1 sigma3) L3 with formal radial potentials; the family
        // constants stay formal through omega0/omega1.
        Bindings b;
        b.bind_function("A0", -(par("omega0") * y)).bind_function("B0", par("omega0") * x);
        b.bind_function("A1", -(par("omega1") * y)).bind_function("B1", par("omega1") * x);
        b.bind_function("phi0", zero).bind_function("phi1", zero);
        b.bind_constant("omega0", -par("omega0")).bind_constant("omega1", -par("omega1"));
        b.bind_constant("a0", zero).bind_constant("b0", zero);
        b.bind_constant("a1", zero).bind_constant("b1", zero);
        b.bind_function("V0", Expression::jet(ctx, "V0r"));
        b.bind_function("V1", Expression::jet(ctx, "V1r"));
        out.push_back(std::move(b));
    } else if (id == "2d-cartesian") {
        // X = -i dy - sigma3 W with V0 = y^2/2 V1^2 + F
        Expression v1 = Expression::jet(ctx, "V1c");
        Bindings b;
        b.bind_function("A0", zero).bind_function("B0", one).bind_function("phi0", zero);
        b.bind_function("A1", zero).bind_function("B1", zero);
        b.bind_function("phi1", -Expression::jet(ctx, "Wc"));
        b.bind_constant("omega0", zero).bind_constant("a0", zero).bind_constant("b0", one);
        b.bind_constant("omega1", zero).bind_constant("a1", zero).bind_constant("b1", zero);
        b.bind_function("V0", GaussianRational::of(1, 2) * y * y * v1 * v1 +
                                  Expression::jet(ctx, "Fc"));
        b.bind_function("V1", v1);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Bindings> spatial_catalog_bindings(const std::string &id) {
    ContextPtr ctx = determining_context(Mode::spatial);
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1),
               z = Expression::coordinate(ctx, 2);
    Expression zero = Expression::zero(ctx);
    Expression inv_r2 = div(Expression::one(ctx), Expression::radius_squared(ctx));
    Expression half = Expression::rational(ctx, 1, 2);

    Expression v0_value = inv_r2, v1_value = inv_r2;
    if (id == "3d-spherical") {
        v0_value = Expression::jet(ctx, "V0r");
        v1_value = Expression::jet(ctx, "V1r");
    }

    auto base = [&]() {
        Bindings b;
        for (const char *n : {"A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3"})
            b.bind_function(n, zero);
        b.bind_function("phi0", zero);
        b.bind_function("V0", v0_value);
        b.bind_function("V1", v1_value);
        for (const char *n : {"a1", "a2", "a3", "b1", "b2", "b3"})
            b.bind_constant(n, zero);
        return b;
    };
    auto set_const = [&](Bindings &b, const std::string &n, Expression v) {
        b.constants.erase(n);
        b.bind_constant(n, std::move(v));
    };
    auto set_fn = [&](Bindings &b, const std::string &n, Expression v) {
        b.functions.erase(n);
        b.bind_function(n, std::move(v));
    };

    std::vector<Bindings> out;
    // J_i = L_i + sigma_i/2 : rotation constants a_i = 1, phi_i = 1/2
    for (int i = 1; i <= 3; ++i) {
        Bindings b = base();
        set_const(b, "a" + std::to_string(i), Expression::one(ctx));
        for (int k = 1; k <= 3; ++k)
            set_fn(b, "phi" + std::to_string(k), k == i ? half : zero);
        out.push_back(std::move(b));
    }
    // Pi_i = p_i - V1 eps_{ikl} x_k sigma_l : translation constants b_i = 1
    std::array<Expression, 3> coord = {x, y, z};
    for (int i = 1; i <= 3; ++i) {
        Bindings b = base();
        set_const(b, "b" + std::to_string(i), Expression::one(ctx));
        for (int l = 1; l <= 3; ++l) {
            Expression phi = zero;
            for (int k = 0; k < 3; ++k) {
                int e = epsilon3(i - 1, k, l - 1);
                if (e)
                    phi = phi - GaussianRational::of(e) * v1_value * coord[k];
            }
            set_fn(b, "phi" + std::to_string(l), phi);
        }
        out.push_back(std::move(b));
    }
    if (id == "3d-spherical")
        return {out[0], out[1], out[2]};  // only the rotational integrals
    // S_i = -sigma_i/2 + (x_i/r^2)(r.sigma)
    for (int i = 1; i <= 3; ++i) {
        Bindings b = base();
        for (int l = 1; l <= 3; ++l) {
            Expression phi = coord[i - 1] * coord[l - 1] * inv_r2;
            if (l == i)
                phi = phi - half;
            set_fn(b, "phi" + std::to_string(l), phi);
        }
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace

TEST_CASE("stage counts match the known tallies", "[determining]") {
    CHECK(count(Mode::planar, Stage::second) == 6);
    CHECK(count(Mode::planar, Stage::first) == 4);
    CHECK(count(Mode::planar, Stage::zeroth) == 2);
    CHECK(count(Mode::spatial, Stage::second) == 18);
    CHECK(count(Mode::spatial, Stage::first) == 12);
    CHECK(count(Mode::spatial, Stage::zeroth) == 8);
}

TEST_CASE("planar second stage is the flat killing system", "[determining]") {
    DeterminingSystem sys = generate(Mode::planar, Stage::second);
    ContextPtr ctx = sys.ctx;
    bool found = false;
    for (const auto &eq : sys.equations) {
        CHECK((eq.sigma == 0 || eq.sigma == 3));
        if (eq.sigma == 0 && eq.beta == DerivIndex{1, 1, 0}) {
            found = true;
            Expression expected =
                differentiate(Expression::jet(ctx, "A0"), 1) +
                differentiate(Expression::jet(ctx, "B0"), 0);
            CHECK(eq.lhs == expected);
        }
        CHECK(eq.multiplier == Expression::one(ctx));
    }
    CHECK(found);
}

TEST_CASE("planar stages match the transcribed equations", "[determining]") {
    auto first = generate(Mode::planar, Stage::first);
    MatchReport m1 = match_reference(first, reference_block(Mode::planar, Stage::first));
    CHECK(m1.bijection);
    auto zeroth = generate(Mode::planar, Stage::zeroth);
    MatchReport m0 = match_reference(zeroth, reference_block(Mode::planar, Stage::zeroth));
    CHECK(m0.bijection);
}

TEST_CASE("spatial stages match the transcribed equations", "[determining]") {
    auto second = generate(Mode::spatial, Stage::second);
    MatchReport m2 = match_reference(second, reference_block(Mode::spatial, Stage::second));
    CHECK(m2.bijection);
    auto first = generate(Mode::spatial, Stage::first);
    CHECK(first.consequence_block.size() == 9);
    MatchReport m1 = match_reference(first, reference_block(Mode::spatial, Stage::first));
    CHECK(m1.bijection);
}

TEST_CASE("a damaged reference is reported as a span mismatch", "[determining]") {
    auto second = generate(Mode::spatial, Stage::second);
    auto refs = reference_block(Mode::spatial, Stage::second);
    refs.pop_back();
    MatchReport m = match_reference(second, refs);
    CHECK_FALSE(m.bijection);
    CHECK_FALSE(m.span_equal);
    CHECK(m.unmatched_generated.size() == 1);
    REQUIRE_FALSE(m.notes.empty());
}

TEST_CASE("universal rotation solution solves the 18 equations for any V1",
          "[determining]") {
    auto second = generate(Mode::spatial, Stage::second);
    SolutionReport rep = check_solution(second, universal_rotation_solution(second.ctx));
    CHECK(rep.all_zero);
    // the first-stage consequence parts lie in the ideal of the 18 equations,
    // so the same bindings kill them as well
    auto first = generate(Mode::spatial, Stage::first);
    DeterminingSystem cons = first;
    cons.equations = first.consequence_block;
    CHECK(check_solution(cons, universal_rotation_solution(first.ctx)).all_zero);
}

TEST_CASE("trivial and obstructed solutions of the 18 equations", "[determining]") {
    auto second = generate(Mode::spatial, Stage::second);
    ContextPtr ctx = second.ctx;
    Bindings zeros;
    for (const char *n : {"A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3"})
        zeros.bind_function(n, Expression::zero(ctx));
    CHECK(check_solution(second, zeros).all_zero);

    Bindings bad = zeros;
    bad.functions.erase("A1");
    bad.bind_function("A1", Expression::one(ctx));
    SolutionReport rep = check_solution(second, bad);
    CHECK_FALSE(rep.all_zero);
    // the obstruction shows up as the z A1 V1 term (here normalized monic)
    Expression z = Expression::coordinate(ctx, 2);
    bool seen = false;
    for (const auto &v : rep.verdicts)
        if (!v.zero && v.residual == to_string(z * Expression::jet(ctx, "V1")))
            seen = true;
    CHECK(seen);
}

TEST_CASE("solvability specializations", "[determining]") {
    auto first = generate(Mode::spatial, Stage::first);
    for (const auto &item : specialize_conditions(first)) {
        INFO(item.name << " " << item.detail);
        CHECK(item.pass);
    }
    // V1 = 1/r^4 obstructs the momentum family
    ContextPtr ctx = first.ctx;
    Expression r2 = Expression::radius_squared(ctx);
    Bindings bad = momentum_family_bindings(ctx, div(Expression::one(ctx), r2 * r2));
    SolutionReport rep = check_solution(first, bad);
    CHECK_FALSE(rep.all_zero);
    CHECK(rep.nonzero_count >= 1);
}

TEST_CASE("round trip: catalog solutions zero every stage", "[determining]") {
    for (const char *id : {"2d-superintegrable", "2d-radial", "2d-cartesian"}) {
        auto all = generate_all(Mode::planar);
        for (const Bindings &b : planar_catalog_bindings(id)) {
            for (const auto &sys : all) {
                SolutionReport rep = check_solution(sys, b);
                INFO(id << " stage " << stage_name(sys.stage));
                CHECK(rep.all_zero);
            }
        }
    }
    for (const char *id : {"3d-superintegrable", "3d-spherical"}) {
        auto all = generate_all(Mode::spatial);
        for (const Bindings &b : spatial_catalog_bindings(id)) {
            for (const auto &sys : all) {
                SolutionReport rep = check_solution(sys, b);
                INFO(id << " stage " << stage_name(sys.stage));
                CHECK(rep.all_zero);
            }
            // the split-off consequence parts vanish on true solutions too
            DeterminingSystem cons = all[1];
            cons.equations = all[1].consequence_block;
            CHECK(check_solution(cons, b).all_zero);
        }
    }
}

TEST_CASE("equations are distinct, nonzero, denominator-free", "[determining]") {
    for (Mode m : {Mode::planar, Mode::spatial}) {
        for (const auto &sys : generate_all(m)) {
            std::set<std::string> seen;
            for (const auto &eq : sys.equations) {
                CHECK_FALSE(eq.lhs.is_zero());
                CHECK(eq.lhs.den().empty());
                CHECK(eq.multiplier == Expression::one(sys.ctx));
                CHECK(seen.insert(to_string(eq.lhs)).second);
                auto [lm, lc] = poly_leading(eq.lhs.num());
                CHECK(lc == GaussianRational::one());
            }
        }
    }
}

TEST_CASE("generation is deterministic and declaration-order independent",
          "[determining]") {
    for (Mode m : {Mode::planar, Mode::spatial}) {
        auto a = generate(m, Stage::first);
        auto b = generate(m, Stage::first);
        REQUIRE(a.equations.size() == b.equations.size());
        for (size_t i = 0; i < a.equations.size(); ++i)
            CHECK(to_string(a.equations[i].lhs) == to_string(b.equations[i].lhs));
    }
    // same declarations in reversed order: identical canonical output
    auto jets = determining_jets(Mode::planar);
    std::reverse(jets.begin(), jets.end());
    auto params = determining_parameters(Mode::planar);
    std::reverse(params.begin(), params.end());
    ContextPtr permuted = make_context(Mode::planar, params, jets);
    auto a = generate(Mode::planar, Stage::first);
    auto b = generate(Mode::planar, Stage::first, permuted);
    REQUIRE(a.equations.size() == b.equations.size());
    for (size_t i = 0; i < a.equations.size(); ++i)
        CHECK(to_string(a.equations[i].lhs) == to_string(b.equations[i].lhs));
}
