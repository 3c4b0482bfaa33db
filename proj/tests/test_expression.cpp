#include <catch2/catch.hpp>

#include "spinorbit/probe.hpp"

using namespace spinorbit;

namespace {

ContextPtr planar_ctx() {
    static ContextPtr ctx = make_context(
        Mode::planar, {"gamma"},
        {JetDecl::free("V1", {true, true, false}), JetDecl::radial("f"),
         JetDecl::free("g", {true, false, false}), JetDecl::antiderivative("W", "g")});
    return ctx;
}

ContextPtr spatial_ctx() {
    static ContextPtr ctx =
        make_context(Mode::spatial, {"hbar", "gamma"}, {JetDecl::free("V1", {true, true, true})});
    return ctx;
}

}  // namespace

TEST_CASE("ring operations and canonical zero", "[expression]") {
    auto ctx = planar_ctx();
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1);
    CHECK(to_string((x + y) * (x - y)) == "x^2 - y^2");
    Expression u = Expression::radius_squared(ctx);
    CHECK(u * div(Expression::one(ctx), u) == Expression::one(ctx));
    Expression g = Expression::parameter(ctx, "gamma");
    Expression ix = Expression::imaginary_unit(ctx) * x;
    CHECK((g * ix + g * (-ix)).is_zero());
}

TEST_CASE("ring axioms on random expressions", "[expression]") {
    auto ctx = planar_ctx();
    Rng rng(7);
    for (int t = 0; t < 60; ++t) {
        Expression a = random_polynomial(ctx, rng, 3, true, true);
        Expression b = random_polynomial(ctx, rng, 3, true, true);
        Expression c = random_polynomial(ctx, rng, 3, true, true);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("exact division rules", "[expression]") {
    auto ctx = planar_ctx();
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1);
    // registered-base reciprocal
    Expression e = div(Expression::one(ctx), x * x * (x * x + y * y));
    CHECK(to_string(e) == "1/(x^2*(x^2 + y^2))");
    // exact polynomial factor
    CHECK(div((x + y) * (x - y), x + y) == x - y);
    // neither registered nor a factor
    CHECK_THROWS_AS(div(Expression::one(ctx), x + Expression::one(ctx)), DivisionError);
    CHECK_THROWS_AS(div(x, Expression::parameter(ctx, "gamma")), DivisionError);
    CHECK_THROWS_AS(div(x, Expression::zero(ctx)), DivisionError);
}

TEST_CASE("differentiation of polynomials and jets", "[expression]") {
    auto ctx = planar_ctx();
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1);
    CHECK(to_string(differentiate(x * x * y, 0)) == "2*x*y");
    Expression v1 = Expression::jet(ctx, "V1");
    CHECK(to_string(differentiate(v1, 0)) == "V1_x");
    Expression f = Expression::jet(ctx, "f");
    CHECK(differentiate(f, 1) == 2 * y * Expression::symbol(ctx, Symbol::radial_jet("f", 1)));
    // antiderivative: d/dx W = g, d/dy W = 0
    Expression w = Expression::jet(ctx, "W");
    CHECK(differentiate(w, 0) == Expression::jet(ctx, "g"));
    CHECK(differentiate(w, 1).is_zero());
    // quotient rule through registered denominators
    Expression inv_u = div(Expression::one(ctx), Expression::radius_squared(ctx));
    Expression d = differentiate(inv_u, 0);
    Expression u = Expression::radius_squared(ctx);
    CHECK(d == div(-(2 * x), u * u));
}

TEST_CASE("derivative properties: commuting partials and Leibniz", "[expression]") {
    auto ctx = planar_ctx();
    Rng rng(11);
    Expression jets = Expression::jet(ctx, "V1") * Expression::jet(ctx, "f") +
                      Expression::jet(ctx, "W");
    for (int t = 0; t < 40; ++t) {
        Expression a = random_polynomial(ctx, rng, 3) * jets + random_polynomial(ctx, rng, 2);
        Expression b = random_polynomial(ctx, rng, 2);
        CHECK(differentiate(differentiate(a, 0), 1) == differentiate(differentiate(a, 1), 0));
        int c = static_cast<int>(rng.below(2));
        CHECK(differentiate(a * b, c) ==
              differentiate(a, c) * b + a * differentiate(b, c));
    }
}

TEST_CASE("angular derivative annihilates radial functions", "[expression]") {
    auto ctx = planar_ctx();
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1);
    Rng rng(13);
    Expression f = Expression::jet(ctx, "f");
    CHECK((y * differentiate(f, 0) - x * differentiate(f, 1)).is_zero());
    for (int t = 0; t < 20; ++t) {
        Expression r = random_polynomial_in(Expression::radius_squared(ctx), rng, 3) * f;
        CHECK((y * differentiate(r, 0) - x * differentiate(r, 1)).is_zero());
    }
}

TEST_CASE("substitution of constants and functions", "[expression]") {
    auto ctx = spatial_ctx();
    Expression hbar = Expression::parameter(ctx, "hbar");
    Expression r2 = Expression::radius_squared(ctx);
    Bindings zero_hbar;
    zero_hbar.bind_constant("hbar", Expression::zero(ctx));
    CHECK(substitute(hbar * hbar * div(Expression::one(ctx), r2), zero_hbar).is_zero());

    // derivative jets follow the bound value
    Expression v1x = Expression::symbol(
        ctx, Symbol::free_jet("V1", {true, true, true}, {1, 0, 0}));
    Bindings b;
    b.bind_function("V1", div(Expression::one(ctx), r2));
    Expression expected = div(-(2 * Expression::coordinate(ctx, 0)), r2 * r2);
    CHECK(substitute(v1x, b) == expected);

    // partial evaluation leaves unbound symbols alone
    Expression g = Expression::parameter(ctx, "gamma");
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1);
    Bindings zg;
    zg.bind_constant("gamma", Expression::zero(ctx));
    CHECK(substitute(x + g * y, zg) == x);
}

TEST_CASE("substitution rejections", "[expression]") {
    auto ctx = planar_ctx();
    Expression x = Expression::coordinate(ctx, 0), y = Expression::coordinate(ctx, 1);
    // value depends on a coordinate outside the declared set
    Bindings bad;
    bad.bind_function("g", y);
    CHECK_THROWS_AS(substitute(Expression::jet(ctx, "g"), bad), SubstitutionError);
    // non-radial value bound to a radial jet
    Bindings bad2;
    bad2.bind_function("f", x);
    CHECK_THROWS_AS(substitute(Expression::jet(ctx, "f"), bad2), SubstitutionError);
    // antiderivative without its integrand
    Bindings bad3;
    bad3.bind_function("W", x);
    CHECK_THROWS_AS(substitute(Expression::jet(ctx, "W"), bad3), SubstitutionError);
    // antiderivative inconsistent with the integrand
    Bindings bad4;
    bad4.bind_function("W", x * x);
    bad4.bind_function("g", x);  // d/dx x^2 = 2x != x
    CHECK_THROWS_AS(substitute(Expression::jet(ctx, "W"), bad4), SubstitutionError);
    // consistent pair passes
    Bindings good;
    good.bind_function("W", GaussianRational::of(1, 2) * x * x);
    good.bind_function("g", x);
    CHECK(substitute(Expression::jet(ctx, "W"), good) == GaussianRational::of(1, 2) * x * x);
    // undeclared names
    Bindings bad5;
    bad5.bind_function("nosuch", x);
    CHECK_THROWS_AS(substitute(x, bad5), SubstitutionError);
}

TEST_CASE("exact evaluation", "[expression]") {
    auto ctx = spatial_ctx();
    Expression r2 = Expression::radius_squared(ctx);
    Point p{{0, GaussianRational::of(1)}, {1, GaussianRational::of(2)}, {2, GaussianRational::of(2)}};
    CHECK(evaluate(div(Expression::one(ctx), r2), p) == GaussianRational::of(1, 9));

    auto ctx2 = planar_ctx();
    Expression x = Expression::coordinate(ctx2, 0), y = Expression::coordinate(ctx2, 1);
    Point q{{0, GaussianRational::of(3)}, {1, GaussianRational::of(3)}};
    CHECK(evaluate(x * x - y * y, q).is_zero());
    CHECK(evaluate(Expression::parameter(ctx2, "gamma") * x,
                   {{0, GaussianRational::of(2)}, {1, GaussianRational::of(0)}},
                   {{"gamma", GaussianRational::of(1, 2)}}) == GaussianRational::one());

    CHECK_THROWS_AS(evaluate(div(Expression::one(ctx2), x),
                             {{0, GaussianRational::zero()}, {1, GaussianRational::of(1)}}),
                    PoleError);
    CHECK_THROWS_AS(evaluate(Expression::parameter(ctx2, "gamma"), q), Error);
    CHECK_THROWS_AS(evaluate(Expression::jet(ctx2, "V1"), q), Error);
}

TEST_CASE("evaluation distributes over ring operations", "[expression]") {
    auto ctx = planar_ctx();
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        Expression a = random_polynomial(ctx, rng, 3);
        Expression b = random_polynomial(ctx, rng, 3);
        Point p = random_point(ctx, rng);
        CHECK(evaluate(a + b, p) == evaluate(a, p) + evaluate(b, p));
        CHECK(evaluate(a * b, p) == evaluate(a, p) * evaluate(b, p));
    }
}

TEST_CASE("user-registered denominator bases", "[expression]") {
    Poly one_plus_x2;
    poly_accumulate(one_plus_x2, Monomial::unit(), GaussianRational::one());
    poly_accumulate(one_plus_x2, Monomial::of(Symbol::coordinate(0), 2), GaussianRational::one());
    auto ctx = make_context(Mode::planar, {}, {}, {one_plus_x2});
    Expression x = Expression::coordinate(ctx, 0);
    Expression base = Expression::one(ctx) + x * x;
    Expression e = div(Expression::one(ctx), base);
    CHECK((e * base) == Expression::one(ctx));
    CHECK(to_string(e) == "1/(x^2 + 1)");
    Expression back = parse_expr(to_string(e), ctx);
    CHECK(back == e);
    // still rejected without the registration
    auto plain = make_context(Mode::planar);
    Expression xp = Expression::coordinate(plain, 0);
    CHECK_THROWS_AS(div(Expression::one(plain), Expression::one(plain) + xp * xp),
                    DivisionError);
}

TEST_CASE("formal radial derivative", "[expression]") {
    auto ctx = planar_ctx();
    Expression u = Expression::radius_squared(ctx);
    Expression e = div(Expression::one(ctx), u);
    CHECK(diff_radial(e) == -div(Expression::one(ctx), u * u));
    CHECK(diff_radial(Expression::parameter(ctx, "gamma")).is_zero());
    CHECK_THROWS_AS(diff_radial(Expression::coordinate(ctx, 0)), SubstitutionError);
}
