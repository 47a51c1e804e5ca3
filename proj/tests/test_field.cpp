#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitcensus/errors.hpp"
#include "orbitcensus/field.hpp"
#include "orbitcensus/fixtures.hpp"
#include "support/oracles.hpp"

using namespace orbitcensus;

TEST_CASE("evaluate: exact values on fixtures") {
    PolyVectorField focus = fixtures::linear_focus();
    auto v = evaluate(focus, RatPoint{Rat(1), Rat(0)});
    CHECK(v[0] == -1);
    CHECK(v[1] == 1);

    PolyVectorField circ = fixtures::attracting_circle(Rat(1, 4));
    auto at_origin = evaluate(circ, RatPoint{Rat(0), Rat(0)});
    CHECK(at_origin[0] == 0);
    CHECK(at_origin[1] == 0);
    auto on_cycle = evaluate(circ, RatPoint{Rat(1, 2), Rat(0)});
    CHECK(on_cycle[0] == 0);
    CHECK(on_cycle[1] == Rat(1, 2));

    CHECK_THROWS_AS(evaluate(circ, RatPoint{Rat(2), Rat(0)}), input_error);
}

TEST_CASE("jacobian: exact values") {
    PolyVectorField focus = fixtures::linear_focus();
    RatMat2 j = jacobian(focus, RatPoint{Rat(1, 3), Rat(-2, 5)});
    CHECK(j.a == -1);
    CHECK(j.b == -1);
    CHECK(j.c == 1);
    CHECK(j.d == -1);

    PolyVectorField dw = fixtures::double_well();
    RatMat2 j0 = jacobian(dw, RatPoint{Rat(0), Rat(0)});
    CHECK(j0.a == 4);
    CHECK(j0.b == 0);
    CHECK(j0.c == 0);
    CHECK(j0.d == -1);

    // 4 - 24 x^2 at x^2 = 1/2 gives -8 (float mode at the irrational point)
    auto jd = jacobian(dw, DPoint{std::sqrt(0.5), 0.0});
    CHECK(jd[0].x == doctest::Approx(-8.0).epsilon(1e-12));
    CHECK(jd[0].y == doctest::Approx(0.0));
    CHECK(jd[1].y == doctest::Approx(-1.0));
}

TEST_CASE("compute_bounds on fixtures") {
    // f = (-x, -y): inward margin certifies ~1
    RatPoly2 p1, p2;
    p1.terms = {{1, 0, Rat(-1)}};
    p2.terms = {{0, 1, Rat(-1)}};
    PolyVectorField contract(p1, p2);
    FieldBounds b = compute_bounds(contract);
    CHECK(b.M >= rat_from_double(std::sqrt(2.0)));
    CHECK(b.inward_margin > Rat(1) - Rat(1, 256));
    CHECK(b.inward_margin <= 1);

    // constant field (1, 0) points outward at (1,0)
    RatPoly2 c1, c2;
    c1.terms = {{0, 0, Rat(1)}};
    PolyVectorField outward(c1, c2);
    CHECK_THROWS_AS(compute_bounds(outward), inward_violation);

    // double well: -f.x = 8u^2 - 5u + 1 >= 7/32 on the circle
    FieldBounds dwb = compute_bounds(fixtures::double_well());
    CHECK(dwb.inward_margin >= Rat(7, 32) - Rat(1, 512));
    CHECK(dwb.inward_margin <= Rat(7, 32));
}

TEST_CASE("bounds are sound on random points and fields") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        PolyVectorField f = oracles::random_inward_field(rng, 7);
        FieldBounds b = coefficient_bounds(f);
        double M = rat_to_double(b.M);
        for (int i = 0; i < 500; ++i) {
            RatPoint p{oracles::random_dyadic(rng, 12, -0.7, 0.7),
                       oracles::random_dyadic(rng, 12, -0.7, 0.7)};
            if (p.x * p.x + p.y * p.y > 1) continue;
            auto v = evaluate(f, p);
            CHECK(rat_to_double(rat_max(rat_abs(v[0]), rat_abs(v[1]))) <= M + 1e-12);
            RatMat2 j = jacobian(f, p);
            double row1 = rat_to_double(rat_abs(j.a) + rat_abs(j.b));
            double row2 = rat_to_double(rat_abs(j.c) + rat_abs(j.d));
            CHECK(std::max(row1, row2) <= M + 1e-12);
        }
    }
}

TEST_CASE("jacobian matches central finite differences in float mode") {
    std::mt19937_64 rng(7);
    PolyVectorField f = fixtures::nested(Rat(1, 4), Rat(1, 2), Rat(3, 4));
    const double h = 1e-5;
    for (int i = 0; i < 50; ++i) {
        double x = std::uniform_real_distribution<double>(-0.6, 0.6)(rng);
        double y = std::uniform_real_distribution<double>(-0.6, 0.6)(rng);
        auto j = jacobian(f, DPoint{x, y});
        DPoint fp = evaluate(f, DPoint{x + h, y});
        DPoint fm = evaluate(f, DPoint{x - h, y});
        double fd = (fp.x - fm.x) / (2 * h);
        double scale = std::max(1.0, std::abs(j[0].x));
        CHECK(std::abs(j[0].x - fd) / scale <= 1e-6);
        fd = (fp.y - fm.y) / (2 * h);
        scale = std::max(1.0, std::abs(j[1].x));
        CHECK(std::abs(j[1].x - fd) / scale <= 1e-6);
    }
}

TEST_CASE("inward certification is never granted to outward fields") {
    std::mt19937_64 rng(11);
    // Perturb an inward field until some boundary sample points outward; the
    // checker must then refuse to certify.
    for (int rep = 0; rep < 10; ++rep) {
        PolyVectorField f = oracles::random_inward_field(rng);
        bool certified = true;
        Rat margin(0);
        try {
            margin = compute_bounds(f).inward_margin;
        } catch (const inward_violation&) {
            certified = false;
        } catch (const inconclusive_error&) {
            certified = false;
        }
        if (!certified) continue;
        CHECK(margin > 0);
        // sample the circle; -f(x).x must exceed the certified margin
        for (int k = 0; k < 256; ++k) {
            double th = 2 * M_PI * k / 256;
            DPoint p{std::cos(th), std::sin(th)};
            DPoint v = f.eval_raw(p.x, p.y);
            CHECK(-(v.x * p.x + v.y * p.y) >= rat_to_double(margin) - 1e-9);
        }
    }
}

TEST_CASE("field JSON coefficients survive double conversion sanity") {
    PolyVectorField f = fixtures::theorem_c(3, {{{1, 1}, {2, fixtures::ToyMachineTable::NEVER}, {3, 3}}});
    // G = (1/2, 0, 1/8); partial sums 1/2, 1/2, 7/8 -> orbits {1/2, 7/8}
    CHECK(fixtures::theorem_c_expected_orbits(3, {{{1, 1}, {2, fixtures::ToyMachineTable::NEVER}, {3, 3}}}) == 2);
    CHECK(f.degree() == 7);
}
