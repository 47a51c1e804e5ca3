#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitcensus/errors.hpp"
#include "orbitcensus/euler.hpp"
#include "orbitcensus/fixtures.hpp"
#include "support/oracles.hpp"

using namespace orbitcensus;

namespace {

PolyVectorField contraction_field() {
    RatPoly2 p1, p2;
    p1.terms = {{1, 0, Rat(-1)}};
    p2.terms = {{0, 1, Rat(-1)}};
    return PolyVectorField(p1, p2);
}

FieldBounds unit_bounds() {
    FieldBounds b;
    b.M = 1;
    b.L = 1;
    b.inward_margin = 1;
    return b;
}

EulerParams practical(const Rat& h, const Rat& rho, const Rat& T, const Rat& eps) {
    EulerParams p;
    p.h = h;
    p.rho = rho;
    p.T = T;
    p.n_T = rat_to_long(T / h);
    p.eps = eps;
    return p;
}

}  // namespace

TEST_CASE("choose_parameters reproduces the worked example") {
    EulerParams p = choose_parameters(unit_bounds(), Rat(1, 4), Rat(1));
    CHECK(p.h == rat_pow2(-6));
    CHECK(p.n_T == 64);
    CHECK(p.T == p.h * p.n_T);
    // rho <= eps*h/(4e) ~ 3.59e-4 and is the largest power of two below it
    CHECK(p.rho <= rat_from_double(3.6e-4));
    CHECK(p.rho == rat_pow2(-12));
}

TEST_CASE("choose_parameters is infeasible for long horizons") {
    FieldBounds b;
    b.M = 1;
    b.L = 5;
    b.inward_margin = 1;
    CHECK_THROWS_AS(choose_parameters(b, Rat(1, 4), Rat(50)), certified_mode_infeasible);
}

TEST_CASE("certified trajectory error stays below the bound (closed form)") {
    PolyVectorField f = contraction_field();
    EulerParams p = choose_parameters(unit_bounds(), Rat(1, 4), Rat(1));
    RatPoint x0{Rat(1, 2), Rat(0)};
    auto traj = euler_trajectory(f, p, x0);
    REQUIRE(static_cast<long>(traj.size()) == p.n_T + 1);
    double h = rat_to_double(p.h), rho = rat_to_double(p.rho);
    FieldBounds b = unit_bounds();
    for (long n = 0; n <= p.n_T; ++n) {
        double t = n * h;
        double exact = 0.5 * std::exp(-t);
        double err = std::abs(rat_to_double(traj[n].x) - exact);
        err = std::max(err, std::abs(rat_to_double(traj[n].y)));
        CHECK(err <= global_error_bound(b, h, rho, t, rho));
        CHECK(err <= 0.25);  // the certified eps
    }
}

TEST_CASE("equilibrium start stays put up to rounding") {
    PolyVectorField circ = fixtures::attracting_circle(Rat(1, 4));
    EulerParams p = practical(rat_pow2(-8), rat_pow2(-30), Rat(2), Rat(1, 2));
    auto traj = euler_trajectory(circ, p, RatPoint{Rat(0), Rat(0)});
    for (const RatPoint& y : traj) {
        CHECK(rat_abs(y.x) <= p.rho * p.n_T);
        CHECK(rat_abs(y.y) <= p.rho * p.n_T);
    }
}

TEST_CASE("double well trajectory reaches the right-hand sink by t=6") {
    PolyVectorField dw = fixtures::double_well();
    EulerParams p = practical(rat_pow2(-10), rat_pow2(-40), Rat(6), Rat(1, 2));
    auto traj = euler_trajectory(dw, p, RatPoint{Rat(9, 10), Rat(1, 10)});
    DPoint end{rat_to_double(traj.back().x), rat_to_double(traj.back().y)};
    double sink = std::sqrt(0.5);
    CHECK(std::max(std::abs(end.x - sink), std::abs(end.y)) <= 0.05);
    // cross-check against an independent RK4 reference
    DPoint ref = oracles::rk4_flow(dw, DPoint{0.9, 0.1}, 6.0);
    CHECK(std::abs(end.x - ref.x) <= 0.02);
    CHECK(std::abs(end.y - ref.y) <= 0.02);
}

TEST_CASE("left domain is reported") {
    // time-reversed contraction blows outward
    PolyVectorField f = contraction_field().negated();
    EulerParams p = practical(rat_pow2(-6), rat_pow2(-30), Rat(4), Rat(1, 8));
    CHECK_THROWS_AS(euler_trajectory(f, p, RatPoint{Rat(9, 10), Rat(0)}), left_domain);
}

TEST_CASE("global_error_bound: limits and monotonicity") {
    FieldBounds b = unit_bounds();
    // gap=1, h,rho -> 0: bound -> e^{tL} * gap = e
    CHECK(global_error_bound(b, 1e-12, 1e-30, 1.0, 1.0) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    // vanishing everything: bound -> 0
    CHECK(global_error_bound(b, 1e-12, 1e-30, 1.0, 0.0) <= 1e-10);

    // monotone in each argument on the regime h >= sqrt(rho)/M
    double base = global_error_bound(b, 1e-3, 1e-8, 1.0, 0.1);
    CHECK(global_error_bound(b, 2e-3, 1e-8, 1.0, 0.1) >= base);
    CHECK(global_error_bound(b, 1e-3, 2e-8, 1.0, 0.1) >= base);
    CHECK(global_error_bound(b, 1e-3, 1e-8, 1.5, 0.1) >= base);
    CHECK(global_error_bound(b, 1e-3, 1e-8, 1.0, 0.2) >= base);
}

TEST_CASE("soundness: certified error never beats a 64x finer reference") {
    std::mt19937_64 rng(314159);
    int fields_checked = 0;
    for (int rep = 0; rep < 100; ++rep) {
        PolyVectorField f = oracles::random_inward_field(rng, 5);
        FieldBounds b = coefficient_bounds(f);
        EulerParams p;
        try {
            p = choose_parameters(b, Rat(1, 4), Rat(1));
        } catch (const certified_mode_infeasible&) {
            continue;  // difficult coefficients; skip
        }
        RatPoint x0{oracles::random_dyadic(rng, 10, -0.5, 0.5),
                    oracles::random_dyadic(rng, 10, -0.5, 0.5)};
        if (x0.x * x0.x + x0.y * x0.y > Rat(9, 10)) continue;
        std::vector<RatPoint> traj;
        try {
            traj = euler_trajectory(f, p, x0);
        } catch (const left_domain&) {
            continue;
        }
        // reference: plain Euler at h/64 from the same start
        EulerParams fine = p;
        fine.h = p.h / 64;
        fine.n_T = p.n_T * 64;
        fine.rho = rat_pow2(-45);
        auto ref = euler_trajectory(f, fine, x0);
        double h = rat_to_double(p.h), rho = rat_to_double(p.rho);
        for (long n = 0; n <= p.n_T; n += 8) {
            double gx = rat_to_double(traj[n].x - ref[64 * n].x);
            double gy = rat_to_double(traj[n].y - ref[64 * n].y);
            double gap = std::max(std::abs(gx), std::abs(gy));
            CHECK(gap <= global_error_bound(b, h, rho, n * h, rho));
        }
        ++fields_checked;
    }
    CHECK(fields_checked >= 50);
}

TEST_CASE("trajectories are bit-identical across repeated runs") {
    PolyVectorField f = fixtures::attracting_circle(Rat(1, 4));
    EulerParams p = practical(rat_pow2(-9), rat_pow2(-35), Rat(3), Rat(1, 4));
    auto a = euler_trajectory(f, p, RatPoint{Rat(3, 10), Rat(1, 5)});
    auto b = euler_trajectory(f, p, RatPoint{Rat(3, 10), Rat(1, 5)});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
    }
}
