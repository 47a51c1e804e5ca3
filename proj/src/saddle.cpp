#include "orbitcensus/saddle.hpp"

#include <cmath>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

namespace {

// Exact minimum of ||M u||_inf over the unit max-norm sphere ||u||_inf = 1.
// On each edge both components are |linear|; the minimum of their max sits at
// an edge endpoint, at a zero of one component, or where the two cross.
Rat min_gain_on_unit_square(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    Rat best(-1);
    auto consider = [&](const Rat& u1, const Rat& u2) {
        if (rat_abs(u1) > 1 || rat_abs(u2) > 1) return;
        Rat v = rat_max(rat_abs(a * u1 + b * u2), rat_abs(c * u1 + d * u2));
        if (best < 0 || v < best) best = v;
    };
    auto edge = [&](bool vertical, const Rat& fixed) {
        // component values along the edge: p(t) = p1 t + p0
        Rat p1 = vertical ? b : a, p0 = vertical ? a * fixed : b * fixed;
        Rat q1 = vertical ? d : c, q0 = vertical ? c * fixed : d * fixed;
        auto at = [&](const Rat& t) {
            if (vertical)
                consider(fixed, t);
            else
                consider(t, fixed);
        };
        at(Rat(-1));
        at(Rat(1));
        if (p1 != 0) at(-p0 / p1);
        if (q1 != 0) at(-q0 / q1);
        // |p| = |q| crossings: p = q and p = -q
        if (p1 - q1 != 0) at((q0 - p0) / (p1 - q1));
        if (p1 + q1 != 0) at(-(q0 + p0) / (p1 + q1));
    };
    edge(true, Rat(1));
    edge(true, Rat(-1));
    edge(false, Rat(1));
    edge(false, Rat(-1));
    return best;
}

// Sum of |coefficients| of total order >= 2 of p(center + u), per component.
Rat quadratic_tail_bound(const RatPoly2& p, const RatPoint& center) {
    // Taylor shift by binomial expansion; degrees here are tiny.
    RatPoly2 shifted;
    for (const Monomial& m : p.terms) {
        // (x + cx)^i (y + cy)^j expanded in powers of u = (x, y)
        std::vector<Rat> bx(m.i + 1), by(m.j + 1);
        Rat binom(1);
        for (int a = 0; a <= m.i; ++a) {
            Rat pw(1);
            for (int q = 0; q < m.i - a; ++q) pw *= center.x;
            bx[a] = binom * pw;
            binom = binom * (m.i - a) / (a + 1);
        }
        binom = 1;
        for (int a = 0; a <= m.j; ++a) {
            Rat pw(1);
            for (int q = 0; q < m.j - a; ++q) pw *= center.y;
            by[a] = binom * pw;
            binom = binom * (m.j - a) / (a + 1);
        }
        for (int a = 0; a <= m.i; ++a)
            for (int bq = 0; bq <= m.j; ++bq)
                shifted.terms.push_back({a, bq, m.c * bx[a] * by[bq]});
    }
    shifted.normalize();
    Rat sum(0);
    for (const Monomial& m : shifted.terms)
        if (m.i + m.j >= 2) sum += rat_abs(m.c);
    return sum;
}

Rat row_norm(const Rat q[2][2]) {
    return rat_max(rat_abs(q[0][0]) + rat_abs(q[0][1]), rat_abs(q[1][0]) + rat_abs(q[1][1]));
}

}  // namespace

SaddleBox build_saddle_box(const PolyVectorField& f, const EquilibriumRecord& rec, const Rat& T,
                           const SaddleBoxOptions& opt) {
    if (rec.kind != EqKind::saddle) throw input_error("build_saddle_box: record is not a saddle");
    if (T <= 0) throw input_error("build_saddle_box: T must be positive");

    SaddleBox box;
    box.center = rec.box.center;
    box.lambda = rec.eig_re[0];
    box.mu = rec.eig_re[1];
    box.T = T;
    box.cx = rat_to_double(box.center.x);
    box.cy = rat_to_double(box.center.y);

    // Eigenbasis, stable direction first.
    box.Q[0][0] = rec.stable_vec.x;
    box.Q[1][0] = rec.stable_vec.y;
    box.Q[0][1] = rec.unstable_vec.x;
    box.Q[1][1] = rec.unstable_vec.y;
    double det = box.Q[0][0] * box.Q[1][1] - box.Q[0][1] * box.Q[1][0];
    if (std::abs(det) < 1e-12) throw inconclusive_error("saddle eigenbasis nearly singular");
    box.Qinv[0][0] = box.Q[1][1] / det;
    box.Qinv[0][1] = -box.Q[0][1] / det;
    box.Qinv[1][0] = -box.Q[1][0] / det;
    box.Qinv[1][1] = box.Q[0][0] / det;

    // Validated radius: the affine model f(x) ~ A (x - x0) is accepted where
    // ||f(x) - A(x-x0)|| <= eta ||A(x-x0)||. With Cq the quadratic tail bound
    // of f around x0 and cA the minimal gain of A, the inequality holds for
    // ||x-x0|| <= eta cA / Cq.
    RatMat2 A = jacobian(f, box.center);
    Rat cA = min_gain_on_unit_square(A.a, A.b, A.c, A.d);
    if (cA <= 0) throw inconclusive_error("saddle Jacobian gain not certified positive");
    Rat cq = rat_max(quadratic_tail_bound(f.f1(), box.center),
                     quadratic_tail_bound(f.f2(), box.center));
    Rat eta(1, 8);
    if (opt.eta != 0.125) eta = rat_from_double(opt.eta);
    Rat u_max = cq > 0 ? Rat(eta * cA / cq) : Rat(4);  // linear field: no constraint

    // Map the admissible global radius to the local box radius through Q.
    Rat q_rat[2][2];
    Rat snap = rat_pow2(-30);
    q_rat[0][0] = rat_round_to_step(rat_from_double(box.Q[0][0]), snap);
    q_rat[0][1] = rat_round_to_step(rat_from_double(box.Q[0][1]), snap);
    q_rat[1][0] = rat_round_to_step(rat_from_double(box.Q[1][0]), snap);
    q_rat[1][1] = rat_round_to_step(rat_from_double(box.Q[1][1]), snap);
    Rat qnorm = row_norm(q_rat) + rat_pow2(-20);

    // Keep the global footprint inside the disk as well.
    Rat cnorm2 = box.center.x * box.center.x + box.center.y * box.center.y;
    // ||x0||_2 + sqrt(2) * qnorm * eps <= 1, handled with a rational sqrt(2) upper bound
    Rat sqrt2_up(1414214, 1000000);
    RatInterval cn = rat_sqrt_enclosure(cnorm2, 40);
    Rat room = (1 - cn.hi) / (sqrt2_up * qnorm);
    if (room <= 0) throw inconclusive_error("saddle too close to the boundary circle");

    Rat eps = rat_min(opt.eps_cap, rat_min(u_max / qnorm, room));

    // Shrink until the W budget for the fallback set is affordable.
    double kappa = std::max(std::abs(box.lambda), box.mu) / std::min(std::abs(box.lambda), box.mu);
    for (int it = 0; it < 200; ++it) {
        if (2 / T >= Rat(3) * eps / 4) throw need_larger_t("saddle box: 2/T >= 3 eps / 4");
        double e = rat_to_double(eps), Td = rat_to_double(T);
        double q = 3.0 * e * e * kappa * Td;  // 3 eps M / m for the local diagonal model
        double spacing = std::min(e / (32.0 * std::exp(q)), 1.0 / Td);
        double wcount = (8.0 / Td) / spacing * 2.0;
        if (wcount <= static_cast<double>(opt.max_w_points)) break;
        eps = eps * Rat(3, 4);
    }
    box.epsilon_box = eps;
    box.rA = 1 / T;
    box.rB = 2 / T;
    box.rC = Rat(3) * eps / 4;
    box.rD = eps;
    box.eps_d = rat_to_double(eps);
    box.rA_d = rat_to_double(box.rA);
    box.rB_d = rat_to_double(box.rB);
    box.exit_norm = rat_to_double(Rat(13) * eps / 16);
    box.jset = build_j_set(box, T, opt.max_w_points);
    return box;
}

double passage_time(const SaddleBox& box, double x_star, double x_star_star) {
    if (x_star_star < 0 || x_star <= 0 || x_star_star > x_star)
        throw input_error("passage_time: need 0 <= x** <= x*, x* > 0");
    if (x_star_star == 0) return std::numeric_limits<double>::infinity();
    return std::log(x_star / x_star_star) / std::abs(box.lambda);
}

JSet build_j_set(const SaddleBox& box, const Rat& T, long max_w_points) {
    JSet out;
    const double e = rat_to_double(box.epsilon_box);
    const double Td = rat_to_double(T);
    const double rB = 2.0 / Td;
    const double M = e * std::max(std::abs(box.lambda), box.mu);
    const double m = (1.0 / Td) * std::min(std::abs(box.lambda), box.mu);
    const double q = 3.0 * e * M / m;
    const double s = std::min(e / (32.0 * std::exp(q)), 1.0 / Td);
    const double tau = e / (33.0 * M);
    out.tau = tau;
    const double inner = 0.75 * e + 3.0 * e / 32.0;
    const double outer = 0.75 * e + 5.0 * e / 32.0;
    const double elam = std::exp(box.lambda * tau);
    const double emu = std::exp(box.mu * tau);
    const long rmax = static_cast<long>(std::floor(3.0 * e / (tau * m))) + 4;

    long per_edge = static_cast<long>(std::ceil(2.0 * rB / s)) + 1;
    if (per_edge * 2 > max_w_points)
        throw budget_exceeded("J set exceeds the W point budget");
    for (int side = 0; side < 2; ++side) {
        double w2 = side == 0 ? rB : -rB;
        for (long i = 0; i <= per_edge; ++i) {
            double w1 = -rB + 2.0 * rB * static_cast<double>(i) / static_cast<double>(per_edge);
            double z1 = w1, z2 = w2;
            bool placed = false;
            for (long l = 0; l <= rmax; ++l) {
                double n = std::max(std::abs(z1), std::abs(z2));
                if (n >= inner) {
                    if (n > outer) break;  // overshot the shell; cannot happen per the step bound
                    out.points.push_back({z1, z2});
                    placed = true;
                    break;
                }
                z1 *= elam;
                z2 *= emu;
            }
            if (!placed) throw inconclusive_error("J set construction failed to reach the shell");
        }
    }
    return out;
}

TransitResult black_box_transit(const SaddleBox& box, DPoint entry_local, double rho) {
    if (rho < std::ldexp(1.0, -48))
        throw input_error("black_box_transit: rho below the binary64 rounding floor");
    TransitResult res;
    const double z1 = entry_local.x, z2 = entry_local.y;
    const double norm = SaddleBox::local_norm(entry_local);
    if (norm >= box.exit_norm) {
        res.exit = box.to_global(entry_local);
        res.transit_time = 0;
        return res;
    }
    // Minimum of max(|z1| e^{lambda t}, |z2| e^{mu t}) over t >= 0.
    double minnorm;
    if (std::abs(z2) >= std::abs(z1)) {
        minnorm = norm;
    } else if (z2 == 0.0) {
        minnorm = 0.0;
    } else {
        double lam = box.lambda, mu = box.mu;
        minnorm = std::pow(std::abs(z1), mu / (mu - lam)) *
                  std::pow(std::abs(z2), -lam / (mu - lam));
    }
    if (minnorm <= box.rB_d) {
        // The computed trajectory meets region B: answer with the J set.
        res.fallback = true;
        res.fallback_global.reserve(box.jset.points.size());
        for (const DPoint& z : box.jset.points) res.fallback_global.push_back(box.to_global(z));
        return res;
    }
    double t_exit = std::log(box.exit_norm / std::abs(z2)) / box.mu;
    if (t_exit < 0) t_exit = 0;
    DPoint exit_local{z1 * std::exp(box.lambda * t_exit),
                      (z2 > 0 ? 1.0 : -1.0) * box.exit_norm};
    res.exit = box.to_global(exit_local);
    res.transit_time = t_exit;
    return res;
}

}  // namespace orbitcensus
