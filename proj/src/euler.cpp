#include "orbitcensus/euler.hpp"

#include <cmath>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

namespace {

const Rat& underflow_limit() {
    static const Rat lim = rat_pow2(-200);
    return lim;
}

}  // namespace

EulerParams choose_parameters(const FieldBounds& bounds, const Rat& eps, const Rat& T) {
    if (eps <= 0 || eps >= 1) throw input_error("choose_parameters: eps must be in (0,1)");
    if (T <= 0) throw input_error("choose_parameters: T must be positive");
    Rat L = rat_max(bounds.L, Rat(1));
    Rat M = rat_max(bounds.M, Rat(1));
    Rat TL = T * L;
    // Quick infeasibility screen before the exponential blows up.
    if (TL > 600) throw certified_mode_infeasible("choose_parameters: T*L too large");
    Rat U = exp_upper(TL);
    Rat h_bound = eps / (4 * U * M * M);
    if (h_bound < underflow_limit())
        throw certified_mode_infeasible("choose_parameters: h underflows 2^-200");
    Rat h = rat_pow2_floor(h_bound);
    Rat steps = T / h;
    long n_T;
    if (steps.get_den() == 1 && steps.get_num().fits_slong_p()) {
        n_T = steps.get_num().get_si();
    } else {
        n_T = rat_to_long(rat_ceil(steps));
        h = T / n_T;  // still <= h_bound
    }
    Rat rho_bound = rat_min(eps * h / (4 * U), eps / (2 * U));
    if (rho_bound < underflow_limit())
        throw certified_mode_infeasible("choose_parameters: rho underflows 2^-200");
    EulerParams p;
    p.h = h;
    p.rho = rat_pow2_floor(rho_bound);
    p.n_T = n_T;
    p.T = T;
    p.eps = eps;
    return p;
}

namespace {

Rat round_to_grid(const Rat& v, const Rat& rho) { return rat_round_to_step(v, rho); }

std::vector<RatPoint> trajectory_exact(const PolyVectorField& f, const EulerParams& p,
                                       const RatPoint& x0) {
    Rat limit = 1 + p.eps;
    Rat limit2 = limit * limit;
    std::vector<RatPoint> out;
    out.reserve(p.n_T + 1);
    RatPoint y{round_to_grid(x0.x, p.rho), round_to_grid(x0.y, p.rho)};
    out.push_back(y);
    for (long n = 0; n < p.n_T; ++n) {
        Rat fx = f.f1().eval(y.x, y.y);
        Rat fy = f.f2().eval(y.x, y.y);
        y.x = round_to_grid(y.x + p.h * fx, p.rho);
        y.y = round_to_grid(y.y + p.h * fy, p.rho);
        if (y.x * y.x + y.y * y.y > limit2) throw left_domain(n + 1);
        out.push_back(y);
    }
    return out;
}

std::vector<RatPoint> trajectory_double(const PolyVectorField& f, const EulerParams& p,
                                        const RatPoint& x0) {
    const double rho = rat_to_double(p.rho);  // exact: rho is a power of two
    const double h = rat_to_double(p.h);
    const double limit2 = rat_to_double((1 + p.eps) * (1 + p.eps));
    auto snap = [rho](double v) { return rho * std::nearbyint(v / rho); };
    std::vector<RatPoint> out;
    out.reserve(p.n_T + 1);
    double x = snap(rat_to_double(x0.x)), y = snap(rat_to_double(x0.y));
    out.push_back({rat_from_double(x), rat_from_double(y)});
    for (long n = 0; n < p.n_T; ++n) {
        DPoint v = f.eval_raw(x, y);
        x = snap(x + h * v.x);
        y = snap(y + h * v.y);
        if (x * x + y * y > limit2) throw left_domain(n + 1);
        out.push_back({rat_from_double(x), rat_from_double(y)});
    }
    return out;
}

}  // namespace

std::vector<RatPoint> euler_trajectory(const PolyVectorField& f, const EulerParams& p,
                                       const RatPoint& x0) {
    if (x0.x * x0.x + x0.y * x0.y > 1) throw input_error("euler_trajectory: x0 outside the disk");
    if (p.h <= 0 || p.rho <= 0) throw input_error("euler_trajectory: invalid parameters");
    // Binary64 keeps per-step arithmetic error a comfortable fraction of the
    // rho-grid rounding only when rho is coarse enough.
    if (p.rho >= rat_pow2(-45)) return trajectory_double(f, p, x0);
    return trajectory_exact(f, p, x0);
}

double global_error_bound(const FieldBounds& bounds, double h, double rho, double t_elapsed,
                          double initial_gap) {
    if (h <= 0 || rho < 0 || t_elapsed < 0 || initial_gap < 0)
        throw input_error("global_error_bound: invalid arguments");
    const double up = 1 + 1e-12;
    double L = rat_to_double(bounds.L) * up;
    double M = rat_to_double(bounds.M) * up;
    double etl = std::exp(t_elapsed * L) * up;
    double factor = L > 0 ? (etl - 1) / L * up : t_elapsed;
    double bound = etl * initial_gap + factor * (h * M * M + rho / h);
    return bound * (1 + 1e-10);
}

}  // namespace orbitcensus
