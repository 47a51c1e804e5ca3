#ifndef ORBITCENSUS_SADDLE_HPP
#define ORBITCENSUS_SADDLE_HPP

#include <vector>

#include "orbitcensus/equilibria.hpp"
#include "orbitcensus/field.hpp"

namespace orbitcensus {

// Finite set of restart points on the outer shell of the D region, used as
// the black box's answer when a trajectory may have entered region A.
struct JSet {
    std::vector<DPoint> points;  // local coordinates, inside the D annulus
    double tau = 0;              // time grid used during construction
};

// Saddle vicinity in eigenbasis coordinates: stable axis first. The ball
// B(center, eps) (local max-norm) splits into
//   A = {|z| <= 1/T},  B = {1/T..2/T},  C = {2/T..3eps/4},  D = {3eps/4..eps}.
struct SaddleBox {
    RatPoint center;
    double lambda = 0;  // stable eigenvalue, < 0
    double mu = 0;      // unstable eigenvalue, > 0
    double Q[2][2] = {{1, 0}, {0, 1}};     // columns: stable, unstable eigenvectors
    double Qinv[2][2] = {{1, 0}, {0, 1}};
    Rat epsilon_box;
    Rat T;
    Rat rA, rB, rC, rD;  // 1/T, 2/T, 3eps/4, eps
    JSet jset;

    double cx = 0, cy = 0;  // cached double center
    double eps_d = 0, rA_d = 0, rB_d = 0, exit_norm = 0;

    DPoint to_local(DPoint g) const {
        double dx = g.x - cx, dy = g.y - cy;
        return {Qinv[0][0] * dx + Qinv[0][1] * dy, Qinv[1][0] * dx + Qinv[1][1] * dy};
    }
    DPoint to_global(DPoint z) const {
        return {cx + Q[0][0] * z.x + Q[0][1] * z.y, cy + Q[1][0] * z.x + Q[1][1] * z.y};
    }
    static double local_norm(DPoint z) { return std::max(std::abs(z.x), std::abs(z.y)); }
    // Trigger region for the black box: A + B + C.
    bool in_trigger_region(DPoint g) const { return local_norm(to_local(g)) < 0.75 * eps_d; }
};

struct SaddleBoxOptions {
    Rat eps_cap = Rat(1, 4);
    long max_w_points = 200000;
    double eta = 0.125;  // admissible relative nonlinearity inside the box
};

// Build the black box for a saddle record: eigenbasis conjugacy, validated
// box radius, region radii from T, and the fallback J set.
SaddleBox build_saddle_box(const PolyVectorField& f, const EquilibriumRecord& rec, const Rat& T,
                           const SaddleBoxOptions& opt = {});

// Time for the linearized flow to move from abscissa x_star down to
// x_star_star on the stable axis: ln(x*/x**)/|lambda|; +infinity at x** = 0.
double passage_time(const SaddleBox& box, double x_star, double x_star_star);

// Restart set on the outer horizontal borders of region B; every point lands
// in the shell 3eps/4 + [3eps/32, 5eps/32].
JSet build_j_set(const SaddleBox& box, const Rat& T, long max_w_points = 200000);

struct TransitResult {
    bool fallback = false;
    DPoint exit;                        // global coordinates (when !fallback)
    std::vector<DPoint> fallback_global;  // conjugacy image of the J set
    double transit_time = 0;            // linear passage time (exit case)
};

// Black box answer for an entry point given in local coordinates inside
// A u B u C (entries already in D are returned unchanged). rho is the
// rounding budget the returned points must respect.
TransitResult black_box_transit(const SaddleBox& box, DPoint entry_local, double rho);

}  // namespace orbitcensus

#endif
