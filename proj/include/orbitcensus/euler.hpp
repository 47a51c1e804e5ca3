#ifndef ORBITCENSUS_EULER_HPP
#define ORBITCENSUS_EULER_HPP

#include <vector>

#include "orbitcensus/field.hpp"
#include "orbitcensus/geom.hpp"

namespace orbitcensus {

struct EulerParams {
    Rat h;      // step size; T = n_T * h exactly
    Rat rho;    // rounding bound (power of two); iterates live on the rho-grid
    long n_T;   // step count
    Rat T;      // horizon
    Rat eps;    // accuracy target the parameters were chosen for
};

// Certified parameter selection: h <= eps / (4 e^{TL} M^2) and
// rho <= min(eps h / (4 e^{TL}), eps / (2 e^{TL})), with T = n_T h exactly.
// L and M are coerced up to >= 1. Throws certified_mode_infeasible once the
// parameters underflow 2^-200.
EulerParams choose_parameters(const FieldBounds& bounds, const Rat& eps, const Rat& T);

// Forward Euler with per-step rounding to the rho-grid. Returns y_0..y_{n_T}.
// Runs in binary64 when rho is coarse enough for floating point to stay
// within the rounding budget, otherwise in exact rational arithmetic.
std::vector<RatPoint> euler_trajectory(const PolyVectorField& f, const EulerParams& params,
                                       const RatPoint& x0);

// e^{tL} gap + ((e^{tL}-1)/L)(h M^2 + rho/h), rounded outward; the L -> 0
// limit replaces (e^{tL}-1)/L by t.
double global_error_bound(const FieldBounds& bounds, double h, double rho, double t_elapsed,
                          double initial_gap);

}  // namespace orbitcensus

#endif
