#ifndef ORBITCENSUS_EQUILIBRIA_HPP
#define ORBITCENSUS_EQUILIBRIA_HPP

#include <vector>

#include "orbitcensus/field.hpp"
#include "orbitcensus/geom.hpp"

namespace orbitcensus {

enum class EqKind { sink, source, saddle, inconclusive };

const char* eq_kind_name(EqKind k);

struct EquilibriumRecord {
    Cell box;  // isolating box certified to contain exactly one zero
    EqKind kind = EqKind::inconclusive;
    // Eigenvalues of Df at the zero with certified real-part sign margins.
    double eig_re[2] = {0, 0};
    double eig_im[2] = {0, 0};
    Rat re_margin;     // certified lower bound on min |Re(eigenvalue)|
    bool real_eigenvalues = false;
    DPoint stable_vec;    // saddle only; unit l2
    DPoint unstable_vec;  // saddle only; unit l2
};

struct ZeroCensus {
    long count = 0;
    std::vector<EquilibriumRecord> records;
    Rat eps;       // localization accuracy 1/k
    PixelSet set;  // Zero_eps(f): one square of radius 3/(4k) per zero
};

struct ZeroCensusOptions {
    long max_boxes = 400000;
    long min_width_bits = 40;  // stop splitting below 2^-bits
};

// Count and localize the zeros of f on the disk; requires every zero to be
// certifiable by interval Newton contraction (hyperbolicity gives this).
// Throws inconclusive_error when the budget runs out with unresolved boxes
// or when no zero could be certified.
ZeroCensus zero_census(const PolyVectorField& f, long k, const ZeroCensusOptions& opt = {});

// Classify the unique zero inside `box` (sink / source / saddle) with
// certified sign margins; margins below 2^-30 yield kind = inconclusive.
EquilibriumRecord classify(const PolyVectorField& f, const Cell& box);

// One interval Newton step: returns the refined box (intersection) or an
// empty optional when the operator certifies there is no zero.
// `certified_unique` is set when N(X) landed in the interior of X.
struct NewtonStep {
    bool excluded = false;
    bool certified_unique = false;
    bool progressed = false;
    RatInterval x, y;
};
NewtonStep interval_newton_step(const PolyVectorField& f, const RatInterval& x,
                                const RatInterval& y);

}  // namespace orbitcensus

#endif
