#ifndef ORBITCENSUS_EVOLVE_HPP
#define ORBITCENSUS_EVOLVE_HPP

#include <utility>
#include <vector>

#include "orbitcensus/euler.hpp"
#include "orbitcensus/field.hpp"
#include "orbitcensus/geom.hpp"
#include "orbitcensus/saddle.hpp"

namespace orbitcensus {

enum class EvolveMode { certified, practical };
enum class TimeDirection { forward, backward };

struct SimOptions {
    EvolveMode mode = EvolveMode::practical;
    Rat h_practical = Rat(1, 128);   // practical step ceiling
    Rat rho_practical = rat_pow2(-40);
    Rat grid_ratio = Rat(1, 2);      // practical grid spacing = eps * ratio ...
    Rat grid_floor = Rat(1, 512);    // ... but never finer than this
    int threads = 1;
    long max_grid_points = 6000000;
    const std::vector<SaddleBox>* saddles = nullptr;  // black boxes, if any
};

struct EvolutionResult {
    PixelSet set;  // union of B(p~_{n_T}, eps/2) over the evolved grid
    Rat eps;
    Rat T;
    EvolveMode mode = EvolveMode::practical;
    double achieved_bound = 0;  // a-posteriori bound from the actual h, rho, grid
    bool dropped_left_domain = false;
    long transit_count = 0;
    // Per-trajectory data for the transition graph: ends[k] = (index into
    // grid, final position). Fallback answers fan one index out to many ends.
    std::vector<RatPoint> grid;
    std::vector<std::pair<int, DPoint>> ends;
};

// phi_T(D) over-approximation as a union of eps/2 balls at evolved grid
// points. Backward direction integrates x' = -f(x).
EvolutionResult time_evolution(const PolyVectorField& f, const FieldBounds& bounds,
                               const PixelSet& D, const Rat& eps, const Rat& T,
                               TimeDirection direction, const SimOptions& opt = {});

// The four-step invariance test: returns 1 only when every evolved sample of
// D stays clear of the inflated complement throughout [T, 2T] (and the time-T
// image provably sits inside D). One-sided: 0 proves nothing.
int has_invariant_subset(const PolyVectorField& f, const FieldBounds& bounds, const PixelSet& D,
                         const Rat& eps, const Rat& T, const SimOptions& opt = {});

}  // namespace orbitcensus

#endif
