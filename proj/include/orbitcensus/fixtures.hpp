#ifndef ORBITCENSUS_FIXTURES_HPP
#define ORBITCENSUS_FIXTURES_HPP

#include <map>
#include <string>
#include <vector>

#include "orbitcensus/field.hpp"

namespace orbitcensus::fixtures {

// Halting-step table for the toy machine family: k -> halting step, or
// absent meaning the machine never halts. Fixture input only.
struct ToyMachineTable {
    static constexpr long NEVER = -1;
    std::map<long, long> entries;  // k -> step >= 1, or NEVER
};

// G(k) = sum_{i>=1} g(k,i)/2^{i+1}: 2^-s when the machine halts at step s,
// 0 when it never halts.
Rat g_value(const ToyMachineTable& table, long k);

// Named polynomial families with exact rational coefficients. All are inward
// on the boundary circle (the outward-pointing families ship time-reversed).
PolyVectorField linear_focus();                        // (-x-y, x-y)
PolyVectorField double_well();                         // (4x-8x^3, -y)
PolyVectorField attracting_circle(const Rat& G);       // cycle at r = sqrt(G)
PolyVectorField theorem_a(const Rat& G);               // time-reversed variant
PolyVectorField nested(const Rat& c1, const Rat& c2, const Rat& c3);
PolyVectorField theorem_c(long k, const ToyMachineTable& table);

// Number of distinct positive partial sums S_j = sum_{i<=j} i G(i), which is
// the number of circles r^2 = S_j the radial factor vanishes on.
long theorem_c_expected_orbits(long k, const ToyMachineTable& table);

// String dispatch for the CLI: "linear_focus", "double_well",
// "attracting_circle:1/4", "nested:1/4,1/2,3/4", "theorem_a:1/4",
// "theorem_c:3:1=1,2=never,3=3".
PolyVectorField make_fixture(const std::string& spec);

}  // namespace orbitcensus::fixtures

#endif
