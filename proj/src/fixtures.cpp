#include "orbitcensus/fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "orbitcensus/errors.hpp"

namespace orbitcensus::fixtures {

Rat g_value(const ToyMachineTable& table, long k) {
    auto it = table.entries.find(k);
    if (it == table.entries.end()) throw key_error("g_value: no table entry for k=" + std::to_string(k));
    if (it->second == ToyMachineTable::NEVER) return Rat(0);
    if (it->second < 1) throw invalid_fixture("g_value: halting step must be >= 1");
    // sum_{i>=s} 2^-(i+1) = 2^-s
    return rat_pow2(-it->second);
}

namespace {

RatPoly2 poly(std::vector<Monomial> ms) {
    RatPoly2 p;
    p.terms = std::move(ms);
    p.normalize();
    return p;
}

// Multiply a polynomial by (x^2 + y^2 - a).
RatPoly2 mul_ring_factor(const RatPoly2& p, const Rat& a) {
    RatPoly2 r;
    for (const Monomial& m : p.terms) {
        r.terms.push_back({m.i + 2, m.j, m.c});
        r.terms.push_back({m.i, m.j + 2, m.c});
        r.terms.push_back({m.i, m.j, -a * m.c});
    }
    r.normalize();
    return r;
}

// Field with radial part dr/dt = -r * prod_j (r^2 - a_j) and dtheta/dt = 1:
//   f1 = -y - x * R(x^2+y^2),  f2 = x - y * R(x^2+y^2),
// where R(s) = prod (s - a_j).
PolyVectorField radial_family(const std::vector<Rat>& roots) {
    RatPoly2 rx = poly({{1, 0, Rat(1)}});  // x
    RatPoly2 ry = poly({{0, 1, Rat(1)}});  // y
    for (const Rat& a : roots) {
        rx = mul_ring_factor(rx, a);
        ry = mul_ring_factor(ry, a);
    }
    RatPoly2 f1, f2;
    f1.terms.push_back({0, 1, Rat(-1)});
    for (const Monomial& m : rx.terms) f1.terms.push_back({m.i, m.j, -m.c});
    f2.terms.push_back({1, 0, Rat(1)});
    for (const Monomial& m : ry.terms) f2.terms.push_back({m.i, m.j, -m.c});
    f1.normalize();
    f2.normalize();
    return PolyVectorField(std::move(f1), std::move(f2));
}

}  // namespace

PolyVectorField linear_focus() {
    return PolyVectorField(poly({{1, 0, Rat(-1)}, {0, 1, Rat(-1)}}),
                           poly({{1, 0, Rat(1)}, {0, 1, Rat(-1)}}));
}

PolyVectorField double_well() {
    return PolyVectorField(poly({{1, 0, Rat(4)}, {3, 0, Rat(-8)}}), poly({{0, 1, Rat(-1)}}));
}

PolyVectorField attracting_circle(const Rat& G) {
    if (G <= 0 || G >= 1) throw invalid_fixture("attracting_circle: need 0 < G < 1");
    return radial_family({G});
}

PolyVectorField theorem_a(const Rat& G) {
    if (G <= 0 || G >= 1) throw invalid_fixture("theorem_a: need 0 < G < 1");
    // As published the family points outward at r=1; reverse time and flip
    // the rotation so the boundary condition holds.
    PolyVectorField p = radial_family({G});
    RatPoly2 f1 = p.f1(), f2 = p.f2();
    // radial_family already carries dr/dt = -r(r^2-G); theorem_a is the same
    // field with the opposite rotation direction.
    RatPoly2 g1, g2;
    g1.terms.push_back({0, 1, Rat(1)});
    for (const Monomial& m : f1.terms)
        if (!(m.i == 0 && m.j == 1)) g1.terms.push_back(m);
    g2.terms.push_back({1, 0, Rat(-1)});
    for (const Monomial& m : f2.terms)
        if (!(m.i == 1 && m.j == 0)) g2.terms.push_back(m);
    g1.normalize();
    g2.normalize();
    return PolyVectorField(std::move(g1), std::move(g2));
}

PolyVectorField nested(const Rat& c1, const Rat& c2, const Rat& c3) {
    for (const Rat& c : {c1, c2, c3})
        if (c <= 0 || c >= 1) throw invalid_fixture("nested: radii^2 must lie in (0,1)");
    if (!(c1 < c2 && c2 < c3)) throw invalid_fixture("nested: need c1 < c2 < c3");
    return radial_family({c1, c2, c3});
}

PolyVectorField theorem_c(long k, const ToyMachineTable& table) {
    if (k < 1) throw invalid_fixture("theorem_c: k must be >= 1");
    std::vector<Rat> sums;
    Rat acc(0);
    for (long j = 1; j <= k; ++j) {
        acc += j * g_value(table, j);
        if (acc >= 1) throw invalid_fixture("theorem_c: partial sums must stay below 1");
        sums.push_back(acc);
    }
    // Published family runs outward at the boundary; ship it time-reversed
    // (radial_family already carries the reversed radial sign).
    return radial_family(sums);
}

long theorem_c_expected_orbits(long k, const ToyMachineTable& table) {
    std::vector<Rat> sums;
    Rat acc(0);
    for (long j = 1; j <= k; ++j) {
        acc += j * g_value(table, j);
        if (acc > 0) sums.push_back(acc);
    }
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    return static_cast<long>(sums.size());
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

Rat parse_rat(const std::string& s) {
    if (s.find('/') != std::string::npos) return rat_from_string(s);
    return rat_from_string(s + "/1");
}

}  // namespace

PolyVectorField make_fixture(const std::string& spec) {
    auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (name == "linear_focus") return linear_focus();
    if (name == "double_well") return double_well();
    if (name == "attracting_circle") {
        if (parts.size() != 2) throw invalid_fixture("attracting_circle:G expected");
        return attracting_circle(parse_rat(parts[1]));
    }
    if (name == "theorem_a") {
        if (parts.size() != 2) throw invalid_fixture("theorem_a:G expected");
        return theorem_a(parse_rat(parts[1]));
    }
    if (name == "nested") {
        if (parts.size() != 2) throw invalid_fixture("nested:c1,c2,c3 expected");
        auto cs = split(parts[1], ',');
        if (cs.size() != 3) throw invalid_fixture("nested:c1,c2,c3 expected");
        return nested(parse_rat(cs[0]), parse_rat(cs[1]), parse_rat(cs[2]));
    }
    if (name == "theorem_c") {
        if (parts.size() != 3) throw invalid_fixture("theorem_c:k:table expected");
        long k = std::stol(parts[1]);
        ToyMachineTable table;
        for (const std::string& e : split(parts[2], ',')) {
            auto kv = split(e, '=');
            if (kv.size() != 2) throw invalid_fixture("theorem_c table entry: k=step|never");
            long key = std::stol(kv[0]);
            table.entries[key] = (kv[1] == "never") ? ToyMachineTable::NEVER : std::stol(kv[1]);
        }
        return theorem_c(k, table);
    }
    throw invalid_fixture("unknown fixture: " + name);
}

}  // namespace orbitcensus::fixtures
