#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitcensus/errors.hpp"
#include "orbitcensus/geom.hpp"
#include "support/oracles.hpp"

using namespace orbitcensus;

namespace {

Cell sq(double cx, double cy, double r) {
    return Cell{{rat_from_double(cx), rat_from_double(cy)}, rat_from_double(r)};
}

PixelSet set_of(std::initializer_list<Cell> cells) {
    PixelSet s;
    s.cells = cells;
    s.normalize();
    return s;
}

}  // namespace

TEST_CASE("grid_points enumerates the clipped lattice") {
    CHECK(grid_points({Rat(1)}).size() == 13);
    CHECK(grid_points({Rat(2)}).size() == 9);
    CHECK(grid_points({Rat(1, 2)}).size() == 29);
    CHECK_THROWS_AS(grid_points({rat_pow2(-41)}), budget_exceeded);
}

TEST_CASE("hausdorff on simple configurations") {
    PixelSet a = set_of({sq(0, 0, 0.5)});
    PixelSet b = set_of({sq(1, 0, 0.5)});
    CHECK(hausdorff(a, a) == 0);
    CHECK(hausdorff(a, b) == 1);
    CHECK_THROWS_AS(hausdorff(a, PixelSet{}), empty_set_error);
}

TEST_CASE("hausdorff catches interior pockets, not only corners") {
    // Two flanking slabs around a wide box: the farthest point of the box
    // from the slabs is in the middle of the box, not at any corner.
    PixelSet a = set_of({sq(0, 0, 0.5)});
    PixelSet flank = set_of({sq(-0.625, 0, 0.125), sq(0.625, 0, 0.125)});
    // one-sided sup over a is 0.5 (center), symmetric part smaller
    CHECK(hausdorff(a, flank) == Rat(1, 2));
}

TEST_CASE("hausdorff agrees exactly with the lattice brute-force oracle") {
    std::mt19937_64 rng(12345);
    for (int rep = 0; rep < 24; ++rep) {
        PixelSet a = oracles::random_lattice_set(rng, 20);
        PixelSet b = oracles::random_lattice_set(rng, 20);
        Rat g(1, 64);
        Rat expect = oracles::hausdorff_lattice_oracle(a, b, g);
        CHECK(hausdorff(a, b) == expect);
    }
}

TEST_CASE("hausdorff vs dense sampling lower bound") {
    std::mt19937_64 rng(777);
    PixelSet a = oracles::random_lattice_set(rng, 12);
    PixelSet b = oracles::random_lattice_set(rng, 12);
    Rat h = hausdorff(a, b);
    // Sample both unions at resolution 2^-10; sampling can only undershoot.
    Rat res = rat_pow2(-10);
    Rat best(0);
    for (const Cell& c : a.cells) {
        for (Rat x = c.xlo(); x <= c.xhi(); x += res)
            best = rat_max(best, set_point_dist(b, {x, c.center.y}));
    }
    CHECK(best <= h);
    CHECK(h >= best);
}

TEST_CASE("hausdorff is symmetric and satisfies the triangle inequality") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 12; ++rep) {
        PixelSet a = oracles::random_lattice_set(rng, 8);
        PixelSet b = oracles::random_lattice_set(rng, 8);
        PixelSet c = oracles::random_lattice_set(rng, 8);
        Rat ab = hausdorff(a, b), ba = hausdorff(b, a);
        CHECK(ab == ba);
        CHECK(hausdorff(a, c) <= ab + hausdorff(b, c));
    }
}

TEST_CASE("connected components: examples") {
    PixelSet two = set_of({sq(0, 0, 0.25), sq(1.5, 0, 0.25)});
    CHECK(connected_components(two).size() == 2);

    // chain of edge-touching squares
    PixelSet chain = set_of({sq(0, 0, 0.25), sq(0.5, 0, 0.25), sq(1.0, 0, 0.25)});
    CHECK(connected_components(chain).size() == 1);

    // corner contact counts as adjacent
    PixelSet corner = set_of({sq(0, 0, 0.25), sq(0.5, 0.5, 0.25)});
    CHECK(connected_components(corner).size() == 1);
}

TEST_CASE("connected components match the adjacency-matrix BFS oracle") {
    std::mt19937_64 rng(321);
    for (int rep = 0; rep < 10; ++rep) {
        PixelSet s = oracles::random_lattice_set(rng, 50);
        auto comps = connected_components(s);
        auto expected = oracles::components_bfs_oracle(s);
        CHECK(comps.size() == expected.size());
        // partition property: total cells preserved, pairwise non-adjacent
        std::size_t total = 0;
        for (const auto& c : comps) total += c.size();
        CHECK(total == s.size());
        for (std::size_t i = 0; i < comps.size(); ++i)
            for (std::size_t j = i + 1; j < comps.size(); ++j)
                for (const Cell& ci : comps[i].cells)
                    for (const Cell& cj : comps[j].cells) CHECK(!cells_touch(ci, cj));
    }
}

TEST_CASE("complement_closure of a full disk cover hugs the boundary circle") {
    // Cover the disk with one big square.
    PixelSet cover = set_of({sq(0, 0, 1.0)});
    Rat res(1, 16);
    PixelSet comp = complement_closure(cover, res);
    CHECK(!comp.empty());
    for (const Cell& c : comp.cells) {
        // every complement cell stays within one resolution of the circle
        double cx = rat_to_double(c.center.x), cy = rat_to_double(c.center.y);
        double d = std::abs(std::hypot(cx, cy) - 1.0);
        CHECK(d <= 2.0 * rat_to_double(res));
    }
}

TEST_CASE("complement_closure of a central square covers the annulus") {
    PixelSet s = set_of({sq(0, 0, 0.25)});
    Rat res(1, 16);
    PixelSet comp = complement_closure(s, res);
    CHECK(set_point_dist(comp, {Rat(9, 10), Rat(0)}) == 0);
    // coverage: inflate(complement) together with s covers the disk
    PixelIndex comp_idx(comp);
    PixelIndex s_idx(s);
    for (const RatPoint& p : grid_points({Rat(1, 64)})) {
        if (p.x * p.x + p.y * p.y > 1) continue;
        bool in_s = set_contains(s, p);
        bool near_comp = !comp_idx.min_dist_greater(p, res);
        CHECK((in_s || near_comp));
    }
}

TEST_CASE("complement_closure coverage on random sets") {
    std::mt19937_64 rng(5150);
    Rat res(1, 16);
    for (int rep = 0; rep < 8; ++rep) {
        PixelSet s = oracles::random_lattice_set(rng, 10);
        PixelSet comp = complement_closure(s, res);
        PixelIndex comp_idx(comp);
        for (const RatPoint& p : grid_points({Rat(1, 32)})) {
            if (p.x * p.x + p.y * p.y > 1) continue;
            CHECK((set_contains(s, p) || !comp_idx.min_dist_greater(p, res)));
        }
    }
}

TEST_CASE("box_covered_by: exact coverage decisions") {
    PixelSet cover = set_of({sq(0.25, 0.5, 0.25), sq(0.75, 0.5, 0.25)});
    CHECK(box_covered_by(Rat(0), Rat(1), Rat(1, 4), Rat(3, 4), cover));
    // a pin hole: shrink one cell slightly
    PixelSet gap = set_of({sq(0.25, 0.5, 0.25), sq(0.8, 0.5, 0.2)});
    CHECK(!box_covered_by(Rat(0), Rat(1), Rat(1, 4), Rat(3, 4), gap));
    // covering a degenerate segment
    CHECK(box_covered_by(Rat(1, 2), Rat(1, 2), Rat(1, 4), Rat(3, 4), cover));
}

TEST_CASE("PixelIndex distance decisions agree with exact distances") {
    std::mt19937_64 rng(2024);
    PixelSet s = oracles::random_lattice_set(rng, 30);
    PixelIndex idx(s);
    for (int rep = 0; rep < 500; ++rep) {
        RatPoint p{oracles::random_dyadic(rng, 10, -1.0, 1.0),
                   oracles::random_dyadic(rng, 10, -1.0, 1.0)};
        Rat thr = oracles::random_dyadic(rng, 10, 0.0, 0.5);
        CHECK(idx.min_dist_greater(p, thr) == (set_point_dist(s, p) > thr));
    }
}

TEST_CASE("PixelIndex::ball_covered") {
    PixelSet cover = set_of({sq(0, 0, 0.5), sq(0.75, 0, 0.25)});
    PixelIndex idx(cover);
    CHECK(idx.ball_covered({Rat(0), Rat(0)}, Rat(1, 4)));
    CHECK(idx.ball_covered({Rat(1, 2), Rat(0)}, Rat(1, 4)));   // straddles both
    CHECK(!idx.ball_covered({Rat(3, 4), Rat(0)}, Rat(1, 2)));  // sticks out
}
