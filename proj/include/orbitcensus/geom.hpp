#ifndef ORBITCENSUS_GEOM_HPP
#define ORBITCENSUS_GEOM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "orbitcensus/rational.hpp"

namespace orbitcensus {

// All grid geometry lives in the max-norm, where closed balls and
// axis-aligned squares coincide and every predicate is exact in rational
// arithmetic. Cells straddling the disk boundary are stored unclipped;
// membership tests intersect with the disk where the contract needs it.

enum class CellShape { square, ball };

struct Cell {
    RatPoint center;
    Rat radius;  // half side length
    CellShape shape = CellShape::square;

    Rat xlo() const { return center.x - radius; }
    Rat xhi() const { return center.x + radius; }
    Rat ylo() const { return center.y - radius; }
    Rat yhi() const { return center.y + radius; }
};

struct PixelSet {
    std::vector<Cell> cells;

    bool empty() const { return cells.empty(); }
    std::size_t size() const { return cells.size(); }

    // Sort lexicographically and drop duplicates.
    void normalize();

    // Every cell must intersect the closed unit disk.
    bool intersects_disk_everywhere() const;
};

// max-norm distance from a point to a single closed cell (0 if inside).
Rat cell_point_dist(const Cell& c, const RatPoint& p);

// max-norm distance from a point to the union (input must be non-empty).
Rat set_point_dist(const PixelSet& s, const RatPoint& p);

bool cell_contains(const Cell& c, const RatPoint& p);
bool set_contains(const PixelSet& s, const RatPoint& p);

// Closed boxes touch (shared boundary points count, including corners).
bool cells_touch(const Cell& a, const Cell& b);

// Does the closed box of `a` intersect the closed unit disk?
bool cell_intersects_disk(const Cell& a);

// Does it contain points strictly outside the open unit disk (i.e. touch or
// cross the boundary circle)?
bool cell_touches_circle(const Cell& a);

// Exact cover test: is the closed box [xlo,xhi]x[ylo,yhi] contained in the
// union of the cells? Recursive splitting along cell edges.
bool box_covered_by(const Rat& xlo, const Rat& xhi, const Rat& ylo, const Rat& yhi,
                    const PixelSet& cover);

struct Grid {
    Rat delta;  // positive spacing; the grid is clipped against the unit disk
};

// All points of (delta*Z)^2 with l2-norm <= 1 + delta.
std::vector<RatPoint> grid_points(const Grid& grid);

// Exact Hausdorff distance (max-norm) between two non-empty unions.
Rat hausdorff(const PixelSet& a, const PixelSet& b);

// Partition into geometrically connected components (adjacency includes
// corner contact). Deterministic: components ordered by smallest cell.
std::vector<PixelSet> connected_components(const PixelSet& s);

// Pixel over-approximation of closure(D - s) within the unit disk, built
// from grid squares of side `resolution`; Hausdorff error <= resolution.
PixelSet complement_closure(const PixelSet& s, const Rat& resolution);

// --- fast double-filtered spatial index -----------------------------------
//
// Census-scale queries go through this index: bucketed double arithmetic
// answers the easy cases, exact rational arithmetic settles anything within
// the safety margin.

class PixelIndex {
  public:
    PixelIndex() = default;
    explicit PixelIndex(const PixelSet& s);

    bool empty() const { return set_ == nullptr || set_->empty(); }
    const PixelSet& set() const { return *set_; }

    // Decide dist(p, set) > thr exactly.
    bool min_dist_greater(const RatPoint& p, const Rat& thr) const;
    bool min_dist_greater(double px, double py, const Rat& thr) const;

    // Double lower/upper bounds on dist(p, set), clamped at `cap`.
    double min_dist_approx(double px, double py, double cap) const;

    // Indices of cells whose padded box comes within `r` of p (superset).
    void nearby(double px, double py, double r, std::vector<int>& out) const;

    // Is the closed ball B(p, r) (max-norm) covered by the set? Exact.
    bool ball_covered(const RatPoint& p, const Rat& r) const;

  private:
    const PixelSet* set_ = nullptr;
    double pitch_ = 1.0;
    double x0_ = 0.0, y0_ = 0.0;
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<int>> buckets_;
    // padded double boxes per cell
    std::vector<double> bxlo_, bxhi_, bylo_, byhi_;

    int bucket_of(double x, double y) const;
};

}  // namespace orbitcensus

#endif
