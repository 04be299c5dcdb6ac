#pragma once

#include "mow/gridgraph.hpp"
#include "mow/tour.hpp"

#include <string>
#include <vector>

namespace mow {

// All piece geometry lives in pixel-local coordinates on the unit cell
// [0,1]^2. Transition points are the edge midpoints: bottom (1/2,0),
// right (1,1/2), top (1/2,1), left (0,1/2).

// Locally optimal 90-degree covering turn: shortest path from the bottom
// transition point to the right one that still reaches the far corner disk
// (radius 1/2 around (0,1)), so the whole pixel stays covered.
struct SimpleTurnSolution {
    Point q;       // tangent point on the corner circle
    double length; // |c_b q| + |q c_r|
};

// Locally optimal covering U-turn: enter and leave through the bottom
// transition point while touching both upper corner disks.
struct UTurnSolution {
    Point q1; // on the circle around (0,1)
    Point q2; // on the circle around (1,1)
    double length;
};

// Optimal corner path for the square-with-circle subproblem: run straight
// up from p_s=(1/2,0) by delta, leave to q on the circle of radius 1/2
// around (0,1), continue to p_t=(1,1/2+delta).
struct CornerPathSolution {
    double delta;
    Point q;
    Point p_delta; // (1/2, delta)
    Point p_t;     // (1, 1/2 + delta)
    double total_length;
};

SimpleTurnSolution solve_simple_turn(double tol = 1e-9);
UTurnSolution solve_u_turn(double tol = 1e-9);
CornerPathSolution solve_corner_path(double tol = 1e-10);

// Memoized results; these back tile_length().
const SimpleTurnSolution& simple_turn_constants();
const UTurnSolution& u_turn_constants();

enum class Side { Bottom = 0, Right = 1, Top = 2, Left = 3 };

// Side of `pixel` that faces the adjacent pixel `neighbor`. Throws
// errc::infeasible_walk when the two are not 4-adjacent.
Side side_towards(const GridGraph& g, NodeId pixel, NodeId neighbor);

// Local waypoints of a tile entering through in_side and leaving through
// out_side. Cover turns and U-turns are dihedral placements of the
// canonical optimizer output; all placements have identical length.
std::vector<Point> place_piece(TileKind kind, Side in_side, Side out_side);

// Feasible mowing tour assembled from per-visit pieces.
struct MowingTour {
    GridTour base;               // normalized closed walk
    std::vector<TileKind> tiles; // one tile per visit
    std::vector<Point> polyline; // closed (wrap back to front)
    double length = 0.0;         // equals the tile length sum
};

// Turns a closed grid walk into a feasible mowing tour. Redundant U-turn
// excursions into already-visited pixels are removed first (they never
// help); afterwards every pixel gets exactly one covering tile: pixels
// reached by a U-turn are covered there, every visit directly following a
// U-turn is a pass, all other pixels are covered on their first eligible
// visit. Requires a unit grid. Throws errc::infeasible_walk when
// consecutive visits are not adjacent.
MowingTour splice(const GridTour& t, const GridGraph& g);

struct CoverageReport {
    struct Miss {
        Point p;
        double distance;
    };
    std::vector<Miss> uncovered;
    double max_violation = 0.0; // max distance excess over 1/2 among misses

    bool ok() const { return uncovered.empty(); }
};

// Samples the polygon on a grid of the given resolution (plus all polygon
// vertices) and reports every sample farther than 1/2 (+1e-9 slack) from
// the tour polyline.
CoverageReport verify_coverage(const std::vector<Point>& tour, const Polygon& poly,
                               double resolution);

// Text form: "uncovered k" then k lines "x y dist".
std::string coverage_report_text(const CoverageReport& r);

} // namespace mow
