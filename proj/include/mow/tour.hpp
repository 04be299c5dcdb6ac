#pragma once

#include "mow/gridgraph.hpp"

#include <cstdint>
#include <vector>

namespace mow {

// Closed walk in the dual graph: consecutive visits (including the wrap)
// are adjacent pixels, and every pixel appears at least once. Grid length
// is the number of visits, each step moving one cell.
struct GridTour {
    std::vector<NodeId> visits;

    std::size_t length() const { return visits.size(); }
};

// Closed tour through explicit plane points (the small-grid baseline).
struct PointTour {
    std::vector<Point> points;

    double length() const;
};

// Euclidean length of the closed polygonal tour, closing segment included.
double tour_length(const std::vector<Point>& points);

// Shortest-path metric closure of the dual graph (unit BFS distances), plus
// path reconstruction. Deterministic: ties resolved toward smaller node ids.
struct GridMetric {
    std::vector<std::vector<int>> dist;

    explicit GridMetric(const GridGraph& g);
    std::vector<NodeId> path(const GridGraph& g, NodeId from, NodeId to) const;
};

// Heuristic closed walk visiting all pixels: nearest-neighbor construction
// over the BFS metric, improved by 2-opt and Or-opt (first improvement,
// seeded shuffle of the move order), then expanded along shortest paths.
// The move budget makes runs reproducible; it counts attempted moves.
GridTour grid_tsp(const GridGraph& g, std::uint64_t seed, std::int64_t move_budget = 2'000'000);

// Exact minimum closed walk via Held-Karp over the metric closure.
// Throws errc::too_large above 16 pixels.
GridTour grid_tsp_exact(const GridGraph& g);

// Baseline solver: rasterize with cell size sqrt(2)/2 (disk of diameter 1
// covers such a cell from its center), then a Euclidean nearest-neighbor +
// 2-opt + Or-opt tour over the cell centers.
PointTour tsp_small(const Polygon& poly, std::uint64_t seed,
                    std::int64_t move_budget = 2'000'000);

} // namespace mow
