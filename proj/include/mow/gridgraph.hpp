#pragma once

#include "mow/geometry.hpp"

#include <cstdint>
#include <vector>

namespace mow {

using NodeId = int;

// One tour fragment through a single pixel. Cover tiles trace the locally
// shortest path that keeps the whole pixel within reach of the unit-diameter
// disk; pass tiles just connect the two transition points. A non-covering
// U-turn (enter and leave through the same transition point) is deliberately
// not a tile kind: it would have zero length and can never strictly improve
// a solution, it only introduces degenerate cycles.
enum class TileKind {
    CoverStraight,
    CoverTurn,
    CoverUTurn,
    PassStraight,
    PassTurn,
};

const char* tile_kind_name(TileKind k);

// Length of the tile polyline for a unit cell. Cover lengths are the optima
// computed by the piece solvers (memoized on first use), pass lengths are
// the straight-line distances between edge midpoints.
double tile_length(TileKind k);

// 4-adjacency dual of a polyomino. Node v corresponds to pixel pixels[v];
// nodes are row-major so ids are deterministic. Every edge carries the
// midpoint of the shared cell side (the transition point), equidistant from
// both pixel centers.
struct GridGraph {
    GridSpec grid;
    std::vector<PixelCoord> pixels;           // row-major
    std::vector<std::vector<NodeId>> adj;     // sorted neighbor lists
    std::vector<std::pair<NodeId, NodeId>> edges; // u < v, sorted
    std::vector<bool> in_region;              // pixel intersects the input region

    std::size_t node_count() const { return pixels.size(); }
    std::size_t edge_count() const { return edges.size(); }

    NodeId node_at(int i, int j) const;           // -1 when absent
    int edge_index(NodeId u, NodeId v) const;     // -1 when not adjacent
    Point transition_point(NodeId u, NodeId v) const;
    Point pixel_center(NodeId v) const;
    Point pixel_origin(NodeId v) const;
};

// Builds the dual graph. Throws errc::disconnected when the pixel set is
// not 4-connected (a tour could never reach every pixel).
GridGraph build_dual(const Polyomino& pm);

} // namespace mow
