#include "mow/gridgraph.hpp"
#include "mow/error.hpp"
#include "mow/pieces.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mow {

const char* tile_kind_name(TileKind k) {
    switch (k) {
    case TileKind::CoverStraight: return "cover_straight";
    case TileKind::CoverTurn: return "cover_turn";
    case TileKind::CoverUTurn: return "cover_uturn";
    case TileKind::PassStraight: return "pass_straight";
    case TileKind::PassTurn: return "pass_turn";
    }
    return "?";
}

double tile_length(TileKind k) {
    switch (k) {
    case TileKind::CoverStraight: return 1.0;
    case TileKind::CoverTurn: return simple_turn_constants().length;
    case TileKind::CoverUTurn: return u_turn_constants().length;
    case TileKind::PassStraight: return 1.0;
    case TileKind::PassTurn: return std::sqrt(0.5);
    }
    return 0.0;
}

NodeId GridGraph::node_at(int i, int j) const {
    PixelCoord key{i, j};
    auto rowmajor = [](const PixelCoord& a, const PixelCoord& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    };
    auto it = std::lower_bound(pixels.begin(), pixels.end(), key, rowmajor);
    if (it == pixels.end() || *it != key) return -1;
    return NodeId(it - pixels.begin());
}

int GridGraph::edge_index(NodeId u, NodeId v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair<NodeId, NodeId>{u, v});
    if (it == edges.end() || *it != std::pair<NodeId, NodeId>{u, v}) return -1;
    return int(it - edges.begin());
}

Point GridGraph::transition_point(NodeId u, NodeId v) const {
    Point cu = pixel_center(u);
    Point cv = pixel_center(v);
    return {0.5 * (cu.x + cv.x), 0.5 * (cu.y + cv.y)};
}

Point GridGraph::pixel_center(NodeId v) const {
    return grid.cell_center(pixels[v].first, pixels[v].second);
}

Point GridGraph::pixel_origin(NodeId v) const {
    return grid.cell_origin(pixels[v].first, pixels[v].second);
}

GridGraph build_dual(const Polyomino& pm) {
    if (pm.pixels.empty()) fail(errc::degenerate_input, "empty polyomino");
    if (!pixels_connected(pm.pixels)) fail(errc::disconnected, "pixel set is not 4-connected");

    GridGraph g;
    g.grid = pm.grid;
    g.pixels = pm.pixels;
    std::sort(g.pixels.begin(), g.pixels.end(), [](const PixelCoord& a, const PixelCoord& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    g.in_region.assign(g.pixels.size(), true);
    g.adj.resize(g.pixels.size());

    for (NodeId v = 0; v < (NodeId)g.pixels.size(); ++v) {
        auto [i, j] = g.pixels[v];
        const PixelCoord nbrs[4] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        for (const auto& n : nbrs) {
            NodeId u = g.node_at(n.first, n.second);
            if (u >= 0) g.adj[v].push_back(u);
        }
        std::sort(g.adj[v].begin(), g.adj[v].end());
        for (NodeId u : g.adj[v])
            if (v < u) g.edges.push_back({v, u});
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

} // namespace mow
