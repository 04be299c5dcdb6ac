#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mow/error.hpp"
#include "mow/gridgraph.hpp"
#include "mow/pieces.hpp"
#include "support.hpp"

#include <cmath>

using namespace mow;
using testsupport::all_polyominoes;
using testsupport::dual_of;

TEST_CASE("reference duals") {
    GridGraph block = dual_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(block.node_count() == 4);
    CHECK(block.edge_count() == 4); // a 4-cycle
    for (NodeId v = 0; v < 4; ++v)
        CHECK(block.adj[v].size() == 2);

    GridGraph strip = dual_of({{0, 0}, {1, 0}, {2, 0}});
    CHECK(strip.node_count() == 3);
    CHECK(strip.edge_count() == 2);

    GridGraph l3 = dual_of({{0, 0}, {1, 0}, {1, 1}});
    CHECK(l3.node_count() == 3);
    CHECK(l3.edge_count() == 2);
    Point t1 = l3.transition_point(l3.node_at(0, 0), l3.node_at(1, 0));
    Point t2 = l3.transition_point(l3.node_at(1, 0), l3.node_at(1, 1));
    CHECK(std::fabs(t1.x - 1.0) < 1e-12);
    CHECK(std::fabs(t1.y - 0.5) < 1e-12);
    CHECK(std::fabs(t2.x - 1.5) < 1e-12);
    CHECK(std::fabs(t2.y - 1.0) < 1e-12);
}

TEST_CASE("edge count stays below twice the node count") {
    for (int n = 1; n <= 7; ++n)
        for (const auto& cells : all_polyominoes(n)) {
            GridGraph g = dual_of(cells);
            CHECK(g.edge_count() <= 2 * g.node_count());
        }
}

TEST_CASE("transition points are equidistant from both pixel centers") {
    for (int n = 2; n <= 6; ++n)
        for (const auto& cells : all_polyominoes(n)) {
            GridGraph g = dual_of(cells);
            for (auto [u, v] : g.edges) {
                Point t = g.transition_point(u, v);
                CHECK(std::fabs(dist(t, g.pixel_center(u)) - 0.5) < 1e-12);
                CHECK(std::fabs(dist(t, g.pixel_center(v)) - 0.5) < 1e-12);
            }
        }
}

TEST_CASE("tile lengths come from the piece optimizers") {
    CHECK(tile_length(TileKind::CoverStraight) == 1.0);
    CHECK(tile_length(TileKind::PassStraight) == 1.0);
    CHECK(std::fabs(tile_length(TileKind::PassTurn) - std::sqrt(0.5)) < 1e-15);
    CHECK(tile_length(TileKind::CoverTurn) == simple_turn_constants().length);
    CHECK(tile_length(TileKind::CoverUTurn) == u_turn_constants().length);
}

TEST_CASE("node and edge lookups") {
    GridGraph g = dual_of({{0, 0}, {1, 0}, {2, 0}, {2, 1}});
    for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v)
        CHECK(g.node_at(g.pixels[v].first, g.pixels[v].second) == v);
    CHECK(g.node_at(5, 5) == -1);
    NodeId a = g.node_at(0, 0), b = g.node_at(1, 0), c = g.node_at(2, 1);
    CHECK(g.edge_index(a, b) == g.edge_index(b, a));
    CHECK(g.edge_index(a, b) >= 0);
    CHECK(g.edge_index(a, c) == -1);
}

TEST_CASE("degenerate pixel sets are rejected") {
    try {
        dual_of({{0, 0}, {2, 0}});
        FAIL("expected a disconnected error");
    } catch (const error& e) {
        CHECK(e.code() == errc::disconnected);
    }
    try {
        build_dual(Polyomino{});
        FAIL("expected a degenerate-input error");
    } catch (const error& e) {
        CHECK(e.code() == errc::degenerate_input);
    }
}
