#pragma once

#include "mow/gridgraph.hpp"
#include "mow/pieces.hpp"
#include "mow/tour.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mow {

// One tile variable: a tile in `pixel` whose two ends sit on the transition
// points towards neighbors u and w (u == w only for the covering U-turn).
// Covering variables are binary, pass variables are nonnegative integers.
// `fixed` >= 0 pins the variable to that value (used to freeze everything
// outside an optimization window).
struct TileVar {
    TileKind kind;
    NodeId pixel;
    NodeId u, w; // u <= w
    double length;
    bool covering;
    int fixed = -1;
};

// Tile selection problem over a dual grid graph: pick exactly one covering
// tile per pixel and any multiset of pass tiles such that at every
// transition point the number of tile ends on one side equals the number on
// the other (then the tiles concatenate into closed curves).
struct TileModel {
    const GridGraph* graph = nullptr;
    std::vector<TileVar> vars;
    std::vector<std::vector<int>> cover_of; // per pixel: covering var ids
    std::vector<std::vector<int>> pass_of;  // per pixel: pass var ids

    // Per dual edge: the two sides of its balance equation as
    // (var id, coefficient) terms. A U-turn contributes coefficient 2.
    struct FlowRow {
        std::vector<std::pair<int, int>> lhs; // ends in pixel edges[e].first
        std::vector<std::pair<int, int>> rhs; // ends in pixel edges[e].second
    };
    std::vector<FlowRow> flow;

    int var_id(NodeId pixel, NodeId a, NodeId b, bool covering) const; // -1 if absent
};

// fixed: (var id, value) pairs; covering values must be 0 or 1.
TileModel build_model(const GridGraph& g, const std::vector<std::pair<int, int>>& fixed = {});

enum class SolveStatus { Optimal, Feasible, Infeasible, BudgetExceeded };
const char* solve_status_name(SolveStatus s);

struct TileSolution {
    std::vector<int> assignment; // per var id
    double objective = 0.0;
    SolveStatus status = SolveStatus::Infeasible;
    double bound = 0.0;        // proven lower bound
    std::int64_t nodes = 0;    // search nodes spent
};

// Depth-first branch and bound over the covering choices with lazy subtour
// cuts; pass completion at the leaves is solved exactly. `warm` may carry a
// known feasible assignment (used as the starting incumbent). Deterministic.
TileSolution solve_exact(const TileModel& m, std::int64_t node_budget,
                         const std::vector<int>* warm = nullptr);

double assignment_objective(const TileModel& m, const std::vector<int>& a);
// Both sides of every balance row agree.
bool assignment_balanced(const TileModel& m, const std::vector<int>& a);
// All chosen tiles form one connected multigraph through shared
// transition points.
bool assignment_connected(const TileModel& m, const std::vector<int>& a);

// Balanced + connected assignment -> concrete closed tour of placed pieces.
MowingTour decode_solution(const TileModel& m, const std::vector<int>& a);
// Inverse: per-visit tiles of a mowing tour -> variable values.
std::vector<int> encode_tour(const TileModel& m, const MowingTour& t);

// Large neighborhood search: repeatedly re-optimizes a window of pixels
// around a randomly picked tile of the current tour (everything else
// fixed), keeping strict improvements. The window starts at 8 pixels and
// grows/shrinks with solver effort. When the instance has at most 24 pixels
// a final whole-instance solve is attempted. `objective_history`, when
// given, receives the accepted objective after every iteration.
MowingTour lns_improve(const MowingTour& start, const GridGraph& g, std::uint64_t seed,
                       int iteration_budget, std::vector<double>* objective_history = nullptr);

struct Bounds {
    double area_lb = 0.0;
    double ip_lb = 0.0;
    double best_ub = 0.0;
};

// area_lb = pixel count; ip_lb = per-pixel cheapest covering tile, summed
// (a relaxation: every solution pays at least that per pixel); best_ub =
// best feasible tour found within the budget.
Bounds lower_bounds(const GridGraph& g, const TileModel& m, std::int64_t node_budget);

// Text form of the model: `var <id> <kind> <pixel> <u> <w> <length>` per
// variable, `cover <pixel> <ids...>` per pixel, and
// `flow <edge> <lhs ids> | <rhs ids>` per dual edge (an id listed twice
// has coefficient 2).
std::string export_model(const TileModel& m);

// Parses `set <id> <value>` lines into a full assignment (unmentioned
// variables default to their fixed value or 0). Throws errc::parse_error
// on malformed input or values conflicting with fixed variables.
std::vector<int> import_solution(const TileModel& m, const std::string& text);

} // namespace mow
