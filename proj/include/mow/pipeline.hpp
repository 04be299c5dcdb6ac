#pragma once

#include "mow/pieces.hpp"
#include "mow/turnopt.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mow {

enum class SolverKind { TspSmall, TspCov, TspTurn };

const char* solver_kind_name(SolverKind k);
SolverKind parse_solver_kind(const std::string& name); // throws errc::parse_error

struct SolveConfig {
    SolverKind solver = SolverKind::TspTurn;
    std::uint64_t seed = 0;
    std::int64_t tsp_move_budget = 2'000'000;
    int lns_iterations = 64;
    std::int64_t ip_node_budget = 2'000'000;
    double verify_resolution = 0.02;
    // Safety net for long bench runs: once exceeded, remaining instances are
    // recorded as failed instead of solved. 0 disables. All real budgets are
    // deterministic unit counts; results stay reproducible when this never
    // triggers.
    double wall_ceiling_ms = 0.0;
};

struct BenchRecord {
    std::string id;
    int pixels = 0;
    double relative_area = 0.0; // hull area over cutter area pi/4
    double len_small = 0.0;
    double len_cov = 0.0;
    double len_turn = 0.0;
    double modification_cost_pct = 0.0;  // piece overhead vs. the grid roundtrip
    double reduction_vs_small_pct = 0.0; // best length vs. the small-grid baseline
    double area_lb = 0.0;
    double ip_lb = 0.0;
    double wall_ms = 0.0;
    std::string error; // nonempty when the instance failed
};

struct SolveOutput {
    PointTour tour;                    // closed world-coordinate polyline
    std::optional<MowingTour> mowing;  // set for tsp-cov and tsp-turn
    CoverageReport coverage;
    std::vector<double> lns_history;   // objective after each LNS iteration
    double base_grid_length = 0.0;     // unit-grid roundtrip length before splicing
    BenchRecord record;
};

// End-to-end pipeline for one solver. tsp-small tours the sqrt(2)/2 grid
// directly; tsp-cov rasterizes at cell size 1 and splices puzzle pieces
// onto a heuristic grid roundtrip; tsp-turn additionally runs the
// neighborhood search on the tile model. The returned coverage report is
// computed at cfg.verify_resolution.
SolveOutput run_solve(const SolveConfig& cfg, const Polygon& instance);

// Seeded random connected polyomino (frontier growth), returned as its
// boundary polygon on the integer unit grid.
Polygon generate_polyomino(int n_pixels, std::uint64_t seed);

// SVG with the polygon outline, the coverage band (stroke of width 1,
// round caps and joins) underneath, and the tour polyline on top.
std::string render_svg(const Polygon& instance, const std::vector<Point>& tour);

struct BenchSummary {
    std::vector<BenchRecord> records;
    double mean_modification_pct = 0.0;
    double ci95_modification_pct = 0.0; // half-width
    double mean_reduction_pct = 0.0;
    double ci95_reduction_pct = 0.0;
    int failures = 0;
};

// Runs all three solvers on every instance file in the directory (sorted by
// filename). Per-instance failures are recorded and the run continues.
BenchSummary run_bench(const std::string& dir, const SolveConfig& cfg);

// Tab-separated table, fixed header, floats with 6 decimals; aggregate
// lines appended.
std::string bench_table(const BenchSummary& s);

} // namespace mow
