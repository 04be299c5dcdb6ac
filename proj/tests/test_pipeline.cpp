#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mow/error.hpp"
#include "mow/io.hpp"
#include "mow/pipeline.hpp"
#include "support.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace mow;

namespace {

Polygon square2x2() {
    Polygon p;
    p.outer = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    return p;
}

// Everything except the timing column and the error text must be stable
// across repeated runs with the same seeds and budgets.
bool records_equal_modulo_wall(const BenchRecord& a, const BenchRecord& b) {
    return a.id == b.id && a.pixels == b.pixels && a.relative_area == b.relative_area &&
           a.len_small == b.len_small && a.len_cov == b.len_cov && a.len_turn == b.len_turn &&
           a.modification_cost_pct == b.modification_cost_pct &&
           a.reduction_vs_small_pct == b.reduction_vs_small_pct && a.area_lb == b.area_lb &&
           a.ip_lb == b.ip_lb && a.error == b.error;
}

} // namespace

TEST_CASE("solver kind names round trip") {
    for (SolverKind k : {SolverKind::TspSmall, SolverKind::TspCov, SolverKind::TspTurn})
        CHECK(parse_solver_kind(solver_kind_name(k)) == k);
    CHECK(std::string(solver_kind_name(SolverKind::TspCov)) == "tsp-cov");
    CHECK_THROWS_AS(parse_solver_kind("annealing"), error);
}

TEST_CASE("random polyomino generation is seeded and sized") {
    Polygon a = generate_polyomino(30, 7);
    Polygon b = generate_polyomino(30, 7);
    REQUIRE(a.outer.size() == b.outer.size());
    for (std::size_t i = 0; i < a.outer.size(); ++i) {
        CHECK(a.outer[i].x == b.outer[i].x);
        CHECK(a.outer[i].y == b.outer[i].y);
    }
    CHECK(std::fabs(a.area() - 30.0) < 1e-9);

    Polyomino pm = rasterize(generate_polyomino(50, 11), GridSpec{1.0, 0.0, 0.0});
    CHECK(pm.size() == 50);

    Polygon unit = generate_polyomino(1, 3);
    CHECK(unit.outer.size() == 4);
    CHECK(std::fabs(unit.area() - 1.0) < 1e-12);

    CHECK_THROWS_AS(generate_polyomino(0, 1), error);
}

TEST_CASE("pipeline on the 2x2 block hits the four-turn tour") {
    Polygon poly = square2x2();
    SolveConfig cfg;
    cfg.solver = SolverKind::TspCov;
    cfg.seed = 1;
    SolveOutput cov = run_solve(cfg, poly);
    CHECK(cov.record.pixels == 4);
    CHECK(std::fabs(cov.record.len_cov - 4 * 1.32566) < 1e-3);
    CHECK(cov.record.len_small == 0.0);
    CHECK(cov.base_grid_length == 4.0);
    CHECK(cov.coverage.ok());
    REQUIRE(cov.mowing.has_value());
    CHECK(std::fabs(cov.mowing->length - cov.record.len_cov) < 1e-12);

    cfg.solver = SolverKind::TspTurn;
    SolveOutput turn = run_solve(cfg, poly);
    CHECK(std::fabs(turn.record.len_turn - 4 * 1.32566) < 1e-3);
    CHECK(turn.record.len_turn <= cov.record.len_cov + 1e-9);
    CHECK(turn.coverage.ok());
    REQUIRE(!turn.lns_history.empty());
    for (std::size_t i = 1; i < turn.lns_history.size(); ++i)
        CHECK(turn.lns_history[i] <= turn.lns_history[i - 1] + 1e-9);

    cfg.solver = SolverKind::TspSmall;
    SolveOutput small = run_solve(cfg, poly);
    CHECK(small.record.len_small > turn.record.len_turn);
    CHECK(small.coverage.ok());
    CHECK(!small.mowing.has_value());
    CHECK(small.record.relative_area == doctest::Approx(4.0 / std::atan(1.0)));
}

TEST_CASE("all three solvers cover a random instance") {
    Polygon poly = generate_polyomino(14, 23);
    SolveConfig cfg;
    cfg.seed = 23;
    cfg.lns_iterations = 12;
    for (SolverKind k : {SolverKind::TspSmall, SolverKind::TspCov, SolverKind::TspTurn}) {
        cfg.solver = k;
        SolveOutput out = run_solve(cfg, poly);
        CHECK(out.coverage.ok());
        CHECK(out.tour.length() > 0.0);
    }
}

TEST_CASE("svg rendering") {
    Polygon poly = square2x2();
    SolveConfig cfg;
    cfg.solver = SolverKind::TspCov;
    SolveOutput out = run_solve(cfg, poly);
    std::string svg = render_svg(poly, out.tour.points);
    CHECK(svg.find("<svg ") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    // one outline path, one band path, one tour polyline
    std::size_t first = svg.find("<polyline");
    REQUIRE(first != std::string::npos);
    CHECK(svg.find("<polyline", first + 1) == std::string::npos);
    CHECK(svg.find("stroke-linecap=\"round\"") != std::string::npos);
    // the band is drawn before (under) the tour line
    CHECK(svg.find("stroke-linecap=\"round\"") < first);

    std::string bare = render_svg(poly, {});
    CHECK(bare.find("<polyline") == std::string::npos);
    CHECK(bare.find("<path") != std::string::npos);
}

TEST_CASE("bench run is reproducible apart from wall time") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path("bench_tmp_test");
    fs::remove_all(dir);
    fs::create_directories(dir);
    save_polygon((dir / "a.poly").string(), generate_polyomino(6, 1));
    save_polygon((dir / "b.poly").string(), generate_polyomino(9, 2));

    SolveConfig cfg;
    cfg.seed = 5;
    cfg.tsp_move_budget = 50'000;
    cfg.lns_iterations = 8;
    cfg.ip_node_budget = 50'000;

    BenchSummary s1 = run_bench(dir.string(), cfg);
    REQUIRE(s1.records.size() == 2);
    CHECK(s1.failures == 0);
    CHECK(s1.records[0].id == "a.poly");
    CHECK(s1.records[1].id == "b.poly");
    for (const BenchRecord& r : s1.records) {
        CHECK(r.error.empty());
        CHECK(r.len_turn <= r.len_cov + 1e-9);
        CHECK(r.area_lb <= r.ip_lb + 1e-9);
        CHECK(r.ip_lb <= r.len_turn + 1e-9);
        CHECK(r.len_small > 0.0);
    }

    BenchSummary s2 = run_bench(dir.string(), cfg);
    REQUIRE(s2.records.size() == s1.records.size());
    for (std::size_t i = 0; i < s1.records.size(); ++i)
        CHECK(records_equal_modulo_wall(s1.records[i], s2.records[i]));
    CHECK(s1.mean_modification_pct == s2.mean_modification_pct);
    CHECK(s1.mean_reduction_pct == s2.mean_reduction_pct);

    std::string table = bench_table(s1);
    CHECK(table.find("id\tpixels\t") == 0);
    CHECK(table.find("a.poly\t") != std::string::npos);
    CHECK(table.find("# failures 0") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("bench wall ceiling trips instances into failures") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path("bench_tmp_ceiling");
    fs::remove_all(dir);
    fs::create_directories(dir);
    save_polygon((dir / "a.poly").string(), generate_polyomino(6, 1));
    save_polygon((dir / "b.poly").string(), generate_polyomino(6, 2));

    SolveConfig cfg;
    cfg.wall_ceiling_ms = 1e-9; // already exceeded when the first instance starts
    BenchSummary s = run_bench(dir.string(), cfg);
    REQUIRE(s.records.size() == 2);
    CHECK(s.failures == 2);
    for (const BenchRecord& r : s.records)
        CHECK(r.error == "wall ceiling reached");

    fs::remove_all(dir);
}

TEST_CASE("bench records a parse failure and keeps going") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path("bench_tmp_bad");
    fs::remove_all(dir);
    fs::create_directories(dir);
    save_polygon((dir / "good.poly").string(), generate_polyomino(6, 4));
    {
        std::ofstream bad(dir / "broken.poly");
        bad << "3 zero\n0 0\n1 0\n1 1\n";
    }

    SolveConfig cfg;
    cfg.tsp_move_budget = 50'000;
    cfg.lns_iterations = 4;
    BenchSummary s = run_bench(dir.string(), cfg);
    REQUIRE(s.records.size() == 2);
    CHECK(s.failures == 1);
    CHECK(s.records[0].id == "broken.poly");
    CHECK(!s.records[0].error.empty());
    CHECK(s.records[1].error.empty());

    fs::remove_all(dir);
}
