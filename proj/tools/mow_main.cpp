#include "mow/algebra.hpp"
#include "mow/error.hpp"
#include "mow/io.hpp"
#include "mow/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

namespace {

int exit_code_for(mow::errc c) {
    switch (c) {
    case mow::errc::degenerate_input:
    case mow::errc::parse_error:
        return 1;
    default:
        return 2;
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        mow::fail(mow::errc::degenerate_input, "cannot open '" + path + "' for writing");
    out << text;
}

int cmd_rasterize(const std::string& in, double cell, const std::string& out_path) {
    mow::Polygon poly = mow::load_polygon(in);
    mow::GridSpec spec = mow::choose_grid(poly, cell);
    mow::Polyomino pm = mow::rasterize(poly, spec);
    std::printf("pixels %zu\ncell %.17g\noffset %.17g %.17g\n", pm.size(), spec.cell_size,
                spec.offset_x, spec.offset_y);
    if (!out_path.empty())
        mow::save_polygon(out_path, mow::boundary_polygon(pm));
    return 0;
}

int cmd_solve(const std::string& in, const mow::SolveConfig& cfg, const std::string& tour_out,
              const std::string& svg_out) {
    mow::Polygon poly = mow::load_polygon(in);
    mow::SolveOutput out = mow::run_solve(cfg, poly);
    std::printf("solver %s\nlength %.9f\npixels %d\n", mow::solver_kind_name(cfg.solver),
                out.tour.length(), out.record.pixels);
    if (!out.lns_history.empty())
        std::printf("lns_final %.9f\n", out.lns_history.back());
    std::printf("%s", mow::coverage_report_text(out.coverage).c_str());
    if (!tour_out.empty())
        mow::save_tour(tour_out, out.tour.points);
    if (!svg_out.empty())
        write_text(svg_out, mow::render_svg(poly, out.tour.points));
    return out.coverage.ok() ? 0 : 2;
}

int cmd_bounds(const std::string& in, std::int64_t nodes, const std::string& export_path,
               const std::string& import_path) {
    mow::Polygon poly = mow::load_polygon(in);
    mow::GridGraph g = mow::build_dual(mow::rasterize(poly, mow::choose_grid(poly, 1.0)));
    mow::TileModel model = mow::build_model(g);
    if (!export_path.empty()) {
        write_text(export_path, mow::export_model(model));
        std::printf("model %zu vars %zu pixels\n", model.vars.size(), g.node_count());
        return 0;
    }
    if (!import_path.empty()) {
        std::ifstream f(import_path, std::ios::binary);
        if (!f)
            mow::fail(mow::errc::degenerate_input, "cannot read '" + import_path + "'");
        std::string text((std::istreambuf_iterator<char>(f)),
                         std::istreambuf_iterator<char>());
        std::vector<int> a = mow::import_solution(model, text);
        bool balanced = mow::assignment_balanced(model, a);
        bool connected = balanced && mow::assignment_connected(model, a);
        std::printf("objective %.9f\nbalanced %s\nconnected %s\n",
                    mow::assignment_objective(model, a), balanced ? "yes" : "no",
                    connected ? "yes" : "no");
        return balanced && connected ? 0 : 2;
    }
    mow::Bounds b = mow::lower_bounds(g, model, nodes);
    std::printf("area_lb %.9f\nip_lb %.9f\n", b.area_lb, b.ip_lb);
    if (b.best_ub < std::numeric_limits<double>::infinity())
        std::printf("best_ub %.9f\n", b.best_ub);
    else
        std::printf("best_ub none\n");
    return 0;
}

int cmd_verify(const std::string& in, const std::string& tour_path, double resolution) {
    mow::Polygon poly = mow::load_polygon(in);
    std::vector<mow::Point> tour = mow::load_tour(tour_path);
    mow::CoverageReport rep = mow::verify_coverage(tour, poly, resolution);
    std::printf("%s", mow::coverage_report_text(rep).c_str());
    return rep.ok() ? 0 : 2;
}

int cmd_render(const std::string& in, const std::string& tour_path,
               const std::string& out_path) {
    mow::Polygon poly = mow::load_polygon(in);
    std::vector<mow::Point> tour;
    if (!tour_path.empty())
        tour = mow::load_tour(tour_path);
    write_text(out_path, mow::render_svg(poly, tour));
    return 0;
}

int cmd_gen(int pixels, std::uint64_t seed, const std::string& out_path) {
    mow::Polygon poly = mow::generate_polyomino(pixels, seed);
    if (out_path.empty())
        mow::write_polygon(std::cout, poly);
    else
        mow::save_polygon(out_path, poly);
    return 0;
}

int cmd_bench(const std::string& dir, const mow::SolveConfig& cfg,
              const std::string& out_path) {
    mow::BenchSummary s = mow::run_bench(dir, cfg);
    std::string table = mow::bench_table(s);
    std::printf("%s", table.c_str());
    if (!out_path.empty())
        write_text(out_path, table);
    return 0;
}

int cmd_algebra_verify() {
    mow::CornerPolynomials polys = mow::builtin_polynomials();
    mow::Certificate cert =
        mow::certify_symmetric_group(polys.delta, {23, 47, 59});
    std::printf("%s", mow::certificate_table(cert).c_str());
    mow::CornerPathSolution corner = mow::solve_corner_path();
    long double residual = mow::relative_residual(polys.delta, corner.delta);
    std::printf("delta residual %.3Le\n", residual);
    return cert.certified && residual < 1e-8L ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lawn mowing tours on polygon instances"};
    app.require_subcommand(1);

    std::string in, out, tour_path;
    double cell = 1.0;
    mow::SolveConfig cfg;
    std::string solver_name = "tsp-turn";
    double resolution = 0.02;
    std::int64_t nodes = 2'000'000;
    int pixels = 16;
    std::uint64_t seed = 0;

    auto* rast = app.add_subcommand("rasterize", "Minimal covering pixel set of a polygon");
    rast->add_option("instance", in)->required();
    rast->add_option("--cell", cell, "Grid cell size");
    rast->add_option("-o,--out", out, "Write the pixel boundary polygon here");

    auto* solve = app.add_subcommand("solve", "Compute a mowing tour");
    solve->add_option("instance", in)->required();
    solve->add_option("--solver", solver_name, "tsp-small, tsp-cov or tsp-turn");
    solve->add_option("--seed", cfg.seed);
    solve->add_option("--tsp-moves", cfg.tsp_move_budget);
    solve->add_option("--lns-iterations", cfg.lns_iterations);
    solve->add_option("--resolution", cfg.verify_resolution, "Coverage check spacing");
    solve->add_option("--tour", tour_path, "Write the tour polyline here");
    solve->add_option("--svg", out, "Render the solution here");

    auto* bounds = app.add_subcommand("bounds", "Lower bounds and exact-search upper bound");
    std::string export_path, import_path;
    bounds->add_option("instance", in)->required();
    bounds->add_option("--nodes", nodes, "Search node budget");
    bounds->add_option("--export-model", export_path, "Write the tile model and exit");
    bounds->add_option("--import-solution", import_path, "Validate an external assignment");

    auto* verify = app.add_subcommand("verify", "Check that a tour covers an instance");
    verify->add_option("instance", in)->required();
    verify->add_option("tour", tour_path)->required();
    verify->add_option("--resolution", resolution);

    auto* render = app.add_subcommand("render", "Render instance and tour to SVG");
    render->add_option("instance", in)->required();
    render->add_option("tour", tour_path);
    render->add_option("-o,--out", out)->required();

    auto* gen = app.add_subcommand("gen", "Generate a random polyomino instance");
    gen->add_option("--pixels", pixels)->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed);
    gen->add_option("-o,--out", out);

    auto* bench = app.add_subcommand("bench", "Run all solvers over a directory");
    bench->add_option("dir", in)->required();
    bench->add_option("--seed", cfg.seed);
    bench->add_option("--lns-iterations", cfg.lns_iterations);
    bench->add_option("--wall-ceiling-ms", cfg.wall_ceiling_ms,
                      "Abort instances once this much time has passed (0 = off)");
    bench->add_option("-o,--out", out);

    auto* algebra = app.add_subcommand("algebra", "Algebraic-hardness checks");
    auto* algebra_verify = algebra->add_subcommand("verify", "Certify the corner-path Galois group");
    algebra->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (rast->parsed())
            return cmd_rasterize(in, cell, out);
        if (solve->parsed()) {
            cfg.solver = mow::parse_solver_kind(solver_name);
            return cmd_solve(in, cfg, tour_path, out);
        }
        if (bounds->parsed())
            return cmd_bounds(in, nodes, export_path, import_path);
        if (verify->parsed())
            return cmd_verify(in, tour_path, resolution);
        if (render->parsed())
            return cmd_render(in, tour_path, out);
        if (gen->parsed())
            return cmd_gen(pixels, seed, out);
        if (bench->parsed())
            return cmd_bench(in, cfg, out);
        if (algebra_verify->parsed())
            return cmd_algebra_verify();
    } catch (const mow::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
