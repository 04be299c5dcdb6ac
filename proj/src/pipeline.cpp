#include "mow/pipeline.hpp"

#include "mow/error.hpp"
#include "mow/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

namespace mow {

const char* solver_kind_name(SolverKind k) {
    switch (k) {
    case SolverKind::TspSmall: return "tsp-small";
    case SolverKind::TspCov: return "tsp-cov";
    case SolverKind::TspTurn: return "tsp-turn";
    }
    return "?";
}

SolverKind parse_solver_kind(const std::string& name) {
    if (name == "tsp-small")
        return SolverKind::TspSmall;
    if (name == "tsp-cov")
        return SolverKind::TspCov;
    if (name == "tsp-turn")
        return SolverKind::TspTurn;
    fail(errc::parse_error, "unknown solver '" + name + "'");
}

SolveOutput run_solve(const SolveConfig& cfg, const Polygon& instance) {
    SolveOutput out;
    const auto t0 = std::chrono::steady_clock::now();

    if (cfg.solver == SolverKind::TspSmall) {
        out.tour = tsp_small(instance, cfg.seed, cfg.tsp_move_budget);
        out.record.len_small = out.tour.length();
    } else {
        GridSpec spec = choose_grid(instance, 1.0);
        Polyomino pm = rasterize(instance, spec);
        GridGraph g = build_dual(pm);
        out.record.pixels = static_cast<int>(pm.size());

        GridTour base = grid_tsp(g, cfg.seed, cfg.tsp_move_budget);
        MowingTour mt = splice(base, g);
        out.base_grid_length = static_cast<double>(mt.base.visits.size());

        if (cfg.solver == SolverKind::TspTurn)
            mt = lns_improve(mt, g, cfg.seed, cfg.lns_iterations, &out.lns_history);

        out.tour.points = mt.polyline;
        (cfg.solver == SolverKind::TspCov ? out.record.len_cov : out.record.len_turn) =
            mt.length;
        out.mowing = std::move(mt);
    }

    out.record.relative_area = convex_hull_area(instance) / (std::atan(1.0)); // pi/4
    out.coverage = verify_coverage(out.tour.points, instance, cfg.verify_resolution);

    const auto t1 = std::chrono::steady_clock::now();
    out.record.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return out;
}

Polygon generate_polyomino(int n_pixels, std::uint64_t seed) {
    if (n_pixels < 1)
        fail(errc::degenerate_input, "pixel count must be positive");
    std::mt19937_64 rng(seed ^ 0x8f1bbcdcbfa53e0bULL);
    std::set<PixelCoord> cells{{0, 0}};
    std::vector<PixelCoord> frontier{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    while (static_cast<int>(cells.size()) < n_pixels) {
        std::size_t pick = static_cast<std::size_t>(rng() % frontier.size());
        PixelCoord c = frontier[pick];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
        if (!cells.insert(c).second)
            continue;
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            PixelCoord nb{c.first + di[k], c.second + dj[k]};
            if (!cells.count(nb))
                frontier.push_back(nb);
        }
    }
    Polyomino pm;
    pm.grid = GridSpec{1.0, 0.0, 0.0};
    pm.pixels.assign(cells.begin(), cells.end());
    std::sort(pm.pixels.begin(), pm.pixels.end(), [](PixelCoord a, PixelCoord b) {
        return std::pair(a.second, a.first) < std::pair(b.second, b.first);
    });
    return boundary_polygon(pm);
}

namespace {

struct SvgMapper {
    double minx, maxy, scale, margin;
    double x(double wx) const { return (wx - minx) * scale + margin; }
    double y(double wy) const { return (maxy - wy) * scale + margin; }
};

void append_ring(std::ostringstream& os, const std::vector<Point>& ring, const SvgMapper& m) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
        os << (i == 0 ? "M" : "L") << m.x(ring[i].x) << ' ' << m.y(ring[i].y) << ' ';
    }
    os << "Z ";
}

} // namespace

std::string render_svg(const Polygon& instance, const std::vector<Point>& tour) {
    Point lo, hi;
    instance.bounding_box(lo, hi);
    for (const Point& p : tour) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    lo.x -= 1.0;
    lo.y -= 1.0;
    hi.x += 1.0;
    hi.y += 1.0;

    const double scale = 48.0;
    const double margin = 8.0;
    SvgMapper m{lo.x, hi.y, scale, margin};
    const double w = (hi.x - lo.x) * scale + 2 * margin;
    const double h = (hi.y - lo.y) * scale + 2 * margin;

    std::ostringstream os;
    os.precision(8);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";

    os << "  <path d=\"";
    append_ring(os, instance.outer, m);
    for (const auto& hole : instance.holes)
        append_ring(os, hole, m);
    os << "\" fill=\"#dcedc8\" fill-rule=\"evenodd\" stroke=\"#33691e\" stroke-width=\"1.5\"/>\n";

    if (!tour.empty()) {
        std::ostringstream band;
        band.precision(8);
        append_ring(band, tour, m);
        std::ostringstream pts;
        pts.precision(8);
        for (const Point& p : tour)
            pts << m.x(p.x) << ',' << m.y(p.y) << ' ';
        pts << m.x(tour.front().x) << ',' << m.y(tour.front().y);

        // coverage band: the tour swept with the unit-diameter cutter
        os << "  <path d=\"" << band.str()
           << "\" fill=\"none\" stroke=\"#90caf9\" stroke-opacity=\"0.6\" stroke-width=\""
           << scale << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
        os << "  <polyline points=\"" << pts.str()
           << "\" fill=\"none\" stroke=\"#0d47a1\" stroke-width=\"2\" "
              "stroke-linejoin=\"round\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

namespace {

double mean_of(const std::vector<double>& v) {
    if (v.empty())
        return 0.0;
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double ci95_of(const std::vector<double>& v) {
    if (v.size() < 2)
        return 0.0;
    double mu = mean_of(v);
    double ss = 0.0;
    for (double x : v)
        ss += (x - mu) * (x - mu);
    double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    return 1.96 * sd / std::sqrt(static_cast<double>(v.size()));
}

} // namespace

BenchSummary run_bench(const std::string& dir, const SolveConfig& cfg) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file())
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    BenchSummary summary;
    const auto bench_start = std::chrono::steady_clock::now();
    for (const fs::path& file : files) {
        BenchRecord rec;
        rec.id = file.filename().string();
        const auto t0 = std::chrono::steady_clock::now();
        if (cfg.wall_ceiling_ms > 0.0 &&
            std::chrono::duration<double, std::milli>(t0 - bench_start).count() >
                cfg.wall_ceiling_ms) {
            rec.error = "wall ceiling reached";
            ++summary.failures;
            summary.records.push_back(std::move(rec));
            continue;
        }
        try {
            Polygon poly = load_polygon(file.string());

            SolveConfig c = cfg;
            c.solver = SolverKind::TspSmall;
            SolveOutput small = run_solve(c, poly);
            c.solver = SolverKind::TspCov;
            SolveOutput cov = run_solve(c, poly);
            c.solver = SolverKind::TspTurn;
            SolveOutput turn = run_solve(c, poly);

            for (const SolveOutput* o : {&small, &cov, &turn})
                if (!o->coverage.ok())
                    fail(errc::infeasible_walk, "coverage verification failed");

            rec.pixels = cov.record.pixels;
            rec.relative_area = cov.record.relative_area;
            rec.len_small = small.record.len_small;
            rec.len_cov = cov.record.len_cov;
            rec.len_turn = turn.record.len_turn;
            rec.modification_cost_pct =
                (rec.len_cov / cov.base_grid_length - 1.0) * 100.0;
            rec.reduction_vs_small_pct = (1.0 - rec.len_turn / rec.len_small) * 100.0;

            GridGraph g = build_dual(rasterize(poly, choose_grid(poly, 1.0)));
            TileModel model = build_model(g);
            rec.area_lb = static_cast<double>(g.node_count());
            double ip = 0.0;
            for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
                double best = 1.0;
                bool any = false;
                for (int id : model.cover_of[v])
                    if (!any || model.vars[id].length < best) {
                        best = any ? std::min(best, model.vars[id].length)
                                   : model.vars[id].length;
                        any = true;
                    }
                ip += best;
            }
            rec.ip_lb = ip;
        } catch (const std::exception& e) {
            rec.error = e.what();
            ++summary.failures;
        }
        const auto t1 = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        summary.records.push_back(std::move(rec));
    }

    std::vector<double> mods, reds;
    for (const BenchRecord& r : summary.records) {
        if (!r.error.empty())
            continue;
        mods.push_back(r.modification_cost_pct);
        reds.push_back(r.reduction_vs_small_pct);
    }
    summary.mean_modification_pct = mean_of(mods);
    summary.ci95_modification_pct = ci95_of(mods);
    summary.mean_reduction_pct = mean_of(reds);
    summary.ci95_reduction_pct = ci95_of(reds);
    return summary;
}

std::string bench_table(const BenchSummary& s) {
    std::ostringstream os;
    os << "id\tpixels\trel_area\tlen_small\tlen_cov\tlen_turn\tmod_pct\tred_pct\t"
          "area_lb\tip_lb\twall_ms\terror\n";
    char buf[512];
    for (const BenchRecord& r : s.records) {
        std::snprintf(buf, sizeof buf,
                      "%s\t%d\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%s\n",
                      r.id.c_str(), r.pixels, r.relative_area, r.len_small, r.len_cov,
                      r.len_turn, r.modification_cost_pct, r.reduction_vs_small_pct,
                      r.area_lb, r.ip_lb, r.wall_ms, r.error.c_str());
        os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "# modification_cost_pct mean %.6f ci95 %.6f\n"
                  "# reduction_vs_small_pct mean %.6f ci95 %.6f\n"
                  "# failures %d\n",
                  s.mean_modification_pct, s.ci95_modification_pct, s.mean_reduction_pct,
                  s.ci95_reduction_pct, s.failures);
    os << buf;
    return os.str();
}

} // namespace mow
