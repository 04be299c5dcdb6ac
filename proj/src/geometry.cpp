#include "mow/geometry.hpp"
#include "mow/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace mow {

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

static double ring_signed_area(const std::vector<Point>& ring) {
    double s = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % ring.size()];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

double Polygon::area() const {
    double a = std::fabs(ring_signed_area(outer));
    for (const auto& h : holes) a -= std::fabs(ring_signed_area(h));
    return a;
}

void Polygon::bounding_box(Point& lo, Point& hi) const {
    lo = {1e300, 1e300};
    hi = {-1e300, -1e300};
    for (const Point& p : outer) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
}

static bool rowmajor_less(const PixelCoord& a, const PixelCoord& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
}

bool Polyomino::contains(int i, int j) const {
    PixelCoord key{i, j};
    return std::binary_search(pixels.begin(), pixels.end(), key, rowmajor_less);
}

static double point_segment_dist(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 <= 0.0) return dist(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + t * ab);
}

static bool on_ring_boundary(const std::vector<Point>& ring, Point p, double tol) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
        if (point_segment_dist(p, ring[i], ring[(i + 1) % ring.size()]) <= tol) return true;
    }
    return false;
}

// Crossing-number test; boundary handled separately by the callers.
static bool ray_cast_inside(const std::vector<Point>& ring, Point p) {
    bool in = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        Point a = ring[i];
        Point b = ring[(i + 1) % ring.size()];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xhit = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xhit) in = !in;
        }
    }
    return in;
}

bool contains_point(const Polygon& poly, Point p, double tol) {
    if (on_ring_boundary(poly.outer, p, tol)) return true;
    for (const auto& h : poly.holes)
        if (on_ring_boundary(h, p, tol)) return true;
    if (!ray_cast_inside(poly.outer, p)) return false;
    for (const auto& h : poly.holes)
        if (ray_cast_inside(h, p)) return false;
    return true;
}

// Sutherland-Hodgman against one axis-aligned half-plane. keep(p) decides
// membership, cut(a,b) the boundary crossing.
template <class Keep, class Cut>
static void clip_halfplane(std::vector<Point>& ring, Keep keep, Cut cut) {
    std::vector<Point> out;
    out.reserve(ring.size() + 4);
    for (std::size_t i = 0; i < ring.size(); ++i) {
        Point a = ring[i];
        Point b = ring[(i + 1) % ring.size()];
        bool ka = keep(a), kb = keep(b);
        if (ka) out.push_back(a);
        if (ka != kb) out.push_back(cut(a, b));
    }
    ring.swap(out);
}

static double clipped_ring_area(std::vector<Point> ring, double x0, double x1, double y0,
                                double y1) {
    clip_halfplane(
        ring, [&](Point p) { return p.x >= x0; },
        [&](Point a, Point b) {
            double t = (x0 - a.x) / (b.x - a.x);
            return Point{x0, a.y + t * (b.y - a.y)};
        });
    clip_halfplane(
        ring, [&](Point p) { return p.x <= x1; },
        [&](Point a, Point b) {
            double t = (x1 - a.x) / (b.x - a.x);
            return Point{x1, a.y + t * (b.y - a.y)};
        });
    clip_halfplane(
        ring, [&](Point p) { return p.y >= y0; },
        [&](Point a, Point b) {
            double t = (y0 - a.y) / (b.y - a.y);
            return Point{a.x + t * (b.x - a.x), y0};
        });
    clip_halfplane(
        ring, [&](Point p) { return p.y <= y1; },
        [&](Point a, Point b) {
            double t = (y1 - a.y) / (b.y - a.y);
            return Point{a.x + t * (b.x - a.x), y1};
        });
    if (ring.size() < 3) return 0.0;
    return std::fabs(ring_signed_area(ring));
}

double pixel_overlap_area(const Polygon& poly, const GridSpec& g, int i, int j) {
    Point o = g.cell_origin(i, j);
    double x0 = o.x, x1 = o.x + g.cell_size;
    double y0 = o.y, y1 = o.y + g.cell_size;
    double a = clipped_ring_area(poly.outer, x0, x1, y0, y1);
    for (const auto& h : poly.holes) a -= clipped_ring_area(h, x0, x1, y0, y1);
    return a;
}

bool pixel_intersects(const Polygon& poly, const GridSpec& g, int i, int j) {
    return pixel_overlap_area(poly, g, i, j) > 1e-12;
}

bool pixels_connected(const std::vector<PixelCoord>& pixels) {
    if (pixels.empty()) return false;
    std::set<PixelCoord> todo(pixels.begin(), pixels.end());
    std::queue<PixelCoord> q;
    q.push(*todo.begin());
    todo.erase(todo.begin());
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop();
        const PixelCoord nbrs[4] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        for (const auto& n : nbrs) {
            auto it = todo.find(n);
            if (it != todo.end()) {
                todo.erase(it);
                q.push(n);
            }
        }
    }
    return todo.empty();
}

static std::vector<PixelCoord> raster_cells(const Polygon& poly, const GridSpec& g) {
    Point lo, hi;
    poly.bounding_box(lo, hi);
    int i0 = (int)std::floor((lo.x - g.offset_x) / g.cell_size) - 1;
    int i1 = (int)std::floor((hi.x - g.offset_x) / g.cell_size) + 1;
    int j0 = (int)std::floor((lo.y - g.offset_y) / g.cell_size) - 1;
    int j1 = (int)std::floor((hi.y - g.offset_y) / g.cell_size) + 1;
    std::vector<PixelCoord> cells;
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
            if (pixel_intersects(poly, g, i, j)) cells.push_back({i, j});
    return cells; // already row-major by loop order
}

Polyomino rasterize(const Polygon& poly, const GridSpec& g) {
    if (g.cell_size <= 0.0) fail(errc::degenerate_input, "cell size must be positive");
    Polyomino pm;
    pm.grid = g;
    pm.pixels = raster_cells(poly, g);
    if (pm.pixels.empty()) fail(errc::degenerate_input, "polygon rasterizes to no pixels");
    if (!pixels_connected(pm.pixels))
        fail(errc::disconnected, "rasterization is not 4-connected");
    return pm;
}

static double wrap_mod(double v, double m) {
    double r = std::fmod(v, m);
    if (r < 0) r += m;
    if (r >= m) r -= m; // fmod edge case when v is a tiny negative
    return r;
}

GridSpec choose_grid(const Polygon& poly, double cell_size) {
    if (cell_size <= 0.0) fail(errc::degenerate_input, "cell size must be positive");
    if (poly.outer.size() < 3 || poly.area() <= 1e-12)
        fail(errc::degenerate_input, "polygon has no area");

    auto collect = [&](bool xaxis) {
        std::vector<double> vals;
        vals.push_back(0.0);
        for (const Point& p : poly.outer) vals.push_back(wrap_mod(xaxis ? p.x : p.y, cell_size));
        for (const auto& h : poly.holes)
            for (const Point& p : h) vals.push_back(wrap_mod(xaxis ? p.x : p.y, cell_size));
        std::sort(vals.begin(), vals.end());
        std::vector<double> uniq;
        for (double v : vals)
            if (uniq.empty() || v - uniq.back() > 1e-9) uniq.push_back(v);
        return uniq;
    };
    std::vector<double> xs = collect(true), ys = collect(false);

    std::vector<std::pair<double, double>> cands;
    cands.reserve(xs.size() * ys.size());
    for (double ox : xs)
        for (double oy : ys) cands.push_back({ox, oy});

    const std::size_t cap = 4096;
    if (cands.size() > cap) {
        std::vector<std::pair<double, double>> sub;
        sub.reserve(cap + 1);
        double stride = double(cands.size()) / double(cap);
        for (std::size_t k = 0; k < cap; ++k) sub.push_back(cands[(std::size_t)(k * stride)]);
        sub.push_back({0.0, 0.0}); // keep the aligned baseline in play
        std::sort(sub.begin(), sub.end());
        sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
        cands.swap(sub);
    }

    GridSpec best;
    std::size_t best_count = SIZE_MAX;
    for (const auto& [ox, oy] : cands) {
        GridSpec g{cell_size, ox, oy};
        std::size_t n = raster_cells(poly, g).size();
        if (n < best_count) {
            best_count = n;
            best = g;
        }
    }
    if (best_count == 0 || best_count == SIZE_MAX)
        fail(errc::degenerate_input, "polygon rasterizes to no pixels");
    return best;
}

// ___________________________________________________________________________
// Polyomino boundary extraction.
//
// Directed boundary edges keep the occupied region on their left. At a
// vertex where two diagonal cells meet (a pinch) there are two outgoing
// edges; we turn right when the diagonal is solid (keeps the outer ring in
// one piece) and left when the diagonal is empty (splits touching holes
// into separate rings).

namespace {

struct IVec {
    int x, y;
    bool operator<(const IVec& o) const { return x != o.x ? x < o.x : y < o.y; }
    bool operator==(const IVec& o) const { return x == o.x && y == o.y; }
};

} // namespace

Polygon boundary_polygon(const Polyomino& pm) {
    if (pm.pixels.empty()) fail(errc::degenerate_input, "empty polyomino");
    std::set<PixelCoord> cells(pm.pixels.begin(), pm.pixels.end());
    auto occupied = [&](int i, int j) { return cells.count({i, j}) > 0; };

    // edge start vertex + direction -> present
    std::map<IVec, std::vector<IVec>> out_edges;
    auto add_edge = [&](int x, int y, int dx, int dy) {
        out_edges[{x, y}].push_back({dx, dy});
    };
    for (auto [i, j] : pm.pixels) {
        if (!occupied(i, j - 1)) add_edge(i, j, 1, 0);          // bottom, rightward
        if (!occupied(i + 1, j)) add_edge(i + 1, j, 0, 1);      // right, upward
        if (!occupied(i, j + 1)) add_edge(i + 1, j + 1, -1, 0); // top, leftward
        if (!occupied(i - 1, j)) add_edge(i, j + 1, 0, -1);     // left, downward
    }

    std::set<std::pair<IVec, IVec>> used;
    std::vector<std::vector<IVec>> rings;
    for (auto& [start, dirs] : out_edges) {
        for (const IVec& d0 : dirs) {
            if (used.count({start, d0})) continue;
            std::vector<IVec> ring;
            IVec v = start, d = d0;
            while (!used.count({v, d})) {
                used.insert({v, d});
                ring.push_back(v);
                v = {v.x + d.x, v.y + d.y};
                auto& outs = out_edges[v];
                if (outs.size() == 1) {
                    d = outs[0];
                } else {
                    // pinch vertex: two outgoing edges, pick by diagonal type
                    bool solid_diag = (occupied(v.x - 1, v.y - 1) && occupied(v.x, v.y)) ||
                                      (occupied(v.x, v.y - 1) && occupied(v.x - 1, v.y));
                    IVec left{-d.y, d.x}, right{d.y, -d.x};
                    IVec want = solid_diag ? right : left;
                    bool found = false;
                    for (const IVec& cand : outs)
                        if (cand == want && !used.count({v, cand})) {
                            d = cand;
                            found = true;
                            break;
                        }
                    if (!found) {
                        for (const IVec& cand : outs)
                            if (!used.count({v, cand})) {
                                d = cand;
                                found = true;
                                break;
                            }
                    }
                    if (!found) break; // ring closed exactly at the pinch
                }
            }
            if (ring.size() >= 4) rings.push_back(std::move(ring));
        }
    }

    const GridSpec& g = pm.grid;
    auto to_world = [&](const std::vector<IVec>& ring) {
        // merge collinear runs, then convert to coordinates
        std::vector<IVec> kept;
        std::size_t n = ring.size();
        for (std::size_t k = 0; k < n; ++k) {
            const IVec& prev = ring[(k + n - 1) % n];
            const IVec& cur = ring[k];
            const IVec& next = ring[(k + 1) % n];
            int ax = cur.x - prev.x, ay = cur.y - prev.y;
            int bx = next.x - cur.x, by = next.y - cur.y;
            if (ax * by - ay * bx != 0) kept.push_back(cur);
        }
        std::vector<Point> pts;
        pts.reserve(kept.size());
        for (const IVec& v : kept)
            pts.push_back({g.offset_x + v.x * g.cell_size, g.offset_y + v.y * g.cell_size});
        return pts;
    };

    std::vector<std::vector<Point>> world;
    for (const auto& r : rings) world.push_back(to_world(r));
    std::size_t outer_idx = SIZE_MAX;
    double best_area = 0.0;
    for (std::size_t k = 0; k < world.size(); ++k) {
        double a = ring_signed_area(world[k]);
        if (a > best_area) {
            best_area = a;
            outer_idx = k;
        }
    }
    if (outer_idx == SIZE_MAX) fail(errc::degenerate_input, "boundary extraction failed");

    Polygon poly;
    poly.outer = std::move(world[outer_idx]);
    for (std::size_t k = 0; k < world.size(); ++k) {
        if (k == outer_idx) continue;
        double a = ring_signed_area(world[k]);
        if (a >= 0) fail(errc::degenerate_input, "unexpected second outer ring");
        poly.holes.push_back(std::move(world[k]));
    }
    return poly;
}

double convex_hull_area(const Polygon& poly) {
    std::vector<Point> pts = poly.outer;
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return 0.0;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    return std::fabs(ring_signed_area(hull));
}

} // namespace mow
