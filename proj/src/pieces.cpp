#include "mow/pieces.hpp"
#include "mow/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace mow {

namespace {

constexpr double kPi = 3.14159265358979323846;

Point circle_point(Point center, double r, double theta) {
    return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

Point unit_from(Point from, Point to) {
    double d = dist(from, to);
    return {(to.x - from.x) / d, (to.y - from.y) / d};
}

// d/dtheta of |a - q(theta)| + |q(theta) - b| for q on the circle.
double via_point_derivative(Point a, Point b, Point center, double r, double theta) {
    Point q = circle_point(center, r, theta);
    Point tangent{-r * std::sin(theta), r * std::cos(theta)};
    Point u1 = unit_from(a, q);
    Point u2 = unit_from(b, q);
    return dot(u1, tangent) + dot(u2, tangent);
}

// Bisection on a derivative with a sign change over [lo, hi]. Drives the
// bracket far below the requested tolerance; extra iterations are cheap.
template <class Deriv>
double minimize_by_derivative(Deriv deriv, double lo, double hi, double tol, const char* what) {
    double dlo = deriv(lo);
    double dhi = deriv(hi);
    if (dlo > 0.0 || dhi < 0.0)
        fail(errc::convergence_failure, std::string(what) + ": no bracketing sign change");
    for (int it = 0; it < 200 && hi - lo > tol * 1e-6; ++it) {
        double mid = 0.5 * (lo + hi);
        double dm = deriv(mid);
        if (dm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Best point on a circle for the two-anchor path, minimizer plus value.
struct ViaPointResult {
    double theta;
    Point q;
    double value;
};

ViaPointResult best_via_point(Point a, Point b, Point center, double r, double theta_lo,
                              double theta_hi, double tol, const char* what) {
    auto deriv = [&](double t) { return via_point_derivative(a, b, center, r, t); };
    double dlo = deriv(theta_lo);
    double dhi = deriv(theta_hi);
    double theta;
    if (dlo >= 0.0)
        theta = theta_lo; // minimum pinned at the bracket edge
    else if (dhi <= 0.0)
        theta = theta_hi;
    else
        theta = minimize_by_derivative(deriv, theta_lo, theta_hi, tol, what);
    Point q = circle_point(center, r, theta);
    return {theta, q, dist(a, q) + dist(q, b)};
}

} // namespace

SimpleTurnSolution solve_simple_turn(double tol) {
    const Point c_b{0.5, 0.0};
    const Point c_r{1.0, 0.5};
    const Point corner{0.0, 1.0};
    auto res = best_via_point(c_b, c_r, corner, 0.5, -kPi / 2 + 1e-12, -1e-12, tol, "simple turn");
    if (std::fabs(via_point_derivative(c_b, c_r, corner, 0.5, res.theta)) > 1e-8)
        fail(errc::convergence_failure, "simple turn: residual derivative too large");
    return {res.q, res.value};
}

UTurnSolution solve_u_turn(double tol) {
    const Point c_b{0.5, 0.0};
    const Point left_corner{0.0, 1.0};
    const Point right_corner{1.0, 1.0};
    const double r = 0.5;

    // Inner problem: best q2 on the right corner circle for fixed q1.
    auto inner = [&](Point q1) {
        return best_via_point(q1, c_b, right_corner, r, kPi + 1e-12, 1.5 * kPi - 1e-12, tol,
                              "u-turn inner");
    };
    // Outer derivative in theta1; q2 held fixed at its optimum (envelope).
    auto outer_deriv = [&](double t1) {
        Point q1 = circle_point(left_corner, r, t1);
        Point q2 = inner(q1).q;
        Point tangent{-r * std::sin(t1), r * std::cos(t1)};
        return dot(unit_from(c_b, q1), tangent) + dot(unit_from(q2, q1), tangent);
    };

    double t1 =
        minimize_by_derivative(outer_deriv, -kPi / 2 + 1e-12, -1e-12, tol, "u-turn outer");
    Point q1 = circle_point(left_corner, r, t1);
    auto in = inner(q1);
    double len = dist(c_b, q1) + dist(q1, in.q) + dist(in.q, c_b);
    if (std::fabs(outer_deriv(t1)) > 1e-8)
        fail(errc::convergence_failure, "u-turn: residual derivative too large");
    return {q1, in.q, len};
}

CornerPathSolution solve_corner_path(double tol) {
    const Point circle_center{0.0, 1.0};
    const double r = 0.5;

    auto inner = [&](double delta) {
        Point p_delta{0.5, delta};
        Point p_t{1.0, 0.5 + delta};
        return best_via_point(p_delta, p_t, circle_center, r, -kPi / 2 + 1e-12, -1e-12, tol,
                              "corner inner");
    };
    // Envelope derivative of delta + d(p_delta,q*) + d(q*,p_t) in delta.
    auto outer_deriv = [&](double delta) {
        Point p_delta{0.5, delta};
        Point p_t{1.0, 0.5 + delta};
        Point q = inner(delta).q;
        double d1 = dist(p_delta, q);
        double d2 = dist(q, p_t);
        return 1.0 + (delta - q.y) / d1 + (p_t.y - q.y) / d2;
    };

    double delta = minimize_by_derivative(outer_deriv, 0.0, 0.9, tol, "corner outer");
    auto in = inner(delta);
    CornerPathSolution sol;
    sol.delta = delta;
    sol.q = in.q;
    sol.p_delta = {0.5, delta};
    sol.p_t = {1.0, 0.5 + delta};
    sol.total_length = delta + dist(sol.p_delta, sol.q) + dist(sol.q, sol.p_t);
    if (std::fabs(outer_deriv(delta)) > 1e-8)
        fail(errc::convergence_failure, "corner path: residual derivative too large");
    return sol;
}

const SimpleTurnSolution& simple_turn_constants() {
    static const SimpleTurnSolution s = solve_simple_turn();
    return s;
}

const UTurnSolution& u_turn_constants() {
    static const UTurnSolution s = solve_u_turn();
    return s;
}

// ___________________________________________________________________________
// Piece placement.

namespace {

Point side_midpoint(Side s) {
    switch (s) {
    case Side::Bottom: return {0.5, 0.0};
    case Side::Right: return {1.0, 0.5};
    case Side::Top: return {0.5, 1.0};
    case Side::Left: return {0.0, 0.5};
    }
    return {};
}

Point rot90(Point p) { return {1.0 - p.y, p.x}; } // ccw about the cell center

Point mirror_x(Point p) { return {1.0 - p.x, p.y}; }

std::vector<Point> transform_all(std::vector<Point> pts, int rotations, bool mirrored) {
    for (Point& p : pts) {
        if (mirrored) p = mirror_x(p);
        for (int k = 0; k < rotations; ++k) p = rot90(p);
    }
    return pts;
}

} // namespace

std::vector<Point> place_piece(TileKind kind, Side in_side, Side out_side) {
    int in = int(in_side), out = int(out_side);
    switch (kind) {
    case TileKind::CoverStraight:
    case TileKind::PassStraight:
        if ((in + 2) % 4 != out) fail(errc::infeasible_walk, "straight tile needs opposite sides");
        return {side_midpoint(in_side), side_midpoint(out_side)};
    case TileKind::PassTurn:
        if (in == out || (in + 2) % 4 == out)
            fail(errc::infeasible_walk, "turn tile needs adjacent sides");
        return {side_midpoint(in_side), side_midpoint(out_side)};
    case TileKind::CoverTurn: {
        if (in == out || (in + 2) % 4 == out)
            fail(errc::infeasible_walk, "turn tile needs adjacent sides");
        const SimpleTurnSolution& s = simple_turn_constants();
        std::vector<Point> canon{{0.5, 0.0}, s.q, {1.0, 0.5}}; // bottom -> right
        bool mirrored = (out + 1) % 4 == in;                   // bottom -> left family
        return transform_all(std::move(canon), in, mirrored);
    }
    case TileKind::CoverUTurn: {
        if (in != out) fail(errc::infeasible_walk, "u-turn tile needs matching sides");
        const UTurnSolution& s = u_turn_constants();
        std::vector<Point> canon{{0.5, 0.0}, s.q1, s.q2, {0.5, 0.0}};
        return transform_all(std::move(canon), in, false);
    }
    }
    fail(errc::infeasible_walk, "unknown tile kind");
}

// ___________________________________________________________________________
// Splice: grid walk -> tour of placed pieces.

Side side_towards(const GridGraph& g, NodeId pixel, NodeId neighbor) {
    auto [fi, fj] = g.pixels[neighbor];
    auto [ti, tj] = g.pixels[pixel];
    if (fi == ti + 1 && fj == tj) return Side::Right;
    if (fi == ti - 1 && fj == tj) return Side::Left;
    if (fj == tj + 1 && fi == ti) return Side::Top;
    if (fj == tj - 1 && fi == ti) return Side::Bottom;
    fail(errc::infeasible_walk, "consecutive visits are not adjacent pixels");
}

namespace {

// Drop U-turn excursions into pixels that are visited elsewhere; the walk
// stays closed and feasible, only shorter. Runs to a fixed point.
std::vector<NodeId> normalize_walk(std::vector<NodeId> w) {
    bool changed = true;
    while (changed && w.size() > 2) {
        changed = false;
        std::map<NodeId, int> count;
        for (NodeId v : w) ++count[v];
        std::size_t n = w.size();
        for (std::size_t i = 0; i < n; ++i) {
            NodeId prev = w[(i + n - 1) % n];
            NodeId next = w[(i + 1) % n];
            if (prev == next && count[w[i]] > 1) {
                // remove visit i and the duplicate neighbor visit
                std::size_t j = (i + 1) % n;
                std::vector<NodeId> nw;
                nw.reserve(n - 2);
                for (std::size_t k = 0; k < n; ++k)
                    if (k != i && k != j) nw.push_back(w[k]);
                w.swap(nw);
                changed = true;
                break;
            }
        }
    }
    return w;
}

} // namespace

MowingTour splice(const GridTour& t, const GridGraph& g) {
    if (t.visits.empty()) fail(errc::infeasible_walk, "empty tour");
    if (std::fabs(g.grid.cell_size - 1.0) > 1e-9)
        fail(errc::infeasible_walk, "piece splicing requires a unit grid");

    std::vector<NodeId> w = normalize_walk(t.visits);
    std::size_t n = w.size();

    if (n == 1) fail(errc::infeasible_walk, "a single visit cannot form a closed walk");

    // Per-visit geometry.
    std::vector<Side> in_side(n), out_side(n);
    std::vector<bool> is_uturn(n);
    for (std::size_t i = 0; i < n; ++i) {
        NodeId prev = w[(i + n - 1) % n];
        NodeId next = w[(i + 1) % n];
        in_side[i] = side_towards(g, w[i], prev);
        out_side[i] = side_towards(g, w[i], next);
        is_uturn[i] = prev == next;
    }

    // Covering assignment. U-turn visits always cover (their pixel is
    // visited exactly once after normalization). A visit right after a
    // U-turn must pass: its pixel was already seen on the way in, which is
    // what keeps the per-visit surcharge bounded. Everything else: first
    // eligible visit covers.
    std::vector<int> covering_visit(g.node_count(), -1);
    std::vector<bool> forced_pass(n, false);
    for (std::size_t i = 0; i < n; ++i)
        if (is_uturn[i]) {
            covering_visit[w[i]] = int(i);
            forced_pass[(i + 1) % n] = true;
        }
    for (std::size_t i = 0; i < n; ++i) {
        if (forced_pass[i] || is_uturn[i]) continue;
        if (covering_visit[w[i]] == -1) covering_visit[w[i]] = int(i);
    }
    for (std::size_t i = 0; i < n; ++i) { // tiny instances may leave gaps
        if (covering_visit[w[i]] == -1) covering_visit[w[i]] = int(i);
    }
    for (NodeId v = 0; v < (NodeId)g.node_count(); ++v)
        if (covering_visit[v] < 0) fail(errc::infeasible_walk, "tour misses a pixel");

    MowingTour mt;
    mt.base.visits = w;
    mt.tiles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool covers = covering_visit[w[i]] == int(i);
        if (is_uturn[i])
            mt.tiles[i] = TileKind::CoverUTurn;
        else if ((int(in_side[i]) + 2) % 4 == int(out_side[i]))
            mt.tiles[i] = covers ? TileKind::CoverStraight : TileKind::PassStraight;
        else
            mt.tiles[i] = covers ? TileKind::CoverTurn : TileKind::PassTurn;
    }

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Point> local = place_piece(mt.tiles[i], in_side[i], out_side[i]);
        Point origin = g.pixel_origin(w[i]);
        std::size_t from = (i == 0) ? 0 : 1; // junction point already emitted
        for (std::size_t k = from; k < local.size(); ++k)
            mt.polyline.push_back({origin.x + local[k].x, origin.y + local[k].y});
        mt.length += tile_length(mt.tiles[i]);
    }
    if (!mt.polyline.empty()) mt.polyline.pop_back(); // wraps back to the start

    return mt;
}

// ___________________________________________________________________________
// Coverage verification.

namespace {

double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 <= 0.0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + t * ab);
}

// Uniform hash grid over tour segments so coverage queries stay linear.
class SegmentIndex {
public:
    SegmentIndex(const std::vector<Point>& tour, double cell) : cell_(cell) {
        std::size_t n = tour.size();
        if (n == 1) pts_ = tour;
        for (std::size_t i = 0; i < n && n >= 2; ++i) {
            Point a = tour[i];
            Point b = tour[(i + 1) % n];
            segs_.push_back({a, b});
            int x0 = (int)std::floor(std::min(a.x, b.x) / cell_);
            int x1 = (int)std::floor(std::max(a.x, b.x) / cell_);
            int y0 = (int)std::floor(std::min(a.y, b.y) / cell_);
            int y1 = (int)std::floor(std::max(a.y, b.y) / cell_);
            for (int x = x0; x <= x1; ++x)
                for (int y = y0; y <= y1; ++y) buckets_[{x, y}].push_back(segs_.size() - 1);
        }
    }

    // True when some segment lies within radius of p.
    bool within(Point p, double radius) const {
        if (!pts_.empty()) return dist(p, pts_[0]) <= radius;
        int x0 = (int)std::floor((p.x - radius) / cell_);
        int x1 = (int)std::floor((p.x + radius) / cell_);
        int y0 = (int)std::floor((p.y - radius) / cell_);
        int y1 = (int)std::floor((p.y + radius) / cell_);
        for (int x = x0; x <= x1; ++x)
            for (int y = y0; y <= y1; ++y) {
                auto it = buckets_.find({x, y});
                if (it == buckets_.end()) continue;
                for (std::size_t si : it->second)
                    if (point_segment_distance(p, segs_[si].first, segs_[si].second) <= radius)
                        return true;
            }
        return false;
    }

    double exact_distance(Point p) const {
        if (!pts_.empty()) return dist(p, pts_[0]);
        double best = 1e300;
        for (const auto& [a, b] : segs_) best = std::min(best, point_segment_distance(p, a, b));
        return best;
    }

private:
    double cell_;
    std::vector<std::pair<Point, Point>> segs_;
    std::vector<Point> pts_;
    std::map<std::pair<int, int>, std::vector<std::size_t>> buckets_;
};

} // namespace

CoverageReport verify_coverage(const std::vector<Point>& tour, const Polygon& poly,
                               double resolution) {
    if (resolution <= 0.0) fail(errc::degenerate_input, "resolution must be positive");
    CoverageReport rep;
    const double radius = 0.5 + 1e-9;

    SegmentIndex index(tour, 1.0);
    auto probe = [&](Point p) {
        if (tour.empty() || !index.within(p, radius)) {
            double d = tour.empty() ? 1e300 : index.exact_distance(p);
            rep.uncovered.push_back({p, d});
            rep.max_violation = std::max(rep.max_violation, d - 0.5);
        }
    };

    Point lo, hi;
    poly.bounding_box(lo, hi);
    long nx = lround(std::floor((hi.x - lo.x) / resolution)) + 1;
    long ny = lround(std::floor((hi.y - lo.y) / resolution)) + 1;
    for (long jy = 0; jy <= ny; ++jy)
        for (long jx = 0; jx <= nx; ++jx) {
            Point p{lo.x + jx * resolution, lo.y + jy * resolution};
            if (p.x > hi.x + 1e-12 || p.y > hi.y + 1e-12) continue;
            if (contains_point(poly, p)) probe(p);
        }
    for (const Point& p : poly.outer) probe(p);
    for (const auto& h : poly.holes)
        for (const Point& p : h) probe(p);
    return rep;
}

std::string coverage_report_text(const CoverageReport& r) {
    std::ostringstream os;
    os << "uncovered " << r.uncovered.size() << '\n';
    char buf[96];
    for (const auto& m : r.uncovered) {
        std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g\n", m.p.x, m.p.y, m.distance);
        os << buf;
    }
    return os.str();
}

} // namespace mow
