#include "mow/tour.hpp"

#include "mow/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>

namespace mow {

double tour_length(const std::vector<Point>& points) {
    if (points.size() < 2)
        return 0.0;
    double len = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        len += dist(points[i], points[(i + 1) % points.size()]);
    return len;
}

double PointTour::length() const { return tour_length(points); }

GridMetric::GridMetric(const GridGraph& g) {
    const int n = static_cast<int>(g.node_count());
    dist.assign(n, std::vector<int>(n, -1));
    std::vector<NodeId> order;
    order.reserve(n);
    for (NodeId s = 0; s < n; ++s) {
        auto& row = dist[s];
        row[s] = 0;
        order.assign(1, s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            NodeId u = order[head];
            for (NodeId v : g.adj[u]) {
                if (row[v] < 0) {
                    row[v] = row[u] + 1;
                    order.push_back(v);
                }
            }
        }
    }
}

std::vector<NodeId> GridMetric::path(const GridGraph& g, NodeId from, NodeId to) const {
    std::vector<NodeId> p{from};
    NodeId cur = from;
    while (cur != to) {
        NodeId next = -1;
        for (NodeId v : g.adj[cur]) { // sorted, so ties go to the smaller id
            if (dist[to][v] == dist[to][cur] - 1) {
                next = v;
                break;
            }
        }
        if (next < 0)
            fail(errc::disconnected, "no shortest-path step between pixels");
        cur = next;
        p.push_back(cur);
    }
    return p;
}

namespace {

using Rng = std::mt19937_64;

// Explicit Fisher-Yates: std::shuffle is not bit-reproducible across
// standard libraries and these orders feed regression values.
void shuffle_ids(std::vector<int>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng() % i)]);
}

template <class DistFn>
double cycle_cost(const std::vector<int>& order, DistFn d) {
    double c = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i)
        c += d(order[i], order[(i + 1) % order.size()]);
    return c;
}

template <class DistFn>
std::vector<int> nearest_neighbor(int n, int start, DistFn d) {
    std::vector<char> used(n, 0);
    std::vector<int> order;
    order.reserve(n);
    order.push_back(start);
    used[start] = 1;
    while (static_cast<int>(order.size()) < n) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            if (used[v])
                continue;
            double dv = d(order.back(), v);
            if (dv < best_d - 1e-12) { // strict: ties keep the smaller id
                best_d = dv;
                best = v;
            }
        }
        used[best] = 1;
        order.push_back(best);
    }
    return order;
}

template <class DistFn>
bool two_opt_pass(std::vector<int>& order, DistFn d, std::vector<int>& is, std::vector<int>& js,
                  Rng& rng, std::int64_t& budget) {
    const int n = static_cast<int>(order.size());
    shuffle_ids(is, rng);
    shuffle_ids(js, rng);
    bool improved = false;
    for (int i : is) {
        for (int j : js) {
            if (--budget < 0)
                return improved;
            int a = std::min(i, j);
            int b = std::max(i, j);
            if (a == b || b == a + 1 || (a == 0 && b == n - 1))
                continue;
            double before = d(order[a], order[a + 1]) + d(order[b], order[(b + 1) % n]);
            double after = d(order[a], order[b]) + d(order[a + 1], order[(b + 1) % n]);
            if (after < before - 1e-9) {
                std::reverse(order.begin() + a + 1, order.begin() + b + 1);
                improved = true;
            }
        }
    }
    return improved;
}

// Relocates segments of 1..3 consecutive nodes (either orientation) behind
// another node. Segments that would wrap around the vector are skipped; the
// same move reappears unwrapped after other moves shift the tour.
template <class DistFn>
bool or_opt_pass(std::vector<int>& order, DistFn d, std::vector<int>& is, std::vector<int>& js,
                 Rng& rng, std::int64_t& budget) {
    const int n = static_cast<int>(order.size());
    shuffle_ids(is, rng);
    shuffle_ids(js, rng);
    bool improved = false;
    for (int s = 1; s <= 3 && s <= n - 3; ++s) {
        for (int i : is) {
            if (i + s > n)
                continue;
            for (int j : js) {
                if (--budget < 0)
                    return improved;
                bool touches = j >= i - 1 && j <= i + s - 1;
                if (i == 0 && j == n - 1)
                    touches = true;
                if (touches)
                    continue;
                const int prev = (i + n - 1) % n;
                const int next = (i + s) % n;
                const int A = order[prev], B = order[i];
                const int E = order[i + s - 1], F = order[next];
                const int C = order[j], G = order[(j + 1) % n];
                double removed = d(A, B) + d(E, F) + d(C, G);
                double fwd = d(A, F) + d(C, B) + d(E, G);
                double rev = d(A, F) + d(C, E) + d(B, G);
                double added = std::min(fwd, rev);
                if (added >= removed - 1e-9)
                    continue;
                std::vector<int> seg(order.begin() + i, order.begin() + i + s);
                if (rev < fwd)
                    std::reverse(seg.begin(), seg.end());
                order.erase(order.begin() + i, order.begin() + i + s);
                int jp = j < i ? j : j - s;
                order.insert(order.begin() + jp + 1, seg.begin(), seg.end());
                improved = true;
            }
        }
    }
    return improved;
}

template <class DistFn>
void improve_cycle(std::vector<int>& order, DistFn d, Rng& rng, std::int64_t budget) {
    const int n = static_cast<int>(order.size());
    if (n < 4)
        return;
    std::vector<int> is(n), js(n);
    std::iota(is.begin(), is.end(), 0);
    std::iota(js.begin(), js.end(), 0);
    bool improved = true;
    while (improved && budget > 0) {
        improved = two_opt_pass(order, d, is, js, rng, budget);
        if (budget > 0)
            improved = or_opt_pass(order, d, is, js, rng, budget) || improved;
    }
}

// Rotate to start at node 0 and fix the direction so equal-cost runs
// produce identical output.
void canonicalize(std::vector<int>& order) {
    if (order.empty())
        return;
    auto it = std::find(order.begin(), order.end(), 0);
    std::rotate(order.begin(), it, order.end());
    if (order.size() >= 3 && order[1] > order.back())
        std::reverse(order.begin() + 1, order.end());
}

template <class DistFn>
std::vector<int> best_cycle(int n, DistFn d, std::uint64_t seed, std::int64_t move_budget) {
    std::vector<int> best(n);
    std::iota(best.begin(), best.end(), 0);
    if (n <= 3)
        return best;

    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<int> starts;
    if (n <= 12) {
        starts.resize(n);
        std::iota(starts.begin(), starts.end(), 0);
    } else {
        starts.push_back(0);
        while (starts.size() < 6) {
            int s = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            if (std::find(starts.begin(), starts.end(), s) == starts.end())
                starts.push_back(s);
        }
    }
    const int restarts = 4;
    const std::int64_t slice =
        std::max<std::int64_t>(1, move_budget / static_cast<std::int64_t>(starts.size() + restarts));

    double best_cost = std::numeric_limits<double>::infinity();
    auto consider = [&](std::vector<int> order) {
        improve_cycle(order, d, rng, slice);
        double c = cycle_cost(order, d);
        if (c < best_cost - 1e-9) {
            best_cost = c;
            best = std::move(order);
        }
    };
    for (int s : starts)
        consider(nearest_neighbor(n, s, d));
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        shuffle_ids(order, rng);
        consider(std::move(order));
    }
    canonicalize(best);
    return best;
}

GridTour expand_cycle(const GridGraph& g, const GridMetric& m, const std::vector<int>& order) {
    GridTour t;
    if (order.size() == 1) {
        t.visits = {order[0]};
        return t;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto p = m.path(g, order[i], order[(i + 1) % order.size()]);
        t.visits.insert(t.visits.end(), p.begin(), p.end() - 1);
    }
    return t;
}

} // namespace

GridTour grid_tsp(const GridGraph& g, std::uint64_t seed, std::int64_t move_budget) {
    const int n = static_cast<int>(g.node_count());
    if (n == 0)
        fail(errc::degenerate_input, "empty grid graph");
    GridMetric m(g);
    auto d = [&](int a, int b) { return static_cast<double>(m.dist[a][b]); };
    return expand_cycle(g, m, best_cycle(n, d, seed, move_budget));
}

GridTour grid_tsp_exact(const GridGraph& g) {
    const int n = static_cast<int>(g.node_count());
    if (n == 0)
        fail(errc::degenerate_input, "empty grid graph");
    if (n > 16)
        fail(errc::too_large, "exact walk solver is limited to 16 pixels");
    GridTour trivial;
    trivial.visits = {0};
    if (n == 1)
        return trivial;

    GridMetric m(g);
    const int k = n - 1; // nodes 1..n-1; the cycle is anchored at node 0
    const int full = 1 << k;
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<int> dp(static_cast<std::size_t>(full) * k, inf);
    for (int j = 0; j < k; ++j)
        dp[(static_cast<std::size_t>(1) << j) * k + j] = m.dist[0][j + 1];
    for (int mask = 1; mask < full; ++mask) {
        for (int j = 0; j < k; ++j) {
            if (!(mask & (1 << j)))
                continue;
            int cur = dp[static_cast<std::size_t>(mask) * k + j];
            if (cur >= inf)
                continue;
            for (int l = 0; l < k; ++l) {
                if (mask & (1 << l))
                    continue;
                int nmask = mask | (1 << l);
                int cand = cur + m.dist[j + 1][l + 1];
                int& slot = dp[static_cast<std::size_t>(nmask) * k + l];
                if (cand < slot)
                    slot = cand;
            }
        }
    }
    int best_j = -1;
    int best_val = inf;
    for (int j = 0; j < k; ++j) {
        int v = dp[static_cast<std::size_t>(full - 1) * k + j] + m.dist[j + 1][0];
        if (v < best_val) {
            best_val = v;
            best_j = j;
        }
    }

    std::vector<int> rev{best_j + 1};
    int mask = full - 1;
    int cur = best_j;
    while (mask != (1 << cur)) {
        int pmask = mask ^ (1 << cur);
        for (int l = 0; l < k; ++l) {
            if (!(pmask & (1 << l)))
                continue;
            if (dp[static_cast<std::size_t>(pmask) * k + l] + m.dist[l + 1][cur + 1] ==
                dp[static_cast<std::size_t>(mask) * k + cur]) {
                rev.push_back(l + 1);
                mask = pmask;
                cur = l;
                break;
            }
        }
    }
    std::vector<int> order{0};
    order.insert(order.end(), rev.rbegin(), rev.rend());
    canonicalize(order);
    return expand_cycle(g, m, order);
}

PointTour tsp_small(const Polygon& poly, std::uint64_t seed, std::int64_t move_budget) {
    const double cell = std::sqrt(0.5);
    GridSpec spec = choose_grid(poly, cell);
    Polyomino pm = rasterize(poly, spec);
    std::vector<Point> centers;
    centers.reserve(pm.pixels.size());
    for (const auto& pc : pm.pixels)
        centers.push_back(spec.cell_center(pc.first, pc.second));
    auto d = [&](int a, int b) { return dist(centers[a], centers[b]); };
    auto order = best_cycle(static_cast<int>(centers.size()), d, seed, move_budget);
    PointTour t;
    t.points.reserve(order.size());
    for (int idx : order)
        t.points.push_back(centers[idx]);
    return t;
}

} // namespace mow
