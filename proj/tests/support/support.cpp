#include "support.hpp"

#include "mow/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace testsupport {

using mow::GridGraph;
using mow::NodeId;
using mow::PixelCoord;

std::vector<std::vector<PixelCoord>> all_polyominoes(int n) {
    std::set<std::vector<PixelCoord>> shapes;
    std::set<std::vector<PixelCoord>> frontier{{{0, 0}}};
    auto normalize = [](std::vector<PixelCoord> cells) {
        int mi = cells[0].first, mj = cells[0].second;
        for (auto [i, j] : cells) {
            mi = std::min(mi, i);
            mj = std::min(mj, j);
        }
        for (auto& [i, j] : cells) {
            i -= mi;
            j -= mj;
        }
        std::sort(cells.begin(), cells.end(),
                  [](PixelCoord a, PixelCoord b) {
                      return std::pair(a.second, a.first) < std::pair(b.second, b.first);
                  });
        return cells;
    };
    for (int size = 1; size < n; ++size) {
        std::set<std::vector<PixelCoord>> next;
        for (const auto& cells : frontier) {
            std::set<PixelCoord> in(cells.begin(), cells.end());
            for (auto [i, j] : cells) {
                const int di[4] = {1, -1, 0, 0};
                const int dj[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    PixelCoord nb{i + di[k], j + dj[k]};
                    if (in.count(nb))
                        continue;
                    auto grown = cells;
                    grown.push_back(nb);
                    next.insert(normalize(std::move(grown)));
                }
            }
        }
        frontier = std::move(next);
    }
    return {frontier.begin(), frontier.end()};
}

mow::Polyomino make_polyomino(std::vector<PixelCoord> cells) {
    mow::Polyomino pm;
    pm.grid = mow::GridSpec{1.0, 0.0, 0.0};
    std::sort(cells.begin(), cells.end(), [](PixelCoord a, PixelCoord b) {
        return std::pair(a.second, a.first) < std::pair(b.second, b.first);
    });
    pm.pixels = std::move(cells);
    return pm;
}

GridGraph dual_of(const std::vector<PixelCoord>& cells) {
    return mow::build_dual(make_polyomino(cells));
}

bool has_cut_vertex(const GridGraph& g) {
    const int n = static_cast<int>(g.node_count());
    if (n <= 2)
        return false;
    for (NodeId drop = 0; drop < n; ++drop) {
        std::vector<char> seen(n, 0);
        seen[drop] = 1;
        NodeId start = drop == 0 ? 1 : 0;
        std::queue<NodeId> q;
        q.push(start);
        seen[start] = 1;
        int reached = 1;
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop();
            for (NodeId w : g.adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    q.push(w);
                }
        }
        if (reached < n - 1)
            return true;
    }
    return false;
}

namespace {

struct Move {
    NodeId via;   // pixel the tile sits in
    int exit_e;   // port it leaves through
    double len;
    bool covering;
};

} // namespace

double brute_tile_optimum(const GridGraph& g) {
    const int n = static_cast<int>(g.node_count());
    const int ports = static_cast<int>(g.edge_count());
    if (n < 2 || ports == 0 || n > 20)
        return std::numeric_limits<double>::infinity();

    // typed position: 2*e + s, pixel about to be entered is
    // edges[e].first when s == 0, edges[e].second when s == 1
    auto pixel_of = [&](int pos) {
        auto [a, b] = g.edges[pos / 2];
        return pos % 2 == 0 ? a : b;
    };
    auto moves_from = [&](int pos, std::uint32_t mask) {
        std::vector<Move> out;
        NodeId v = pixel_of(pos);
        int in_e = pos / 2;
        NodeId in_nb = g.edges[in_e].first == v ? g.edges[in_e].second : g.edges[in_e].first;
        auto [vi, vj] = g.pixels[v];
        auto [ai, aj] = g.pixels[in_nb];
        for (NodeId nb : g.adj[v]) {
            int out_e = g.edge_index(v, nb);
            auto [bi, bj] = g.pixels[nb];
            bool uncovered = !(mask >> v & 1u);
            if (nb == in_nb) {
                if (uncovered)
                    out.push_back({v, out_e, mow::tile_length(mow::TileKind::CoverUTurn), true});
            } else if (ai + bi == 2 * vi && aj + bj == 2 * vj) {
                out.push_back({v, out_e, mow::tile_length(mow::TileKind::PassStraight), false});
                if (uncovered)
                    out.push_back(
                        {v, out_e, mow::tile_length(mow::TileKind::CoverStraight), true});
            } else {
                out.push_back({v, out_e, mow::tile_length(mow::TileKind::PassTurn), false});
                if (uncovered)
                    out.push_back({v, out_e, mow::tile_length(mow::TileKind::CoverTurn), true});
            }
        }
        return out;
    };
    auto crossed = [&](NodeId from, int e) {
        return 2 * e + (g.edges[e].first == from ? 1 : 0);
    };

    const std::uint32_t full = n >= 32 ? ~0u : (1u << n) - 1;
    double best = std::numeric_limits<double>::infinity();

    // anchor: the tour covers pixel 0 somewhere; fix that tile first
    for (NodeId u : g.adj[0]) {
        for (NodeId w : g.adj[0]) {
            bool uturn = u == w;
            auto [ui, uj] = g.pixels[u];
            auto [wi, wj] = g.pixels[w];
            auto [vi, vj] = g.pixels[0];
            mow::TileKind kind =
                uturn ? mow::TileKind::CoverUTurn
                      : (ui + wi == 2 * vi && uj + wj == 2 * vj ? mow::TileKind::CoverStraight
                                                                : mow::TileKind::CoverTurn);
            int e_in = g.edge_index(0, u);
            int e_out = g.edge_index(0, w);
            int goal = 2 * e_in + (g.edges[e_in].first == 0 ? 0 : 1);
            int start = crossed(0, e_out);
            double base = mow::tile_length(kind);

            std::map<std::pair<int, std::uint32_t>, double> dist;
            using Item = std::pair<double, std::pair<int, std::uint32_t>>;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            dist[{start, 1u}] = base;
            pq.push({base, {start, 1u}});
            while (!pq.empty()) {
                auto [d, key] = pq.top();
                pq.pop();
                if (d > dist[key] + 1e-12)
                    continue;
                auto [pos, mask] = key;
                if (pos == goal && mask == full) {
                    best = std::min(best, d);
                    break;
                }
                for (const Move& mv : moves_from(pos, mask)) {
                    std::uint32_t nmask = mv.covering ? mask | (1u << mv.via) : mask;
                    int npos = crossed(mv.via, mv.exit_e);
                    auto nkey = std::pair(npos, nmask);
                    double nd = d + mv.len;
                    auto it = dist.find(nkey);
                    if (it == dist.end() || nd < it->second - 1e-15) {
                        dist[nkey] = nd;
                        pq.push({nd, nkey});
                    }
                }
            }
        }
    }
    return best;
}

namespace {

using Fp = std::vector<long long>;

void ftrim(Fp& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

// remainder of a by b (b monic) over F_p
Fp frem(Fp a, const Fp& b, long long p) {
    ftrim(a);
    while (a.size() >= b.size()) {
        long long c = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] = ((a[i + shift] - c * b[i]) % p + p) % p;
        ftrim(a);
    }
    return a;
}

Fp fquot(Fp a, const Fp& b, long long p) {
    ftrim(a);
    Fp q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size()) {
        long long c = a.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] = ((a[i + shift] - c * b[i]) % p + p) % p;
        ftrim(a);
    }
    return q;
}

} // namespace

std::vector<int> naive_factor_degrees(std::vector<std::int64_t> coeffs, std::int64_t p_in,
                                      bool& squarefree) {
    const long long p = p_in;
    Fp f;
    for (long long c : coeffs)
        f.push_back(((c % p) + p) % p);
    ftrim(f);
    if (f.size() <= 1) {
        squarefree = true;
        return {};
    }

    auto monic = [p](Fp a) {
        long long inv = 1, base = a.back() % p, e = p - 2;
        while (e) {
            if (e & 1)
                inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (long long& c : a)
            c = c * inv % p;
        return a;
    };

    std::vector<Fp> found;
    std::vector<int> degrees;
    // smallest monic divisor found by brute force is automatically irreducible
    for (int d = 1; f.size() > 1; ++d) {
        if (2 * d > static_cast<int>(f.size()) - 1) {
            degrees.push_back(static_cast<int>(f.size()) - 1);
            found.push_back(monic(f));
            break;
        }
        bool progress = true;
        while (progress && f.size() > 1) {
            progress = false;
            long long count = 1;
            for (int k = 0; k < d; ++k)
                count *= p;
            for (long long enc = 0; enc < count; ++enc) {
                Fp cand(d + 1, 0);
                long long e = enc;
                for (int k = 0; k < d; ++k) {
                    cand[k] = e % p;
                    e /= p;
                }
                cand[d] = 1;
                if (frem(f, cand, p).empty()) {
                    degrees.push_back(d);
                    found.push_back(cand);
                    f = fquot(f, cand, p);
                    // divide out the leading unit so f stays comparable
                    progress = true;
                    break;
                }
            }
        }
    }
    squarefree = true;
    for (std::size_t i = 0; i + 1 < found.size() && squarefree; ++i)
        for (std::size_t j = i + 1; j < found.size(); ++j)
            if (found[i] == found[j]) {
                squarefree = false;
                break;
            }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

} // namespace testsupport
