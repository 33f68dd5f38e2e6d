#include "coarseplane/metric.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>

#include "coarseplane/parallel.hpp"
#include "coarseplane/region.hpp"

namespace coarseplane {

namespace {

std::vector<int> bfs_from(const PlanarMap& map, const std::vector<VertexIx>& sources) {
    std::vector<int> dist(map.vertex_count(), -1);
    std::deque<VertexIx> q;
    for (VertexIx s : sources) {
        if (dist[s] == -1) { dist[s] = 0; q.push_back(s); }
    }
    while (!q.empty()) {
        VertexIx v = q.front(); q.pop_front();
        for (DartId d : map.rotation(v)) {
            VertexIx w = map.target(d);
            if (dist[w] == -1) { dist[w] = dist[v] + 1; q.push_back(w); }
        }
    }
    return dist;
}

} // namespace

DistanceOracle::DistanceOracle(const PlanarMap& map) : map_(map), rows_(map.vertex_count()) {}

std::vector<int> DistanceOracle::bfs_row(VertexIx s) const { return bfs_from(map_, {s}); }

const std::vector<int>& DistanceOracle::row(VertexIx s) const {
    if (rows_[s]) return *rows_[s];
    auto fresh = std::make_unique<std::vector<int>>(bfs_from(map_, {s}));
    std::lock_guard<std::mutex> lock(mu_);
    if (!rows_[s]) rows_[s] = std::move(fresh);
    return *rows_[s];
}

void DistanceOracle::warm_all() {
    parallel_for(map_.vertex_count(), [&](int s) {
        if (!rows_[s]) rows_[s] = std::make_unique<std::vector<int>>(bfs_from(map_, {s}));
    });
}

int distance(const PlanarMap& map, VertexIx x, VertexIx y) {
    auto d = bfs_from(map, {x});
    if (d[y] < 0)
        fail(Err::Disconnected, std::to_string(map.id_of(x)) + " and " + std::to_string(map.id_of(y)) +
                                    " are in different components");
    return d[y];
}

std::vector<int> core_radius(const PlanarMap& map) {
    auto rim = map.rim_vertices();
    if (rim.empty()) return std::vector<int>(map.vertex_count(), kInfDist);
    auto d = bfs_from(map, rim);
    for (int& v : d)
        if (v < 0) v = kInfDist;   // component without rim is all core
    return d;
}

namespace {

constexpr std::uint64_t kSat = UINT64_MAX;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSat - b ? kSat : a + b;
}

// Interval DAG of all x-y geodesics: vertices with d_x + d_y = d(x,y),
// edges along increasing d_x.
struct GeodesicDag {
    int span = -1;                        // d(x,y), -1 if disconnected pair
    std::vector<VertexIx> order;          // interval vertices, ascending (d_x, id)
    std::vector<int> pos;                 // vertex -> index in order, -1 outside
    std::vector<std::vector<int>> preds;  // positions of DAG predecessors
};

GeodesicDag build_dag(const PlanarMap& map, const std::vector<int>& dx, const std::vector<int>& dy,
                      VertexIx y) {
    GeodesicDag g;
    g.pos.assign(map.vertex_count(), -1);
    if (dx[y] < 0) return g;
    g.span = dx[y];
    for (VertexIx v = 0; v < map.vertex_count(); ++v)
        if (dx[v] >= 0 && dy[v] >= 0 && dx[v] + dy[v] == g.span) g.order.push_back(v);
    std::sort(g.order.begin(), g.order.end(),
              [&](VertexIx a, VertexIx b) { return dx[a] != dx[b] ? dx[a] < dx[b] : a < b; });
    for (std::size_t i = 0; i < g.order.size(); ++i) g.pos[g.order[i]] = static_cast<int>(i);
    g.preds.resize(g.order.size());
    for (std::size_t i = 0; i < g.order.size(); ++i) {
        VertexIx v = g.order[i];
        for (DartId d : map.rotation(v)) {
            VertexIx u = map.target(d);
            if (g.pos[u] >= 0 && dx[u] + 1 == dx[v]) g.preds[i].push_back(g.pos[u]);
        }
    }
    return g;
}

std::uint64_t count_on_dag(const GeodesicDag& g) {
    if (g.span < 0) return 0;
    std::vector<std::uint64_t> cnt(g.order.size(), 0);
    cnt[0] = 1;   // order[0] is x (d_x = 0)
    for (std::size_t i = 1; i < g.order.size(); ++i)
        for (int p : g.preds[i]) cnt[i] = sat_add(cnt[i], cnt[p]);
    return cnt.back();
}

// max over geodesics g of the DAG of min over vertices of g of dp(vertex)
int dag_minimax(const GeodesicDag& g, const std::vector<int>& dp) {
    std::vector<int> m(g.order.size());
    m[0] = dp[g.order[0]];
    for (std::size_t i = 1; i < g.order.size(); ++i) {
        int best = -1;
        for (int p : g.preds[i]) best = std::max(best, m[p]);
        m[i] = std::min(dp[g.order[i]], best);
    }
    return m.back();
}

} // namespace

std::uint64_t count_geodesics(const PlanarMap& map, VertexIx x, VertexIx y) {
    auto dx = bfs_from(map, {x});
    if (dx[y] < 0) return 0;
    auto dy = bfs_from(map, {y});
    return count_on_dag(build_dag(map, dx, dy, y));
}

std::vector<GeodesicPath> enumerate_geodesics(const PlanarMap& map, VertexIx x, VertexIx y,
                                              std::uint64_t cap) {
    auto dx = bfs_from(map, {x});
    if (dx[y] < 0)
        fail(Err::Disconnected, "no path between the endpoints");
    auto dy = bfs_from(map, {y});
    GeodesicDag g = build_dag(map, dx, dy, y);
    std::uint64_t total = count_on_dag(g);
    if (total > cap)
        fail_counted(Err::CapExceeded,
                     "geodesic count " + (total == kSat ? std::string(">= 2^64-1") : std::to_string(total)) +
                         " exceeds cap " + std::to_string(cap),
                     total);

    auto rd = core_radius(map);
    bool cert = pair_certified(g.span, rd[x], rd[y]);

    // Successor lists sorted by vertex index give lexicographic path order
    // (indices ascend with external ids).
    std::vector<std::vector<VertexIx>> succ(g.order.size());
    for (std::size_t i = 0; i < g.order.size(); ++i)
        for (int p : g.preds[i]) succ[p].push_back(static_cast<VertexIx>(i));
    for (auto& s : succ) std::sort(s.begin(), s.end(), [&](int a, int b) {
        return g.order[a] < g.order[b];
    });

    std::vector<GeodesicPath> out;
    out.reserve(total);
    std::vector<int> path{0};
    while (!path.empty()) {
        int at = path.back();
        if (g.order[at] == y) {
            GeodesicPath gp;
            gp.length = g.span;
            gp.certified = cert;
            for (int i : path) gp.vertices.push_back(g.order[i]);
            out.push_back(std::move(gp));
        }
        // Descend to the first child, else climb to the next sibling.
        int child = (g.order[at] == y) ? -1 : succ[at].front();
        if (child >= 0) {
            path.push_back(child);
            continue;
        }
        while (!path.empty()) {
            int node = path.back();
            path.pop_back();
            if (path.empty()) break;
            int parent = path.back();
            auto& sibs = succ[parent];
            auto it = std::find(sibs.begin(), sibs.end(), node);
            if (it + 1 != sibs.end()) { path.push_back(*(it + 1)); break; }
        }
    }
    return out;
}

GeodeticCheck is_geodetic_cycle(const PlanarMap& map, const std::vector<VertexIx>& cycle) {
    cycle_darts(map, cycle);   // validity only
    const int k = static_cast<int>(cycle.size());

    // Canonical traversal: start at the smallest vertex, head toward its
    // smaller cycle neighbor, so the witness pair does not depend on how the
    // caller happened to rotate or orient the cycle.
    int mpos = static_cast<int>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
    std::vector<VertexIx> canon(k);
    int dir = cycle[(mpos + 1) % k] < cycle[(mpos + k - 1) % k] ? 1 : -1;
    for (int i = 0; i < k; ++i) canon[i] = cycle[((mpos + dir * i) % k + k) % k];

    std::vector<std::vector<int>> rows(k);
    for (int i = 0; i < k; ++i) rows[i] = bfs_from(map, {canon[i]});

    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            int arc = j - i;
            int shorter = std::min(arc, k - arc);
            if (shorter > rows[i][canon[j]])
                return {false, std::make_pair(canon[i], canon[j])};
        }
    }
    return {true, std::nullopt};
}

namespace {

struct TripleScore {
    int delta = -1;
    // Tie-break key: (triple index, side, position of p); first hit wins.
    std::uint64_t key = UINT64_MAX;
    DeltaWitness wit;
};

// Row provider: exact mode serves cached oracle rows, sampled mode serves
// rows from a per-triple scratch cache.
template <class RowFn>
TripleScore eval_triple(const PlanarMap& map, VertexIx x, VertexIx y, VertexIx z,
                        std::uint64_t triple_index, RowFn&& prow) {
    const auto& rx = prow(x);
    const auto& ry = prow(y);
    const auto& rz = prow(z);
    GeodesicDag dag_xy = build_dag(map, rx, ry, y);
    GeodesicDag dag_yz = build_dag(map, ry, rz, z);
    GeodesicDag dag_zx = build_dag(map, rz, rx, x);

    struct Side { VertexIx a, b, c; const GeodesicDag *self, *o1, *o2; };
    const Side sides[3] = {
        {x, y, z, &dag_xy, &dag_yz, &dag_zx},
        {y, z, x, &dag_yz, &dag_zx, &dag_xy},
        {z, x, y, &dag_zx, &dag_xy, &dag_yz},
    };

    TripleScore best;
    for (int s = 0; s < 3; ++s) {
        const auto& side = sides[s];
        for (std::size_t pi = 0; pi < side.self->order.size(); ++pi) {
            VertexIx p = side.self->order[pi];
            const auto& dp = prow(p);
            int v = std::min(dag_minimax(*side.o1, dp), dag_minimax(*side.o2, dp));
            if (v > best.delta) {
                best.delta = v;
                best.key = (triple_index << 8) | static_cast<std::uint64_t>(s << 6) | (pi & 0x3f);
                best.wit = {side.a, side.b, side.c, p};
            }
        }
    }
    return best;
}

void merge_score(TripleScore& into, const TripleScore& s) {
    if (s.delta > into.delta || (s.delta == into.delta && s.key < into.key)) into = s;
}

} // namespace

DeltaResult thin_triangle_delta(const PlanarMap& map, const DeltaOptions& opts) {
    const int n = map.vertex_count();
    auto rd = core_radius(map);

    if (opts.mode == DeltaOptions::Mode::exact) {
        std::uint64_t entries = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
        if (entries > opts.apsp_entry_cap)
            fail_counted(Err::CapExceeded,
                         "all-pairs table needs " + std::to_string(entries) +
                             " entries, over the cap of " + std::to_string(opts.apsp_entry_cap) +
                             "; this suggests sampled mode",
                         entries);

        DistanceOracle oracle(map);
        oracle.warm_all();

        std::vector<std::vector<VertexIx>> partners(n);  // certified partners with larger index
        std::int64_t npairs = 0;
        for (VertexIx a = 0; a < n; ++a) {
            if (rd[a] < 2 && rd[a] != kInfDist) continue;  // d(a,b) >= 1 needs rd >= 2
            const auto& ra = oracle.row(a);
            for (VertexIx b = a + 1; b < n; ++b) {
                if (!pair_certified(ra[b], rd[a], rd[b])) continue;
                partners[a].push_back(b);
                ++npairs;
                std::uint64_t cnt = count_on_dag(build_dag(map, ra, oracle.row(b), b));
                if (cnt > opts.geodesic_cap)
                    fail_counted(Err::CapExceeded,
                                 "certified pair has " + std::to_string(cnt) +
                                     " geodesics, over the cap of " + std::to_string(opts.geodesic_cap) +
                                     "; this suggests sampled mode",
                                 cnt);
            }
        }

        struct Triple { VertexIx x, y, z; };
        std::vector<Triple> triples;
        for (VertexIx a = 0; a < n; ++a) {
            for (std::size_t i = 0; i < partners[a].size(); ++i) {
                VertexIx b = partners[a][i];
                for (std::size_t j = i + 1; j < partners[a].size(); ++j) {
                    VertexIx c = partners[a][j];
                    if (std::binary_search(partners[b].begin(), partners[b].end(), c))
                        triples.push_back({a, b, c});
                }
            }
        }

        const int nt = static_cast<int>(triples.size());
        auto scores = parallel_map<TripleScore>(nt, [&](int i) {
            const auto& t = triples[i];
            return eval_triple(map, t.x, t.y, t.z, static_cast<std::uint64_t>(i),
                               [&](VertexIx v) -> const std::vector<int>& { return oracle.row(v); });
        });
        TripleScore best;
        for (const auto& s : scores) merge_score(best, s);

        DeltaResult res;
        res.exact = true;
        res.certified_pairs = npairs;
        res.triples = nt;
        res.delta = best.delta < 0 ? 0 : best.delta;
        if (best.delta >= 0) res.witness = best.wit;
        return res;
    }

    // Sampled: fixed draw sequence from the seed, evaluation order free.
    std::mt19937_64 rng(opts.seed);
    struct Triple { VertexIx x, y, z; };
    std::vector<Triple> picked;
    std::unordered_map<VertexIx, std::vector<int>> scratch;
    auto sampled_row = [&](VertexIx v) -> const std::vector<int>& {
        auto it = scratch.find(v);
        if (it == scratch.end()) it = scratch.emplace(v, bfs_from(map, {v})).first;
        return it->second;
    };
    for (int t = 0; t < opts.trials; ++t) {
        VertexIx a = static_cast<VertexIx>(rng() % n);
        VertexIx b = static_cast<VertexIx>(rng() % n);
        VertexIx c = static_cast<VertexIx>(rng() % n);
        if (a == b || b == c || a == c) continue;
        const auto& ra = sampled_row(a);
        const auto& rbv = sampled_row(b);
        if (!pair_certified(ra[b], rd[a], rd[b]) || !pair_certified(rbv[c], rd[b], rd[c]) ||
            !pair_certified(ra[c], rd[a], rd[c]))
            continue;
        picked.push_back({a, b, c});
    }
    scratch.clear();

    const int nt = static_cast<int>(picked.size());
    auto scores = parallel_map<TripleScore>(nt, [&](int i) {
        const auto& t = picked[i];
        std::unordered_map<VertexIx, std::vector<int>> local;
        auto rowfn = [&](VertexIx v) -> const std::vector<int>& {
            auto it = local.find(v);
            if (it == local.end()) it = local.emplace(v, bfs_from(map, {v})).first;
            return it->second;
        };
        return eval_triple(map, t.x, t.y, t.z, static_cast<std::uint64_t>(i), rowfn);
    });
    TripleScore best;
    for (const auto& s : scores) merge_score(best, s);

    DeltaResult res;
    res.exact = false;
    res.certified_pairs = -1;
    res.triples = nt;
    res.delta = best.delta < 0 ? 0 : best.delta;
    if (best.delta >= 0) res.witness = best.wit;
    return res;
}

} // namespace coarseplane
