#include "coarseplane/hull.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "coarseplane/check.hpp"

namespace coarseplane {

namespace {

int position_of(const std::vector<VertexIx>& cycle, VertexIx v) {
    auto it = std::find(cycle.begin(), cycle.end(), v);
    if (it == cycle.end())
        fail(Err::BadFormat, "vertex " + std::to_string(v) + " is not on the cycle");
    return static_cast<int>(it - cycle.begin());
}

// Forward arc along the cycle's stored orientation, endpoints included.
std::vector<VertexIx> arc_between(const std::vector<VertexIx>& cycle, int from, int to) {
    const int k = static_cast<int>(cycle.size());
    std::vector<VertexIx> arc;
    for (int i = from;; i = (i + 1) % k) {
        arc.push_back(cycle[i]);
        if (i == to) break;
    }
    return arc;
}

Bitset path_edge_set(const PlanarMap& map, const std::vector<VertexIx>& path) {
    Bitset b(map.edge_count());
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        DartId d = map.dart_between(path[i], path[i + 1]);
        ck_assert(d >= 0, "arc/geodesic edge missing from map");
        b.set(PlanarMap::edge_of(d));
    }
    return b;
}

std::vector<VertexIx> oriented_from_x(std::vector<VertexIx> g, VertexIx x, VertexIx y) {
    if (g.size() < 2) fail(Err::BadFormat, "geodesic needs at least 2 vertices");
    if (g.front() == y && g.back() == x) std::reverse(g.begin(), g.end());
    if (g.front() != x || g.back() != y)
        fail(Err::BadFormat, "geodesic endpoints do not match the chosen pair");
    return g;
}

std::vector<VertexIx> rotate_min_first(std::vector<VertexIx> cycle) {
    auto it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
    return cycle;
}

// True when every edge of the path lies in the closed region of a composite
// curve: on the curve's constituent paths, or with both sides in the shadow.
bool path_inside_closed(const PlanarMap& map, const std::vector<VertexIx>& path,
                        const Bitset& on_edges, const Bitset& shadow) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        DartId d = map.dart_between(path[i], path[i + 1]);
        ck_assert(d >= 0, "path edge missing from map");
        int e = PlanarMap::edge_of(d);
        if (on_edges.test(e)) continue;
        if (!shadow.test(map.face_of(d)) || !shadow.test(map.face_of(PlanarMap::twin(d))))
            return false;
    }
    return true;
}

} // namespace

bool path_crosses_cycle(const PlanarMap& map, const std::vector<VertexIx>& path,
                        const Bitset& curve_edges) {
    Bitset shadow = region_of_edge_cut(map, curve_edges);
    if (!shadow.any()) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        DartId d = map.dart_between(path[i], path[i + 1]);
        ck_assert(d >= 0, "path edge missing from map");
        int e = PlanarMap::edge_of(d);
        if (curve_edges.test(e)) continue;
        if (shadow.test(map.face_of(d)) && shadow.test(map.face_of(PlanarMap::twin(d))))
            return true;
    }
    return false;
}

SideClass classify_side(const PlanarMap& map, const std::vector<VertexIx>& cycle, VertexIx x,
                        VertexIx y, const std::vector<VertexIx>& geodesic) {
    if (x == y) fail(Err::BadFormat, "side classification needs two distinct anchor points");
    int px = position_of(cycle, x), py = position_of(cycle, y);
    auto g = oriented_from_x(geodesic, x, y);
    path_darts(map, g);

    CycleRegion reg = bounded_side(map, cycle);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        DartId d = map.dart_between(g[i], g[i + 1]);
        if (reg.interior_edges.test(PlanarMap::edge_of(d)))
            fail(Err::GeodesicEntersCycle, "geodesic edge " + std::to_string(map.id_of(g[i])) + "-" +
                                               std::to_string(map.id_of(g[i + 1])) +
                                               " lies strictly inside the cycle");
    }

    SideClass out;
    out.cycle = cycle;
    out.x = x;
    out.y = y;
    out.arc_xy = arc_between(cycle, px, py);
    auto arc_yx = arc_between(cycle, py, px);

    Bitset eg = path_edge_set(map, g);
    Bitset cut1 = path_edge_set(map, arc_yx);
    cut1 ^= eg;
    Bitset cut2 = path_edge_set(map, out.arc_xy);
    cut2 ^= eg;
    bool s1 = reg.interior_faces.subset_of(region_of_edge_cut(map, cut1));
    bool s2 = reg.interior_faces.subset_of(region_of_edge_cut(map, cut2));
    ck_assert(!(s1 && s2), "geodesic classified on both sides at once");
    out.cls = s1 ? Side::S1 : (s2 ? Side::S2 : Side::Neither);
    return out;
}

bool precedes(const PlanarMap& map, const std::vector<VertexIx>& arc,
              const std::vector<VertexIx>& g1, const std::vector<VertexIx>& g2) {
    Bitset ea = path_edge_set(map, arc);
    Bitset c1 = path_edge_set(map, g1);
    c1 ^= ea;
    Bitset c2 = path_edge_set(map, g2);
    c2 ^= ea;
    return region_of_edge_cut(map, c1).subset_of(region_of_edge_cut(map, c2));
}

GeodesicPath meet_on_arc(const PlanarMap& map, const std::vector<VertexIx>& arc,
                         const GeodesicPath& g1, const GeodesicPath& g2) {
    const VertexIx x = arc.front(), y = arc.back();
    auto p1 = oriented_from_x(g1.vertices, x, y);
    auto p2 = oriented_from_x(g2.vertices, x, y);
    ck_assert(p1.size() == p2.size(), "side-class members of unequal length");

    Bitset ea = path_edge_set(map, arc);
    Bitset e1 = path_edge_set(map, p1);
    Bitset e2 = path_edge_set(map, p2);
    Bitset on1 = ea, on2 = ea;
    on1 |= e1;
    on2 |= e2;
    Bitset cut1 = ea, cut2 = ea;
    cut1 ^= e1;
    cut2 ^= e2;
    Bitset shadow1 = region_of_edge_cut(map, cut1);
    Bitset shadow2 = region_of_edge_cut(map, cut2);

    std::unordered_map<VertexIx, int> at2;
    for (std::size_t i = 0; i < p2.size(); ++i) at2[p2[i]] = static_cast<int>(i);

    // Common vertices appear in the same order along both geodesics (their
    // positions equal their distance from x), splitting the pair into
    // bigons; per bigon take the subpath inside the other's composite.
    std::vector<std::pair<int, int>> common;   // (index in p1, index in p2)
    for (std::size_t i = 0; i < p1.size(); ++i) {
        auto it = at2.find(p1[i]);
        if (it != at2.end()) common.emplace_back(static_cast<int>(i), it->second);
    }
    std::vector<VertexIx> merged{x};
    for (std::size_t c = 0; c + 1 < common.size(); ++c) {
        auto [a1, a2] = common[c];
        auto [b1, b2] = common[c + 1];
        ck_assert(b2 > a2, "common vertices out of order along the second geodesic");
        std::vector<VertexIx> sub1(p1.begin() + a1, p1.begin() + b1 + 1);
        std::vector<VertexIx> sub2(p2.begin() + a2, p2.begin() + b2 + 1);
        const std::vector<VertexIx>* chosen;
        if (sub1 == sub2 || path_inside_closed(map, sub1, on2, shadow2)) {
            chosen = &sub1;
        } else {
            ck_assert(path_inside_closed(map, sub2, on1, shadow1),
                      "neither bigon side lies inside the other's composite");
            chosen = &sub2;
        }
        merged.insert(merged.end(), chosen->begin() + 1, chosen->end());
    }

    ck_assert(merged.size() == p1.size(), "meet result length differs from the operands");
    path_darts(map, merged);   // must be a simple path
    GeodesicPath out;
    out.vertices = merged;
    out.length = static_cast<int>(merged.size()) - 1;
    out.certified = g1.certified;
    ck_assert(precedes(map, arc, out.vertices, p1) && precedes(map, arc, out.vertices, p2),
              "meet result is not below both operands");
    return out;
}

GeodesicPath meet(const PlanarMap& map, const std::vector<VertexIx>& cycle, VertexIx x, VertexIx y,
                  const GeodesicPath& g1, const GeodesicPath& g2) {
    if (classify_side(map, cycle, x, y, g1.vertices).cls != Side::S1)
        fail(Err::NotInS1, "first geodesic is not in the near side class");
    if (classify_side(map, cycle, x, y, g2.vertices).cls != Side::S1)
        fail(Err::NotInS1, "second geodesic is not in the near side class");
    int px = position_of(cycle, x), py = position_of(cycle, y);
    return meet_on_arc(map, arc_between(cycle, px, py), g1, g2);
}

GeodesicPath closest_geodesic(const PlanarMap& map, const std::vector<VertexIx>& cycle, VertexIx x,
                              VertexIx y, Side side, std::uint64_t cap) {
    ck_assert(side != Side::Neither, "closest_geodesic needs a definite side");
    auto all = enumerate_geodesics(map, x, y, cap);
    CycleRegion reg = bounded_side(map, cycle);
    int px = position_of(cycle, x), py = position_of(cycle, y);
    auto arc_xy = arc_between(cycle, px, py);
    auto arc_yx = arc_between(cycle, py, px);
    Bitset exy = path_edge_set(map, arc_xy);
    Bitset eyx = path_edge_set(map, arc_yx);

    std::vector<const GeodesicPath*> outside;
    std::vector<const GeodesicPath*> members;
    for (const auto& g : all) {
        Bitset eg = path_edge_set(map, g.vertices);
        Bitset inner = eg;
        inner &= reg.interior_edges;
        if (inner.any()) continue;   // enters the cycle
        outside.push_back(&g);
        Bitset cut = (side == Side::S1) ? eyx : exy;
        cut ^= eg;
        if (reg.interior_faces.subset_of(region_of_edge_cut(map, cut))) members.push_back(&g);
    }
    if (members.empty())
        fail(Err::EmptySideClass,
             "no geodesic between " + std::to_string(map.id_of(x)) + " and " +
                 std::to_string(map.id_of(y)) + " lies outside the cycle on the requested side");

    const auto& arc = (side == Side::S1) ? arc_xy : arc_yx;
    GeodesicPath least = *members.front();
    for (std::size_t i = 1; i < members.size(); ++i)
        least = meet_on_arc(map, arc, least, *members[i]);

    Bitset curve = path_edge_set(map, arc);
    curve ^= path_edge_set(map, least.vertices);
    for (const GeodesicPath* g : outside)
        ck_assert(!path_crosses_cycle(map, g->vertices, curve),
                  "an outside geodesic crosses the closest-geodesic composite");
    return least;
}

std::vector<std::vector<VertexIx>> decompose_even_subgraph(const PlanarMap& map,
                                                           const Bitset& edges) {
    const int n = map.vertex_count();
    std::vector<std::vector<std::pair<VertexIx, int>>> adj(n);   // (other endpoint, edge)
    for (int e : edges.to_vector()) {
        VertexIx u = map.origin(2 * e), v = map.target(2 * e);
        adj[u].emplace_back(v, e);
        adj[v].emplace_back(u, e);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::vector<bool> used(map.edge_count(), false);
    std::vector<int> pos(n, -1);
    std::vector<std::vector<VertexIx>> cycles;

    for (;;) {
        VertexIx start = -1;
        for (VertexIx v = 0; v < n && start < 0; ++v)
            for (auto& [w, e] : adj[v])
                if (!used[e]) { start = v; break; }
        if (start < 0) break;

        std::vector<VertexIx> stack{start};
        pos[start] = 0;
        while (!stack.empty()) {
            VertexIx v = stack.back();
            int edge = -1;
            VertexIx next = -1;
            for (auto& [w, e] : adj[v])
                if (!used[e]) { next = w; edge = e; break; }
            if (edge < 0) {
                pos[v] = -1;
                stack.pop_back();
                continue;
            }
            used[edge] = true;
            if (pos[next] >= 0) {
                std::vector<VertexIx> cyc(stack.begin() + pos[next], stack.end());
                for (std::size_t i = pos[next] + 1; i < stack.size(); ++i) pos[stack[i]] = -1;
                stack.resize(pos[next] + 1);
                cycles.push_back(rotate_min_first(std::move(cyc)));
            } else {
                pos[next] = static_cast<int>(stack.size());
                stack.push_back(next);
            }
        }
    }
    return cycles;
}

HullTrace geodetic_hull(const PlanarMap& map, FaceId face, std::uint64_t geodesic_cap) {
    if (face < 0 || face >= map.face_count()) fail(Err::BadFormat, "no such face");
    if (!map.face(face).bounded) fail(Err::BadFormat, "hull of the outer face is undefined");

    auto walk = map.face_vertices(face);
    {
        std::unordered_set<VertexIx> seen(walk.begin(), walk.end());
        if (seen.size() != walk.size())
            fail(Err::FaceWalkNotCycle, "face boundary walk repeats a vertex");
    }
    if (walk.size() < 3) fail(Err::FaceWalkNotCycle, "face boundary walk is not a cycle");

    auto rd = core_radius(map);
    HullTrace trace;
    trace.face = face;
    std::vector<VertexIx> cyc = rotate_min_first(walk);
    trace.cycles.push_back(cyc);

    auto touches_rim = [&](const std::vector<VertexIx>& vs) {
        for (VertexIx v : vs)
            if (rd[v] == 0) return true;
        return false;
    };
    bool rim_touched = touches_rim(cyc);

    const std::size_t guard = cyc.size() + 1;
    for (std::size_t iter = 0; iter < guard; ++iter) {
        GeodeticCheck chk = is_geodetic_cycle(map, cyc);
        if (chk.geodetic) {
            trace.geodetic = true;
            break;
        }
        auto [x, y] = *chk.witness;

        GeodesicPath gmin;
        Side used = Side::S1;
        try {
            gmin = closest_geodesic(map, cyc, x, y, Side::S1, geodesic_cap);
        } catch (const MapError& e) {
            if (e.code() != Err::EmptySideClass) throw;
            gmin = closest_geodesic(map, cyc, x, y, Side::S2, geodesic_cap);
            used = Side::S2;
        }

        int px = position_of(cyc, x), py = position_of(cyc, y);
        auto arc_xy = arc_between(cyc, px, py);
        auto arc_yx = arc_between(cyc, py, px);
        const auto& kept = (used == Side::S1) ? arc_yx : arc_xy;
        const auto& discarded = (used == Side::S1) ? arc_xy : arc_yx;

        Bitset sym = path_edge_set(map, kept);
        sym ^= path_edge_set(map, gmin.vertices);
        auto lobes = decompose_even_subgraph(map, sym);

        const std::vector<VertexIx>* next_cycle = nullptr;
        int best_faces = -1;
        for (const auto& lobe : lobes) {
            CycleRegion lr = bounded_side(map, lobe);
            if (!lr.interior_faces.test(face)) continue;
            int nf = lr.interior_faces.count();
            if (!next_cycle || nf < best_faces) { next_cycle = &lobe; best_faces = nf; }
        }
        ck_assert(next_cycle != nullptr, "no replacement lobe encloses the face");
        ck_assert(next_cycle->size() < cyc.size(), "hull cycle length failed to decrease");

        rim_touched = rim_touched || touches_rim(gmin.vertices) || touches_rim(*next_cycle);

        HullStep step;
        step.x = x;
        step.y = y;
        step.discarded_arc = discarded;
        step.inserted = gmin.vertices;
        trace.steps.push_back(std::move(step));

        cyc = rotate_min_first(*next_cycle);
        trace.cycles.push_back(cyc);
    }
    ck_assert(trace.geodetic, "hull iteration guard exceeded");

    // Certified: nothing the trace touched is on the rim, and every pair on
    // every cycle has its window distance witnessed inside the core.
    if (!rim_touched) {
        bool all_pairs = true;
        std::unordered_map<VertexIx, std::vector<int>> rows;
        DistanceOracle oracle(map);
        for (const auto& c : trace.cycles) {
            for (std::size_t i = 0; i < c.size() && all_pairs; ++i) {
                auto it = rows.find(c[i]);
                if (it == rows.end()) it = rows.emplace(c[i], oracle.bfs_row(c[i])).first;
                for (std::size_t j = i + 1; j < c.size(); ++j)
                    if (!pair_certified(it->second[c[j]], rd[c[i]], rd[c[j]])) {
                        all_pairs = false;
                        break;
                    }
            }
            if (!all_pairs) break;
        }
        trace.certified = all_pairs;
    }
    return trace;
}

nlohmann::ordered_json hull_trace_json(const PlanarMap& map, const HullTrace& trace) {
    nlohmann::ordered_json j;
    j["face"] = trace.face;
    auto cycles = nlohmann::ordered_json::array();
    for (const auto& c : trace.cycles) {
        auto jc = nlohmann::ordered_json::array();
        for (VertexIx v : c) jc.push_back(map.id_of(v));
        cycles.push_back(std::move(jc));
    }
    j["cycles"] = std::move(cycles);
    auto steps = nlohmann::ordered_json::array();
    for (const auto& s : trace.steps) {
        nlohmann::ordered_json js;
        js["x"] = map.id_of(s.x);
        js["y"] = map.id_of(s.y);
        auto ins = nlohmann::ordered_json::array();
        for (VertexIx v : s.inserted) ins.push_back(map.id_of(v));
        js["inserted"] = std::move(ins);
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    j["geodetic"] = trace.geodetic;
    j["certified"] = trace.certified;
    return j;
}

} // namespace coarseplane
