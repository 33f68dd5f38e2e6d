#include "coarseplane/lii.hpp"

#include <algorithm>
#include <set>

#include "coarseplane/check.hpp"
#include "coarseplane/errors.hpp"
#include "coarseplane/hull.hpp"
#include "coarseplane/isoperimetry.hpp"
#include "coarseplane/metric.hpp"
#include "coarseplane/parallel.hpp"
#include "coarseplane/region.hpp"

namespace coarseplane {

namespace {

struct Component {
    std::vector<VertexIx> vertices;   // sorted
    std::vector<VertexIx> hits;       // banned neighbors actually adjacent, sorted
    bool rim_free = true;
};

std::vector<Component> components_excluding(const PlanarMap& map, const Bitset& banned) {
    const int n = map.vertex_count();
    std::vector<Component> out;
    Bitset seen(n);
    for (VertexIx s = 0; s < n; ++s) {
        if (banned.test(s) || seen.test(s)) continue;
        Component comp;
        Bitset hit(n);
        std::vector<VertexIx> stack{s};
        seen.set(s);
        while (!stack.empty()) {
            VertexIx v = stack.back();
            stack.pop_back();
            comp.vertices.push_back(v);
            if (map.is_rim(v)) comp.rim_free = false;
            for (DartId d : map.rotation(v)) {
                VertexIx w = map.target(d);
                if (banned.test(w)) {
                    hit.set(w);
                } else if (!seen.test(w)) {
                    seen.set(w);
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        comp.hits = hit.to_vector();
        out.push_back(std::move(comp));
    }
    return out;
}

// Articulation vertices of the subgraph avoiding `banned`, iterative DFS.
std::vector<VertexIx> articulation_points(const PlanarMap& map, const Bitset& banned) {
    const int n = map.vertex_count();
    std::vector<int> disc(n, -1), low(n, -1), parent(n, -1);
    std::vector<bool> cut(n, false);
    int timer = 0;
    struct Frame {
        VertexIx v;
        int slot;       // position in rotation
        int children;
    };
    for (VertexIx s = 0; s < n; ++s) {
        if (banned.test(s) || disc[s] >= 0) continue;
        std::vector<Frame> stack{{s, 0, 0}};
        disc[s] = low[s] = timer++;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            auto rot = map.rotation(fr.v);
            if (fr.slot < static_cast<int>(rot.size())) {
                VertexIx w = map.target(rot[fr.slot++]);
                if (banned.test(w) || w == parent[fr.v]) continue;
                if (disc[w] >= 0) {
                    low[fr.v] = std::min(low[fr.v], disc[w]);
                } else {
                    parent[w] = fr.v;
                    ++fr.children;
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, 0, 0});
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    VertexIx p = stack.back().v;
                    low[p] = std::min(low[p], low[fr.v]);
                    if (p != s && low[fr.v] >= disc[p]) cut[p] = true;
                }
            }
        }
        // root is a cut vertex iff its DFS tree has >= 2 children
        int root_children = 0;
        for (VertexIx v = 0; v < n; ++v)
            if (parent[v] == s) ++root_children;
        if (root_children >= 2) cut[s] = true;
    }
    std::vector<VertexIx> out;
    for (VertexIx v = 0; v < n; ++v)
        if (cut[v]) out.push_back(v);
    return out;
}

} // namespace

std::vector<Decoration> find_decorations(const PlanarMap& map) {
    const int n = map.vertex_count();
    std::set<std::vector<VertexIx>> seen;
    std::vector<Decoration> candidates;
    auto consider = [&](const Component& comp) {
        if (!comp.rim_free) return;
        if (comp.hits.empty() || comp.hits.size() > 2) return;
        if (seen.insert(comp.vertices).second)
            candidates.push_back({comp.vertices, comp.hits});
    };

    Bitset banned(n);
    for (VertexIx u = 0; u < n; ++u) {
        banned.set(u);
        for (const auto& comp : components_excluding(map, banned)) consider(comp);
        if (n > 200) {
            // A boundary pair {u,w} always leaves w separating the decoration
            // from the rest of the graph once u is gone, so cut vertices of
            // G - u are the only partners worth pairing with u.  (The lone
            // uncovered case, G = D + {u,w} with nothing else, needs a rim of
            // size <= 2 and cannot occur in these windows.)
            for (VertexIx w : articulation_points(map, banned)) {
                banned.set(w);
                for (const auto& comp : components_excluding(map, banned)) consider(comp);
                banned.reset(w);
            }
        } else {
            for (VertexIx w = u + 1; w < n; ++w) {
                banned.set(w);
                for (const auto& comp : components_excluding(map, banned)) consider(comp);
                banned.reset(w);
            }
        }
        banned.reset(u);
    }

    std::vector<Decoration> out;
    for (const auto& cand : candidates) {
        bool maximal = true;
        for (const auto& other : candidates) {
            if (other.vertices.size() <= cand.vertices.size()) continue;
            if (std::includes(other.vertices.begin(), other.vertices.end(),
                              cand.vertices.begin(), cand.vertices.end())) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(cand);
    }
    std::sort(out.begin(), out.end(), [](const Decoration& a, const Decoration& b) {
        return a.vertices < b.vertices;
    });
    return out;
}

std::vector<std::pair<int, int>> decoration_overlaps(const std::vector<Decoration>& decs) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < decs.size(); ++i)
        for (std::size_t j = i + 1; j < decs.size(); ++j) {
            std::vector<VertexIx> common;
            std::set_intersection(decs[i].vertices.begin(), decs[i].vertices.end(),
                                  decs[j].vertices.begin(), decs[j].vertices.end(),
                                  std::back_inserter(common));
            if (!common.empty()) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    return out;
}

EliminationResult eliminate_decorations(const PlanarMap& map) {
    EliminationResult res{map, {}, {}, 0};
    res.vertex_map.resize(map.vertex_count());
    for (int i = 0; i < map.vertex_count(); ++i) res.vertex_map[i] = i;

    int guard = map.vertex_count() + 1;
    while (guard-- > 0) {
        auto decs = find_decorations(res.map);
        if (decs.empty()) break;
        const PlanarMap& cur = res.map;
        // smallest external id first, so the pass order is reproducible
        const Decoration* pick = &decs[0];
        for (const auto& d : decs)
            if (cur.id_of(d.vertices[0]) < cur.id_of(pick->vertices[0])) pick = &d;

        Bitset gone(cur.vertex_count());
        for (VertexIx v : pick->vertices) gone.set(v);
        EliminatedDecoration record;
        for (VertexIx v : pick->vertices) record.vertices.push_back(cur.id_of(v));
        for (VertexIx v : pick->boundary) record.boundary.push_back(cur.id_of(v));

        bool insert_edge = false;
        VertexIx bv = pick->boundary[0];
        VertexIx bw = pick->boundary.size() == 2 ? pick->boundary[1] : -1;
        if (bw >= 0 && !cur.adjacent(bv, bw)) insert_edge = true;

        int kept_nonrim = 0;
        MapSpec spec;
        for (VertexIx v = 0; v < cur.vertex_count(); ++v) {
            if (gone.test(v)) continue;
            if (!cur.is_rim(v)) ++kept_nonrim;
            MapSpecVertex rec;
            rec.id = cur.id_of(v);
            bool inserted = false;
            VertexIx partner = (v == bv) ? bw : (v == bw ? bv : -1);
            for (DartId d : cur.rotation(v)) {
                VertexIx w = cur.target(d);
                if (gone.test(w)) {
                    if (insert_edge && partner >= 0 && !inserted) {
                        rec.nbrs.push_back(cur.id_of(partner));
                        inserted = true;
                    }
                    continue;
                }
                rec.nbrs.push_back(cur.id_of(w));
            }
            spec.vertices.push_back(std::move(rec));
        }
        if (kept_nonrim == 0)
            fail(Err::EverythingIsADecoration, "no non-rim vertices would survive");
        for (VertexIx v = 0; v < cur.vertex_count(); ++v)
            if (cur.is_rim(v)) spec.rim.push_back(cur.id_of(v));
        spec.meta = cur.source_spec().meta;

        PlanarMap next = build_map(std::move(spec));
        for (auto& slot : res.vertex_map) {
            if (slot < 0) continue;
            VertexId id = cur.id_of(slot);
            slot = next.has_id(id) ? next.index_of(id) : -1;
        }
        res.map = std::move(next);
        res.eliminated.push_back(std::move(record));
        ++res.passes;
    }
    ck_assert(guard >= 0, "decoration elimination failed to reach a fixpoint");

    bool any_nonrim = false;
    for (VertexIx v = 0; v < res.map.vertex_count(); ++v) {
        if (res.map.is_rim(v)) continue;
        any_nonrim = true;
        // An isolated residue is reachable: a rimless component can erode
        // down to a point, which has boundary 0 and is no decoration.  Any
        // surviving degree 1 or 2 would be a decoration the loop missed.
        if (res.map.degree(v) == 0)
            fail(Err::EverythingIsADecoration, "component erodes to an isolated vertex");
        ck_assert(res.map.degree(v) >= 3, "non-rim degree below 3 after elimination");
    }
    if (!any_nonrim) fail(Err::EverythingIsADecoration, "no non-rim vertices survive");
    return res;
}

QuasiIsometryReport quasi_isometry_check(const PlanarMap& g, const PlanarMap& gp,
                                         const std::vector<int>& corr, const Rational& c,
                                         const std::vector<std::pair<VertexIx, VertexIx>>& samples) {
    if (!(Rational::of(0) < c)) fail(Err::BadFormat, "cheeger bound must be positive");
    if (static_cast<int>(corr.size()) != g.vertex_count())
        fail(Err::BadFormat, "correspondence size mismatch");

    QuasiIsometryReport rep;
    rep.bound = Rational::of(2) / c;
    auto decs = find_decorations(g);
    rep.decoration_count = static_cast<int>(decs.size());
    for (const auto& d : decs) {
        int size = static_cast<int>(d.vertices.size());
        rep.max_decoration_size = std::max(rep.max_decoration_size, size);
        if (rep.bound < Rational::of(size))
            fail(Err::ViolationFound,
                 "decoration of size " + std::to_string(size) + " exceeds 2/c");
    }

    auto rd_g = core_radius(g);
    auto rd_gp = core_radius(gp);
    DistanceOracle og(g), ogp(gp);

    std::vector<std::pair<VertexIx, VertexIx>> pairs = samples;
    if (pairs.empty()) {
        for (VertexIx x = 0; x < g.vertex_count(); ++x)
            for (VertexIx y = x + 1; y < g.vertex_count(); ++y) pairs.emplace_back(x, y);
    }
    for (auto [x, y] : pairs) {
        if (x < 0 || x >= g.vertex_count() || y < 0 || y >= g.vertex_count() || x == y)
            fail(Err::BadFormat, "bad sample pair");
        int cx = corr[x], cy = corr[y];
        if (cx < 0 || cy < 0) {
            ++rep.pairs_skipped;
            continue;
        }
        int dg = og.dist(x, y);
        if (dg < 0) fail(Err::Disconnected, "sample pair disconnected");
        int dgp = ogp.dist(cx, cy);
        if (dgp < 0) fail(Err::Disconnected, "sample pair disconnected after elimination");
        if (!pair_certified(dg, rd_g[x], rd_g[y]) || !pair_certified(dgp, rd_gp[cx], rd_gp[cy])) {
            ++rep.pairs_skipped;
            continue;
        }
        ++rep.pairs_checked;
        // d_G'(x,y) <= d_G(x,y) <= (2/c) d_G'(x,y)
        bool lower = dgp <= dg;
        bool upper = Rational::of(dg) <= rep.bound * Rational::of(dgp);
        if (!lower || !upper)
            fail(Err::ViolationFound,
                 "pair (" + std::to_string(g.id_of(x)) + "," + std::to_string(g.id_of(y)) +
                     ") d=" + std::to_string(dg) + " d'=" + std::to_string(dgp));
    }
    return rep;
}

CombinatorialDisk disk_from_cycle(const PlanarMap& map, const std::vector<VertexIx>& cycle) {
    CycleRegion region = bounded_side(map, cycle);
    for (VertexIx v : region.closed_vertices.to_vector())
        if (map.is_rim(v))
            fail(Err::TouchesRim, "vertex " + std::to_string(map.id_of(v)));

    Bitset kept(map.edge_count());
    for (DartId d : cycle_darts(map, region.cycle)) kept.set(PlanarMap::edge_of(d));
    kept |= region.interior_edges;

    MapSpec spec;
    for (VertexIx v = 0; v < map.vertex_count(); ++v) {
        if (!region.closed_vertices.test(v)) continue;
        MapSpecVertex rec;
        rec.id = map.id_of(v);
        for (DartId d : map.rotation(v))
            if (kept.test(PlanarMap::edge_of(d))) rec.nbrs.push_back(map.id_of(map.target(d)));
        spec.vertices.push_back(std::move(rec));
    }
    // the region sits left of the oriented cycle, so its first dart has the
    // disk exterior on the right
    spec.outer_face_dart = {map.id_of(region.cycle[0]), map.id_of(region.cycle[1])};

    CombinatorialDisk disk{build_map(std::move(spec)), {}};
    for (VertexIx v : region.cycle) disk.boundary.push_back(disk.map.index_of(map.id_of(v)));

    for (VertexIx v = 0; v < disk.map.vertex_count(); ++v)
        if (disk.map.degree(v) < 2)
            fail(Err::DegreeBelowTwo, "vertex " + std::to_string(disk.map.id_of(v)));
    for (const auto& f : disk.map.faces()) {
        if (!f.bounded) continue;
        std::set<VertexIx> distinct;
        for (DartId d : f.walk) distinct.insert(disk.map.origin(d));
        if (static_cast<int>(distinct.size()) != f.length)
            fail(Err::DegreeBelowTwo, "bounded face walk repeats a vertex");
    }
    return disk;
}

LiiCounts lii_check(const CombinatorialDisk& disk, const Rational& k, int d) {
    LiiCounts out;
    out.boundary_length = static_cast<int>(disk.boundary.size());
    for (const auto& f : disk.map.faces()) {
        if (!f.bounded) continue;
        ++out.bounded_faces;
        out.max_face_length = std::max(out.max_face_length, f.length);
    }
    out.ok = out.max_face_length <= d &&
             Rational::of(out.bounded_faces) <= k * Rational::of(out.boundary_length);
    return out;
}

FacesInsideRatio faces_inside_ratio(const PlanarMap& map,
                                    const std::vector<std::vector<VertexIx>>& cycles) {
    FacesInsideRatio out;
    out.table = parallel_map<CycleRatio>(static_cast<int>(cycles.size()), [&](int i) {
        CycleRegion region = bounded_side(map, cycles[i]);
        for (VertexIx v : region.closed_vertices.to_vector())
            if (map.is_rim(v))
                fail(Err::TouchesRim, "vertex " + std::to_string(map.id_of(v)));
        CycleRatio row;
        row.cycle = region.cycle;
        row.faces = static_cast<int>(region.interior_faces.count());
        row.length = static_cast<int>(region.cycle.size());
        row.ratio = Rational(row.faces, row.length);
        return row;
    });
    out.max_ratio = Rational::of(0);
    for (const auto& row : out.table) out.max_ratio = std::max(out.max_ratio, row.ratio);
    return out;
}

namespace {

std::vector<VertexIx> canonical_cycle(std::vector<VertexIx> cycle) {
    auto mn = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), mn, cycle.end());
    if (cycle.size() > 2 && cycle.back() < cycle[1]) {
        std::reverse(cycle.begin() + 1, cycle.end());
    }
    return cycle;
}

// Outer walk of the submap induced on s (only edges with both endpoints
// inside).  Unlike boundary_walk this leaves the crown out, so on flat maps
// the contour of a metric ball comes back as a simple cycle.
std::vector<VertexIx> induced_contour(const PlanarMap& map, const std::vector<VertexIx>& s) {
    Bitset in(map.vertex_count());
    for (VertexIx v : s) in.set(v);
    Bitset hedges(map.edge_count());
    for (VertexIx v : s)
        for (DartId d : map.rotation(v))
            if (in.test(map.target(d))) hedges.set(PlanarMap::edge_of(d));
    if (!hedges.any()) fail(Err::BadFormat, "subset induces no edges");

    // the unbounded face of the submap is made of the faces still
    // dual-reachable from the outer face once the kept edges are cut
    Bitset shadow = region_of_edge_cut(map, hedges);
    std::pair<VertexId, VertexId> hint{-1, -1};
    for (VertexIx v : s) {
        for (DartId d : map.rotation(v)) {
            if (!hedges.test(PlanarMap::edge_of(d))) continue;
            if (!shadow.test(map.face_of(d))) {
                hint = {map.id_of(v), map.id_of(map.target(d))};
                break;
            }
        }
        if (hint.first >= 0) break;
    }
    ck_assert(hint.first >= 0, "induced contour found no outward dart");

    MapSpec spec;
    for (VertexIx v = 0; v < map.vertex_count(); ++v) {
        if (!in.test(v)) continue;
        MapSpecVertex rec;
        rec.id = map.id_of(v);
        for (DartId d : map.rotation(v))
            if (in.test(map.target(d))) rec.nbrs.push_back(map.id_of(map.target(d)));
        spec.vertices.push_back(std::move(rec));
    }
    spec.outer_face_dart = hint;
    PlanarMap h = build_map(std::move(spec));
    std::vector<VertexIx> walk;
    for (DartId hd : h.face(h.outer_face()).walk)
        walk.push_back(map.index_of(h.id_of(h.origin(hd))));
    return walk;
}

} // namespace

CertificateReport hyperbolicity_certificate(const PlanarMap& map, int size_cap,
                                            std::uint64_t geodesic_cap,
                                            std::uint64_t state_budget) {
    CertificateReport rep;
    rep.size_cap = size_cap;
    auto cheeger = cheeger_lower(map, size_cap, state_budget);
    rep.c_prime = cheeger.ratio;
    if (!(Rational::of(0) < rep.c_prime))
        fail(Err::CheegerNonpositive, "measured bound " + rep.c_prime.str());
    rep.max_degree = degree_stats(map).max_degree;
    rep.coefficient =
        (Rational::of(1) + rep.c_prime) * Rational::of(rep.max_degree) / rep.c_prime;

    // sample 1: geodetic hulls of faces whose walks avoid the rim
    std::vector<FaceId> eligible;
    for (const auto& f : map.faces()) {
        if (!f.bounded) continue;
        bool ok = true;
        for (DartId d : f.walk)
            if (map.is_rim(map.origin(d))) ok = false;
        if (ok) eligible.push_back(f.id);
    }
    auto traces = parallel_map<HullTrace>(static_cast<int>(eligible.size()), [&](int i) {
        try {
            return geodetic_hull(map, eligible[i], geodesic_cap);
        } catch (const MapError& e) {
            if (e.code() == Err::FaceWalkNotCycle || e.code() == Err::CapExceeded ||
                e.code() == Err::EmptySideClass)
                return HullTrace{};   // face skipped, leaves no cycles
            throw;
        }
    });

    std::set<std::vector<VertexIx>> dedup;
    std::vector<std::pair<std::string, std::vector<VertexIx>>> sample;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        for (std::size_t s = 0; s < traces[i].cycles.size(); ++s) {
            // geodesics may have strayed onto the rim; such cycles carry
            // truncated metric information and are not valid samples
            bool rim_free = true;
            for (VertexIx v : traces[i].cycles[s])
                if (map.is_rim(v)) rim_free = false;
            if (!rim_free) continue;
            auto canon = canonical_cycle(traces[i].cycles[s]);
            if (!dedup.insert(canon).second) continue;
            sample.emplace_back("hull f" + std::to_string(eligible[i]) + " c" + std::to_string(s),
                                std::move(canon));
        }
    }

    // sample 2: contours of balls around a deepest vertex; on flat maps
    // these are the cycles whose interiors outgrow their perimeters.
    // Balls are trimmed to their 2-core first: tip vertices with a single
    // in-ball neighbor would otherwise force a pendant revisit in the walk.
    auto rd = core_radius(map);
    VertexIx center = 0;
    for (VertexIx v = 1; v < map.vertex_count(); ++v)
        if (rd[v] > rd[center]) center = v;
    if (rd[center] != kInfDist) {
        DistanceOracle oracle(map);
        const auto& base = oracle.row(center);
        int max_r = std::min(rd[center] - 1, 64);
        for (int radius = 1; radius <= max_r; ++radius) {
            Bitset in(map.vertex_count());
            for (VertexIx v = 0; v < map.vertex_count(); ++v)
                if (base[v] >= 0 && base[v] <= radius) in.set(v);
            std::vector<VertexIx> prune;
            for (VertexIx v = 0; v < map.vertex_count(); ++v) {
                if (!in.test(v)) continue;
                int deg = 0;
                for (DartId d : map.rotation(v)) deg += in.test(map.target(d)) ? 1 : 0;
                if (deg <= 1) prune.push_back(v);
            }
            while (!prune.empty()) {
                VertexIx v = prune.back();
                prune.pop_back();
                if (!in.test(v)) continue;
                in.reset(v);
                for (DartId d : map.rotation(v)) {
                    VertexIx u = map.target(d);
                    if (!in.test(u)) continue;
                    int deg = 0;
                    for (DartId e : map.rotation(u)) deg += in.test(map.target(e)) ? 1 : 0;
                    if (deg <= 1) prune.push_back(u);
                }
            }
            std::vector<VertexIx> ball;
            for (VertexIx v = 0; v < map.vertex_count(); ++v)
                if (in.test(v)) ball.push_back(v);
            if (ball.size() < 3) continue;
            try {
                auto walk = induced_contour(map, ball);
                std::set<VertexIx> distinct(walk.begin(), walk.end());
                if (distinct.size() != walk.size() || walk.size() < 3) continue;
                auto canon = canonical_cycle(walk);
                bounded_side(map, canon);   // validates the closed region
                if (dedup.insert(canon).second)
                    sample.emplace_back("ball r" + std::to_string(radius), std::move(canon));
            } catch (const MapError&) {
                continue;
            }
        }
    }

    rep.rows = parallel_map<CertificateRow>(static_cast<int>(sample.size()), [&](int i) {
        CycleRegion region = bounded_side(map, sample[i].second);
        CertificateRow row;
        row.origin = sample[i].first;
        row.length = static_cast<int>(region.cycle.size());
        row.faces = static_cast<int>(region.interior_faces.count());
        row.interior_vertices = static_cast<int>(region.interior_vertices.count());
        row.ok = Rational::of(row.faces) <= rep.coefficient * Rational::of(row.length);
        return row;
    });
    rep.certified = true;
    for (const auto& row : rep.rows)
        if (!row.ok) rep.certified = false;
    return rep;
}

} // namespace coarseplane
