#include "coarseplane/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "coarseplane/check.hpp"
#include "coarseplane/errors.hpp"
#include "coarseplane/region.hpp"

namespace coarseplane {

PlanarMap gen_grid(int n) {
    if (n < 2) fail(Err::BadFormat, "grid needs n >= 2");
    MapSpec spec;
    auto id = [n](int i, int j) { return static_cast<VertexId>(j * n + i); };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            MapSpecVertex rec;
            rec.id = id(i, j);
            if (i + 1 < n) rec.nbrs.push_back(id(i + 1, j));
            if (j + 1 < n) rec.nbrs.push_back(id(i, j + 1));
            if (i > 0) rec.nbrs.push_back(id(i - 1, j));
            if (j > 0) rec.nbrs.push_back(id(i, j - 1));
            spec.vertices.push_back(std::move(rec));
            if (i == 0 || j == 0 || i == n - 1 || j == n - 1) spec.rim.push_back(id(i, j));
        }
    std::sort(spec.vertices.begin(), spec.vertices.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    spec.outer_face_dart = {id(0, 0), id(1, 0)};
    spec.meta = {{"family", "grid"}, {"n", n}};
    return build_map(std::move(spec));
}

namespace {

// Growing {p,q} patch.  Incomplete vertices keep their neighbors contiguous
// in ccw order with the outer gap between back() and front(), so the outer
// boundary reads next = front, prev = back.
struct Patch {
    int p, q;
    std::vector<std::vector<int>> rot;
    std::vector<int> fc;   // faces currently incident

    int new_vertex() {
        rot.emplace_back();
        fc.push_back(0);
        return static_cast<int>(rot.size()) - 1;
    }
    int deficit(int v) const { return q - fc[v]; }
    int next_bnd(int v) const { return rot[v].front(); }
    int prev_bnd(int v) const { return rot[v].back(); }

    // Glues one p-gon into the gap at v, on the side of v's last neighbor.
    // The new face absorbs the maximal boundary arc through vertices it
    // finishes (deficit 1), then closes with a chain of fresh vertices.
    void add_face(int v) {
        if (rot[v].empty()) {   // isolated seed: the whole face is new
            int k = p - 1;
            std::vector<int> chain;
            for (int i = 0; i < k; ++i) chain.push_back(new_vertex());
            rot[v] = {chain.back(), chain.front()};
            for (int i = 0; i < k; ++i) {
                int prev = i == 0 ? v : chain[i - 1];
                int next = i == k - 1 ? v : chain[i + 1];
                rot[chain[i]] = {prev, next};
                fc[chain[i]] = 1;
            }
            fc[v] = 1;
            return;
        }
        std::vector<int> back_part{prev_bnd(v)};
        while (deficit(back_part.back()) == 1) back_part.push_back(prev_bnd(back_part.back()));
        std::vector<int> arc(back_part.rbegin(), back_part.rend());
        arc.push_back(v);
        if (deficit(v) == 1) {   // closing face: spans v's whole gap
            arc.push_back(next_bnd(v));
            while (deficit(arc.back()) == 1) arc.push_back(next_bnd(arc.back()));
        }
        int zb = arc.front(), zf = arc.back();
        ck_assert(zb != zf, "tessellation boundary collapsed");
        int k = p - static_cast<int>(arc.size());
        ck_assert(k >= 0, "tessellation face would need an existing chord");
        if (k == 0) {
            // no room for new vertices: one closing edge between the arc ends
            ck_assert(std::find(rot[zf].begin(), rot[zf].end(), zb) == rot[zf].end(),
                      "tessellation closing edge already present");
            rot[zf].push_back(zb);
            rot[zb].insert(rot[zb].begin(), zf);
        } else {
            std::vector<int> chain;
            for (int i = 0; i < k; ++i) chain.push_back(new_vertex());
            rot[zf].push_back(chain.front());
            rot[zb].insert(rot[zb].begin(), chain.back());
            for (int i = 0; i < k; ++i) {
                int prev = i == 0 ? zf : chain[i - 1];
                int next = i == k - 1 ? zb : chain[i + 1];
                rot[chain[i]] = {prev, next};
                fc[chain[i]] = 1;
            }
        }
        for (int u : arc) ++fc[u];
    }
};

std::vector<int> patch_bfs(const std::vector<std::vector<int>>& rot, int src) {
    std::vector<int> dist(rot.size(), -1);
    std::vector<int> queue{src};
    dist[src] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int v = queue[h];
        for (int w : rot[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

} // namespace

PlanarMap gen_tessellation(int p, int q, int r) {
    if (p < 3 || q < 3 || r < 1) fail(Err::BadFormat, "tessellation needs p,q >= 3 and r >= 1");
    if ((p - 2) * (q - 2) <= 4)
        fail(Err::NotHyperbolicParameters,
             "{" + std::to_string(p) + "," + std::to_string(q) + "}");

    Patch patch{p, q, {}, {}};
    int center = patch.new_vertex();
    // Complete every vertex within distance r-1 of the center; fresh chains
    // can land within range, so iterate to a fixpoint.
    while (true) {
        auto dist = patch_bfs(patch.rot, center);
        std::vector<std::pair<int, int>> targets;
        for (int v = 0; v < static_cast<int>(patch.rot.size()); ++v)
            if (patch.fc[v] < q && dist[v] <= r - 1) targets.emplace_back(dist[v], v);
        if (targets.empty()) break;
        std::sort(targets.begin(), targets.end());
        for (auto [d, v] : targets)
            while (patch.fc[v] < q) patch.add_face(v);
    }

    // Complete vertices carry their full rotation; everything still missing a
    // face has a truncated neighborhood and goes on the rim.
    MapSpec spec;
    for (int v = 0; v < static_cast<int>(patch.rot.size()); ++v) {
        MapSpecVertex rec;
        rec.id = v;
        rec.nbrs.assign(patch.rot[v].begin(), patch.rot[v].end());
        spec.vertices.push_back(std::move(rec));
        if (patch.fc[v] < q) spec.rim.push_back(v);
    }
    spec.meta = {{"family", "tessellation"}, {"p", p}, {"q", q}, {"r", r}};
    return build_map(std::move(spec));
}

namespace {

PlanarMap wheel_decorate(const PlanarMap& base,
                         const std::vector<std::pair<FaceId, int>>& schedule, bool closing) {
    std::set<FaceId> used;
    std::vector<std::vector<VertexId>> walks;
    for (auto [f, n] : schedule) {
        if (n < 1) fail(Err::BadFormat, "spoke length must be >= 1");
        if (f < 0 || f >= base.face_count() || !base.face(f).bounded)
            fail(Err::FaceNotInCore, "face " + std::to_string(f));
        if (!used.insert(f).second)
            fail(Err::FaceNotInCore, "face " + std::to_string(f) + " listed twice");
        std::vector<VertexIx> walk;
        for (DartId d : base.face(f).walk) walk.push_back(base.origin(d));
        std::set<VertexIx> distinct(walk.begin(), walk.end());
        if (distinct.size() != walk.size())
            fail(Err::FaceWalkNotCycle, "face " + std::to_string(f));
        for (VertexIx v : walk)
            if (base.is_rim(v)) fail(Err::FaceNotInCore, "face " + std::to_string(f));
        auto mn = std::min_element(walk.begin(), walk.end());
        std::rotate(walk.begin(), mn, walk.end());
        std::vector<VertexId> ids;
        for (VertexIx v : walk) ids.push_back(base.id_of(v));
        walks.push_back(std::move(ids));
    }

    MapSpec spec = base.source_spec();
    if (!spec.outer_face_dart) {
        // pin the outer face across the rebuild: a fresh heuristic pick could
        // land on the new wedge face, whose walk outgrows the old outer walk
        DartId d0 = base.face(base.outer_face()).walk.front();
        spec.outer_face_dart = {base.id_of(base.origin(d0)), base.id_of(base.target(d0))};
    }
    std::unordered_map<VertexId, int> sidx;
    for (std::size_t i = 0; i < spec.vertices.size(); ++i) sidx[spec.vertices[i].id] = static_cast<int>(i);
    VertexId next_id = 0;
    for (const auto& v : spec.vertices) next_id = std::max(next_id, v.id + 1);

    nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
    for (std::size_t e = 0; e < schedule.size(); ++e) {
        const auto& walk = walks[e];
        const int n = schedule[e].second;
        const int k = static_cast<int>(walk.size());

        VertexId hub = next_id++;
        // spoke[i][j]: j-th internal vertex out from the hub toward walk[i]
        std::vector<std::vector<VertexId>> spoke(k);
        for (int i = 0; i < k; ++i)
            for (int j = 1; j < n; ++j) spoke[i].push_back(next_id++);
        auto hubward = [&](int i) { return n >= 2 ? spoke[i][0] : walk[i]; };
        auto faceward = [&](int i) { return n >= 2 ? spoke[i][n - 2] : hub; };

        // the face walk runs clockwise around its interior, so the ccw
        // rotation at the hub lists the spokes in reverse walk order
        MapSpecVertex hubrec;
        hubrec.id = hub;
        for (int i = k - 1; i >= 0; --i) hubrec.nbrs.push_back(hubward(i));
        spec.vertices.push_back(hubrec);
        sidx[hub] = static_cast<int>(spec.vertices.size()) - 1;

        for (int i = 0; i < k; ++i) {
            bool rung_next = closing || i < k - 1;
            bool rung_prev = closing || i > 0;
            for (int j = 1; j < n; ++j) {
                MapSpecVertex rec;
                rec.id = spoke[i][j - 1];
                rec.nbrs.push_back(j == 1 ? hub : spoke[i][j - 2]);
                if (rung_next) rec.nbrs.push_back(spoke[(i + 1) % k][j - 1]);
                rec.nbrs.push_back(j == n - 1 ? walk[i] : spoke[i][j]);
                if (rung_prev) rec.nbrs.push_back(spoke[(i - 1 + k) % k][j - 1]);
                spec.vertices.push_back(std::move(rec));
                sidx[spoke[i][j - 1]] = static_cast<int>(spec.vertices.size()) - 1;
            }
        }

        // splice each spoke end into the face's rotation slot at walk[i],
        // between the edges to the walk predecessor and successor
        for (int i = 0; i < k; ++i) {
            VertexId prev = walk[(i - 1 + k) % k], next = walk[(i + 1) % k];
            auto& nbrs = spec.vertices[sidx.at(walk[i])].nbrs;
            int sz = static_cast<int>(nbrs.size());
            int pos = -1;
            for (int t = 0; t < sz; ++t)
                if (nbrs[t] == prev && nbrs[(t + 1) % sz] == next) {
                    pos = t;
                    break;
                }
            ck_assert(pos >= 0, "face corner rotation slot not found");
            nbrs.insert(nbrs.begin() + pos + 1, faceward(i));
        }

        nlohmann::ordered_json wit;
        wit["face"] = static_cast<int>(schedule[e].first);
        wit["cycle"] = walk;
        nlohmann::ordered_json interior = nlohmann::ordered_json::array();
        interior.push_back(hub);
        for (int i = 0; i < k; ++i)
            for (VertexId s : spoke[i]) interior.push_back(s);
        wit["interior"] = interior;
        wit["n"] = n;
        wit["hub"] = hub;
        if (!closing) {
            // the rungless wedge between the last and first spokes
            nlohmann::ordered_json lf = nlohmann::ordered_json::array();
            lf.push_back(hub);
            for (int j = 1; j < n; ++j) lf.push_back(spoke[k - 1][j - 1]);
            lf.push_back(walk[k - 1]);
            lf.push_back(walk[0]);
            for (int j = n - 1; j >= 1; --j) lf.push_back(spoke[0][j - 1]);
            wit["long_face"] = lf;
        }
        witnesses.push_back(std::move(wit));
    }

    nlohmann::ordered_json meta;
    meta["family"] = closing ? "g2" : "g1";
    meta["base"] = spec.meta;
    meta["witnesses"] = witnesses;
    spec.meta = std::move(meta);

    PlanarMap out = build_map(std::move(spec));
    // claimed interiors must be exactly what the old face cycles enclose
    for (const auto& wit : out.source_spec().meta["witnesses"]) {
        std::vector<VertexIx> cyc;
        for (VertexId id : wit["cycle"]) cyc.push_back(out.index_of(id));
        CycleRegion region = bounded_side(out, cyc);
        std::set<VertexId> claimed;
        for (VertexId id : wit["interior"]) claimed.insert(id);
        std::set<VertexId> actual;
        for (VertexIx v : region.interior_vertices.to_vector()) actual.insert(out.id_of(v));
        ck_assert(claimed == actual, "decorated face interior mismatch");
    }
    return out;
}

} // namespace

PlanarMap gen_bowditch_g1(const PlanarMap& base,
                          const std::vector<std::pair<FaceId, int>>& schedule) {
    return wheel_decorate(base, schedule, false);
}

PlanarMap gen_bowditch_g2(const PlanarMap& base,
                          const std::vector<std::pair<FaceId, int>>& schedule) {
    return wheel_decorate(base, schedule, true);
}

namespace {

PlanarMap dyadic_window(int levels, int width, nlohmann::ordered_json meta) {
    if (levels < 1 || width < 1) fail(Err::BadFormat, "dyadic window needs levels,width >= 1");
    std::vector<VertexId> off(levels + 1);
    VertexId acc = 0;
    for (int n = 0; n <= levels; ++n) {
        off[n] = acc;
        acc += static_cast<VertexId>(width) * (1 << n) + 1;
    }
    auto id = [&](int n, long long i) { return off[n] + i; };

    MapSpec spec;
    for (int n = 0; n <= levels; ++n) {
        long long row = static_cast<long long>(width) * (1 << n);
        for (long long i = 0; i <= row; ++i) {
            MapSpecVertex rec;
            rec.id = id(n, i);
            if (i < row) rec.nbrs.push_back(id(n, i + 1));
            if (n < levels) rec.nbrs.push_back(id(n + 1, 2 * i));
            if (i > 0) rec.nbrs.push_back(id(n, i - 1));
            if (n > 0 && i % 2 == 0) rec.nbrs.push_back(id(n - 1, i / 2));
            spec.vertices.push_back(std::move(rec));
            if (i == 0 || i == row || n == levels) spec.rim.push_back(id(n, i));
        }
    }
    // the bottom row borders the unbounded region in the full graph too, so
    // it stays off the rim; pin the outer face explicitly
    spec.outer_face_dart = {id(0, 0), id(0, 1)};
    spec.meta = std::move(meta);
    return build_map(std::move(spec));
}

} // namespace

PlanarMap gen_dyadic(int levels, int width) {
    return dyadic_window(levels, width,
                         {{"family", "dyadic"}, {"levels", levels}, {"width", width}});
}

PlanarMap gen_dyadic_square(int a) {
    if (a < 1) fail(Err::BadFormat, "dyadic square needs a >= 1");
    return dyadic_window(a, a, {{"family", "dyadic_square"}, {"a", a}});
}

PlanarMap gen_composite(int big_n) {
    if (big_n < 1) fail(Err::BadFormat, "composite needs N >= 1");
    const int levels = big_n;
    const int width = big_n * big_n + big_n + 1;

    std::vector<VertexId> off(levels + 1);
    VertexId acc = 0;
    for (int n = 0; n <= levels; ++n) {
        off[n] = acc;
        acc += static_cast<VertexId>(width) * (1 << n) + 1;
    }
    auto bid = [&](int n, long long i) { return off[n] + i; };

    // copy n occupies depths 1..n below the baseline; its depth-0 row is
    // identified with baseline vertices n^2 .. n^2+n
    std::vector<std::vector<VertexId>> coff(big_n + 1);
    for (int n = 1; n <= big_n; ++n) {
        coff[n].resize(n + 1);
        for (int m = 1; m <= n; ++m) {
            coff[n][m] = acc;
            acc += static_cast<VertexId>(n) * (1 << m) + 1;
        }
    }
    auto cid = [&](int n, int m, long long i) {
        return m == 0 ? bid(0, static_cast<long long>(n) * n + i) : coff[n][m] + i;
    };

    MapSpec spec;
    for (int n = 0; n <= levels; ++n) {
        long long row = static_cast<long long>(width) * (1 << n);
        for (long long i = 0; i <= row; ++i) {
            MapSpecVertex rec;
            rec.id = bid(n, i);
            if (i < row) rec.nbrs.push_back(bid(n, i + 1));
            if (n < levels) rec.nbrs.push_back(bid(n + 1, 2 * i));
            if (i > 0) rec.nbrs.push_back(bid(n, i - 1));
            if (n > 0 && i % 2 == 0) {
                rec.nbrs.push_back(bid(n - 1, i / 2));
            } else if (n == 0) {
                for (int c = 1; c <= big_n; ++c) {
                    long long lo = static_cast<long long>(c) * c;
                    if (i >= lo && i <= lo + c) {
                        rec.nbrs.push_back(cid(c, 1, 2 * (i - lo)));
                        break;
                    }
                }
            }
            spec.vertices.push_back(std::move(rec));
            if (i == 0 || i == row || n == levels) spec.rim.push_back(bid(n, i));
        }
    }
    for (int c = 1; c <= big_n; ++c) {
        for (int m = 1; m <= c; ++m) {
            long long row = static_cast<long long>(c) * (1 << m);
            for (long long i = 0; i <= row; ++i) {
                MapSpecVertex rec;
                rec.id = cid(c, m, i);
                if (i < row) rec.nbrs.push_back(cid(c, m, i + 1));
                if (i % 2 == 0) rec.nbrs.push_back(cid(c, m - 1, i / 2));
                if (i > 0) rec.nbrs.push_back(cid(c, m, i - 1));
                if (m < c) rec.nbrs.push_back(cid(c, m + 1, 2 * i));
                spec.vertices.push_back(std::move(rec));
            }
        }
    }
    std::sort(spec.vertices.begin(), spec.vertices.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    spec.outer_face_dart = {bid(0, 0), bid(0, 1)};

    nlohmann::ordered_json copies = nlohmann::ordered_json::array();
    for (int c = 1; c <= big_n; ++c) {
        nlohmann::ordered_json entry;
        entry["n"] = c;
        nlohmann::ordered_json attach = nlohmann::ordered_json::array();
        for (int k = 0; k <= c; ++k) attach.push_back(cid(c, 0, k));
        entry["attach"] = attach;
        nlohmann::ordered_json verts = nlohmann::ordered_json::array();
        for (int m = 0; m <= c; ++m)
            for (long long i = 0; i <= static_cast<long long>(c) * (1 << m); ++i)
                verts.push_back(cid(c, m, i));
        entry["vertices"] = verts;
        copies.push_back(std::move(entry));
    }
    spec.meta = {{"family", "composite"}, {"n", big_n}, {"copies", copies}};
    return build_map(std::move(spec));
}

PlanarMap generate(const GeneratorSpec& gspec) {
    const auto& pr = gspec.params;
    auto want_int = [&](const char* key) {
        if (!pr.contains(key) || !pr[key].is_number_integer())
            fail(Err::BadFormat, std::string("generator needs integer parameter '") + key + "'");
        return pr[key].get<int>();
    };
    if (gspec.family == "grid") return gen_grid(want_int("n"));
    if (gspec.family == "tessellation")
        return gen_tessellation(want_int("p"), want_int("q"), want_int("r"));
    if (gspec.family == "dyadic") return gen_dyadic(want_int("levels"), want_int("width"));
    if (gspec.family == "dyadic_square") return gen_dyadic_square(want_int("a"));
    if (gspec.family == "composite") return gen_composite(want_int("n"));
    if (gspec.family == "g1" || gspec.family == "g2") {
        PlanarMap base = gen_tessellation(want_int("p"), want_int("q"), want_int("r"));
        int n = want_int("n");
        std::vector<std::pair<FaceId, int>> schedule;
        if (pr.contains("faces")) {
            if (!pr["faces"].is_array()) fail(Err::BadFormat, "'faces' must be an array");
            for (const auto& f : pr["faces"]) schedule.emplace_back(f.get<int>(), n);
        } else {
            int count = pr.contains("count") ? pr["count"].get<int>() : 1;
            std::vector<FaceId> eligible;
            for (const auto& f : base.faces()) {
                if (!f.bounded) continue;
                bool ok = true;
                std::set<VertexIx> distinct;
                for (DartId d : f.walk) {
                    if (base.is_rim(base.origin(d))) ok = false;
                    distinct.insert(base.origin(d));
                }
                if (ok && static_cast<int>(distinct.size()) == f.length) eligible.push_back(f.id);
            }
            if (count < 1 || count > static_cast<int>(eligible.size()))
                fail(Err::BadFormat, "face count out of range");
            std::mt19937_64 rng(gspec.seed);
            for (int t = 0; t < count; ++t) {
                std::size_t pick = static_cast<std::size_t>(rng() % eligible.size());
                schedule.emplace_back(eligible[pick], n);
                eligible.erase(eligible.begin() + pick);
            }
            std::sort(schedule.begin(), schedule.end());
        }
        return gspec.family == "g1" ? gen_bowditch_g1(base, schedule)
                                    : gen_bowditch_g2(base, schedule);
    }
    fail(Err::BadFormat, "unknown family '" + gspec.family + "'");
}

} // namespace coarseplane
