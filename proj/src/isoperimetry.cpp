#include "coarseplane/isoperimetry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "coarseplane/check.hpp"
#include "coarseplane/errors.hpp"
#include "coarseplane/metric.hpp"
#include "coarseplane/parallel.hpp"
#include "coarseplane/region.hpp"

namespace coarseplane {

Bitset vertex_boundary(const PlanarMap& map, const Bitset& s) {
    Bitset out(map.vertex_count());
    for (VertexIx v = 0; v < map.vertex_count(); ++v) {
        if (!s.test(v)) continue;
        for (DartId d : map.rotation(v)) {
            VertexIx w = map.target(d);
            if (!s.test(w)) out.set(w);
        }
    }
    return out;
}

std::vector<VertexIx> vertex_boundary(const PlanarMap& map, const std::vector<VertexIx>& s) {
    Bitset in(map.vertex_count());
    for (VertexIx v : s) in.set(v);
    return vertex_boundary(map, in).to_vector();
}

Bitset core_vertices(const PlanarMap& map) {
    auto rd = core_radius(map);
    Bitset out(map.vertex_count());
    for (VertexIx v = 0; v < map.vertex_count(); ++v)
        if (rd[v] >= 2) out.set(v);
    return out;
}

namespace {

std::vector<VertexIx> sorted_copy(const std::vector<VertexIx>& v) {
    std::vector<VertexIx> out = v;
    std::sort(out.begin(), out.end());
    return out;
}

struct RootBest {
    bool any = false;
    Rational ratio;
    std::vector<VertexIx> witness;   // sorted
    std::uint64_t states = 0;
    bool completed = true;
};

// Smaller ratio wins; ties prefer the smaller subset, then the
// lexicographically smaller sorted vertex list.
bool improves(const Rational& r, const std::vector<VertexIx>& sorted_wit, const RootBest& best) {
    if (!best.any) return true;
    if (r < best.ratio) return true;
    if (best.ratio < r) return false;
    if (sorted_wit.size() != best.witness.size()) return sorted_wit.size() < best.witness.size();
    return sorted_wit < best.witness;
}

} // namespace

CheegerResult cheeger_lower(const PlanarMap& map, int size_cap, std::uint64_t state_budget,
                            bool truncate) {
    if (size_cap < 1) fail(Err::BadFormat, "cheeger size cap must be positive");
    Bitset allowed = core_vertices(map);
    std::vector<VertexIx> roots = allowed.to_vector();
    if (roots.empty()) fail(Err::CheegerNonpositive, "no vertices at rim distance 2");

    auto per_root = parallel_map<RootBest>(static_cast<int>(roots.size()), [&](int i) {
        RootBest best;
        auto res = for_each_connected_subset_from_root(
            map, allowed, roots[i], size_cap, state_budget,
            [&](const std::vector<VertexIx>& sub, int boundary) {
                Rational r(boundary, static_cast<std::int64_t>(sub.size()));
                if (!best.any || r < best.ratio || r == best.ratio) {
                    auto wit = sorted_copy(sub);
                    if (improves(r, wit, best)) {
                        best.any = true;
                        best.ratio = r;
                        best.witness = std::move(wit);
                    }
                }
            });
        best.states = res.states;
        best.completed = res.completed;
        return best;
    });

    CheegerResult out;
    out.size_cap = size_cap;
    RootBest merged;
    for (const auto& rb : per_root) {
        out.states += rb.states;
        out.exhaustive = out.exhaustive && rb.completed;
        if (rb.any && improves(rb.ratio, rb.witness, merged)) {
            merged.any = true;
            merged.ratio = rb.ratio;
            merged.witness = rb.witness;
        }
    }
    if (out.states > state_budget) out.exhaustive = false;
    if (!out.exhaustive && !truncate)
        fail_counted(Err::SearchBudgetExceeded, "connected subset enumeration", out.states);
    ck_assert(merged.any, "cheeger enumeration produced no subset");
    out.ratio = merged.ratio;
    out.witness = merged.witness;
    int delta = degree_stats(map).max_degree;
    ck_assert(delta > 0, "cheeger needs positive max degree");
    out.disconnected_bound = out.ratio / Rational::of(delta);
    return out;
}

namespace {

struct SlotValue {
    int s = -1;
    std::vector<VertexIx> witness;   // sorted
};

using SlotMap = std::map<int, SlotValue>;

struct RootProfile {
    SlotMap slots;
    std::uint64_t states = 0;
    bool completed = true;
};

} // namespace

IsoProfile iso_profile(const PlanarMap& map, int size_cap, std::uint64_t state_budget,
                       bool truncate) {
    if (size_cap < 1) fail(Err::BadFormat, "profile size cap must be positive");
    Bitset allowed = core_vertices(map);
    std::vector<VertexIx> roots = allowed.to_vector();
    if (roots.empty()) fail(Err::CheegerNonpositive, "no vertices at rim distance 2");

    auto per_root = parallel_map<RootProfile>(static_cast<int>(roots.size()), [&](int i) {
        RootProfile prof;
        auto res = for_each_connected_subset_from_root(
            map, allowed, roots[i], size_cap, state_budget,
            [&](const std::vector<VertexIx>& sub, int boundary) {
                auto& slot = prof.slots[boundary];
                int s = static_cast<int>(sub.size());
                if (s > slot.s) {
                    slot.s = s;
                    slot.witness = sorted_copy(sub);
                }
            });
        prof.states = res.states;
        prof.completed = res.completed;
        return prof;
    });

    IsoProfile out;
    out.size_cap = size_cap;
    SlotMap merged;
    std::uint64_t states = 0;
    for (const auto& rp : per_root) {
        states += rp.states;
        out.exhaustive = out.exhaustive && rp.completed;
        for (const auto& [b, val] : rp.slots) {
            auto& slot = merged[b];
            // earlier roots win ties so the merge is order-independent
            if (val.s > slot.s) slot = val;
        }
    }
    if (states > state_budget) out.exhaustive = false;
    if (!out.exhaustive && !truncate)
        fail_counted(Err::SearchBudgetExceeded, "connected subset enumeration", states);

    int best = -1;
    for (const auto& [b, val] : merged) {
        if (val.s > best) {
            best = val.s;
            out.points.push_back({b, val.s, val.witness});
        }
    }
    return out;
}

BoundaryWalkResult boundary_walk(const PlanarMap& map, const std::vector<VertexIx>& s) {
    if (s.empty()) fail(Err::BadFormat, "boundary walk needs a nonempty subset");
    Bitset in(map.vertex_count());
    for (VertexIx v : s) {
        if (v < 0 || v >= map.vertex_count()) fail(Err::BadFormat, "subset vertex out of range");
        if (in.test(v)) fail(Err::BadFormat, "subset vertex repeated");
        in.set(v);
    }
    Bitset core = core_vertices(map);
    for (VertexIx v : s)
        if (!core.test(v)) fail(Err::TouchesRim, "subset vertex " + std::to_string(map.id_of(v)));

    // connectivity of the induced subgraph
    {
        std::vector<VertexIx> stack{s[0]};
        Bitset seen(map.vertex_count());
        seen.set(s[0]);
        int reached = 1;
        while (!stack.empty()) {
            VertexIx v = stack.back();
            stack.pop_back();
            for (DartId d : map.rotation(v)) {
                VertexIx w = map.target(d);
                if (in.test(w) && !seen.test(w)) {
                    seen.set(w);
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != static_cast<int>(s.size()))
            fail(Err::NotConnected, "subset induces a disconnected subgraph");
    }

    Bitset bd = vertex_boundary(map, in);

    // H keeps every edge with an endpoint in S; boundary-boundary edges drop.
    Bitset hedges(map.edge_count());
    for (VertexIx v = 0; v < map.vertex_count(); ++v) {
        if (!in.test(v)) continue;
        for (DartId d : map.rotation(v)) hedges.set(PlanarMap::edge_of(d));
    }

    // The unbounded face of H corresponds to the faces of the full map still
    // reachable from its outer face once the kept edges are cut.
    Bitset shadow = region_of_edge_cut(map, hedges);
    std::pair<VertexId, VertexId> hint{-1, -1};
    for (VertexIx v = 0; v < map.vertex_count() && hint.first < 0; ++v) {
        if (!in.test(v) && !bd.test(v)) continue;
        for (DartId d : map.rotation(v)) {
            if (!hedges.test(PlanarMap::edge_of(d))) continue;
            if (!shadow.test(map.face_of(d))) {
                hint = {map.id_of(v), map.id_of(map.target(d))};
                break;
            }
        }
    }
    ck_assert(hint.first >= 0, "boundary walk found no outward dart");

    MapSpec spec;
    for (VertexIx v = 0; v < map.vertex_count(); ++v) {
        bool vs = in.test(v), vb = bd.test(v);
        if (!vs && !vb) continue;
        MapSpecVertex rec;
        rec.id = map.id_of(v);
        for (DartId d : map.rotation(v)) {
            VertexIx w = map.target(d);
            if (vs || in.test(w)) rec.nbrs.push_back(map.id_of(w));
        }
        spec.vertices.push_back(std::move(rec));
    }
    spec.outer_face_dart = hint;
    PlanarMap h = build_map(std::move(spec));

    BoundaryWalkResult out;
    out.subset = sorted_copy(s);
    const FaceRecord& outer = h.face(h.outer_face());
    std::vector<DartId> gdarts;
    for (DartId hd : outer.walk) {
        VertexIx gu = map.index_of(h.id_of(h.origin(hd)));
        VertexIx gv = map.index_of(h.id_of(h.target(hd)));
        out.walk.push_back(gu);
        gdarts.push_back(map.dart_between(gu, gv));
    }
    out.length = static_cast<int>(out.walk.size());

    std::vector<int> hits;
    std::set<VertexIx> distinct;
    for (int i = 0; i < out.length; ++i) {
        if (bd.test(out.walk[i])) {
            hits.push_back(i);
            distinct.insert(out.walk[i]);
        }
    }
    out.boundary_hits = static_cast<int>(hits.size());
    out.distinct_boundary_vertices = static_cast<int>(distinct.size());

    auto run_facial = [&](int from, int len) {
        FaceId f = map.face_of(gdarts[from]);
        if (!map.face(f).bounded) return false;
        for (int k = 1; k < len; ++k)
            if (map.face_of(gdarts[(from + k) % out.length]) != f) return false;
        return true;
    };
    if (hits.empty()) {
        out.max_subwalk = out.length;
        out.subwalks_facial = run_facial(0, out.length);
    } else {
        for (std::size_t j = 0; j < hits.size(); ++j) {
            int from = hits[j];
            int to = hits[(j + 1) % hits.size()];
            int len = (to - from + out.length) % out.length;
            if (len == 0) len = out.length;   // single hit: whole loop
            out.max_subwalk = std::max(out.max_subwalk, len);
            if (!run_facial(from, len)) out.subwalks_facial = false;
        }
    }
    return out;
}

std::vector<ReductionSample> reduction_check(const PlanarMap& map,
                                             const std::vector<std::vector<VertexIx>>& samples,
                                             const Rational& c) {
    Bitset core = core_vertices(map);
    int delta = degree_stats(map).max_degree;
    std::vector<ReductionSample> out;
    for (const auto& sample : samples) {
        ReductionSample rs;
        rs.subset = sorted_copy(sample);
        Bitset in(map.vertex_count());
        for (VertexIx v : rs.subset) {
            if (v < 0 || v >= map.vertex_count()) fail(Err::BadFormat, "sample vertex out of range");
            if (!core.test(v)) fail(Err::TouchesRim, "sample vertex " + std::to_string(map.id_of(v)));
            in.set(v);
        }
        rs.boundary = static_cast<int>(vertex_boundary(map, in).count());

        Bitset seen(map.vertex_count());
        std::int64_t sum_b = 0, sum_s = 0;
        for (VertexIx v : rs.subset) {
            if (seen.test(v)) continue;
            Bitset comp(map.vertex_count());
            std::vector<VertexIx> stack{v};
            seen.set(v);
            comp.set(v);
            int size = 0;
            while (!stack.empty()) {
                VertexIx u = stack.back();
                stack.pop_back();
                ++size;
                for (DartId d : map.rotation(u)) {
                    VertexIx w = map.target(d);
                    if (in.test(w) && !seen.test(w)) {
                        seen.set(w);
                        comp.set(w);
                        stack.push_back(w);
                    }
                }
            }
            int b = static_cast<int>(vertex_boundary(map, comp).count());
            rs.part_sizes.push_back(size);
            rs.part_boundaries.push_back(b);
            sum_b += b;
            sum_s += size;
        }
        // |∂S| >= (1/Δ)Σ|∂S_i| and Σ|∂S_i| >= c Σ|S_i|
        bool first = static_cast<std::int64_t>(rs.boundary) * delta >= sum_b;
        bool second = Rational::of(sum_b) >= c * Rational::of(sum_s);
        rs.holds = first && second;
        out.push_back(std::move(rs));
    }
    return out;
}

} // namespace coarseplane
