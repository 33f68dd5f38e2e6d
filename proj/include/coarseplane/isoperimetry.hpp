#pragma once

#include <cstdint>
#include <vector>

#include "coarseplane/planar_map.hpp"
#include "coarseplane/rational.hpp"

namespace coarseplane {

Bitset vertex_boundary(const PlanarMap& map, const Bitset& s);
std::vector<VertexIx> vertex_boundary(const PlanarMap& map, const std::vector<VertexIx>& s);

// Vertices at rim distance >= 2: subsets drawn from here have rim-free
// boundaries, so their ratios are not deflated by truncated rim degrees.
Bitset core_vertices(const PlanarMap& map);

struct SubsetEnumeration {
    std::uint64_t states = 0;   // subsets visited
    bool completed = true;      // false when the state budget stopped a root
};

// Visits every connected subset of `allowed` whose smallest vertex is
// `root`, sizes 1..size_cap, each exactly once, in a canonical order.
// fn(subset, boundary_size); the subset vector is in discovery order.
template <class Fn>
SubsetEnumeration for_each_connected_subset_from_root(const PlanarMap& map, const Bitset& allowed,
                                                      VertexIx root, int size_cap,
                                                      std::uint64_t state_budget, Fn&& fn) {
    SubsetEnumeration res;
    const int n = map.vertex_count();
    std::vector<VertexIx> cur{root};
    std::vector<VertexIx> cand;
    Bitset seen(n), in_cur(n);
    seen.set(root);
    in_cur.set(root);

    // boundary bookkeeping: cnt[v] = neighbors of v inside cur, for v outside
    std::vector<int> cnt(n, 0);
    int boundary = 0;
    auto add_vertex = [&](VertexIx c) {
        if (cnt[c] > 0) --boundary;
        in_cur.set(c);
        for (DartId d : map.rotation(c)) {
            VertexIx w = map.target(d);
            if (!in_cur.test(w) && cnt[w]++ == 0) ++boundary;
        }
    };
    auto remove_vertex = [&](VertexIx c) {
        for (DartId d : map.rotation(c)) {
            VertexIx w = map.target(d);
            if (!in_cur.test(w) && --cnt[w] == 0) --boundary;
        }
        in_cur.reset(c);
        if (cnt[c] > 0) ++boundary;
    };

    std::vector<VertexIx> nbrs_sorted;
    auto push_new_candidates = [&](VertexIx c) {
        nbrs_sorted.clear();
        for (DartId d : map.rotation(c)) nbrs_sorted.push_back(map.target(d));
        std::sort(nbrs_sorted.begin(), nbrs_sorted.end());
        std::size_t added = 0;
        for (VertexIx w : nbrs_sorted) {
            if (w > root && allowed.test(w) && !seen.test(w)) {
                seen.set(w);
                cand.push_back(w);
                ++added;
            }
        }
        return added;
    };

    add_vertex(root);
    ++res.states;
    fn(static_cast<const std::vector<VertexIx>&>(cur), boundary);
    push_new_candidates(root);

    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (!res.completed || static_cast<int>(cur.size()) >= size_cap) return;
        for (std::size_t i = start; i < cand.size(); ++i) {
            VertexIx c = cand[i];
            if (++res.states > state_budget) {
                res.completed = false;
                return;
            }
            cur.push_back(c);
            add_vertex(c);
            std::size_t before = cand.size();
            push_new_candidates(c);
            fn(static_cast<const std::vector<VertexIx>&>(cur), boundary);
            self(self, i + 1);
            while (cand.size() > before) {
                seen.reset(cand.back());
                cand.pop_back();
            }
            remove_vertex(c);
            cur.pop_back();
            if (!res.completed) return;
        }
    };
    rec(rec, 0);
    return res;
}

// Sequential over all roots (ascending), each subset exactly once via its
// smallest vertex.
template <class Fn>
SubsetEnumeration for_each_connected_subset(const PlanarMap& map, const Bitset& allowed,
                                            int size_cap, std::uint64_t state_budget, Fn&& fn) {
    SubsetEnumeration total;
    for (VertexIx r = 0; r < map.vertex_count(); ++r) {
        if (!allowed.test(r)) continue;
        auto res = for_each_connected_subset_from_root(map, allowed, r, size_cap, state_budget, fn);
        total.states += res.states;
        total.completed = total.completed && res.completed;
        if (!total.completed) break;
    }
    return total;
}

struct CheegerResult {
    Rational ratio;                  // exact min |∂S|/|S|, connected core S
    std::vector<VertexIx> witness;   // sorted
    Rational disconnected_bound;     // ratio / Δ(G), valid for arbitrary finite S
    int size_cap = 0;
    std::uint64_t states = 0;
    bool exhaustive = true;
};

// Exact minimum over connected core subsets with |S| <= size_cap.  The state
// budget aborts with SearchBudgetExceeded unless truncate is set, which
// instead returns the minimum over everything visited (deterministically).
CheegerResult cheeger_lower(const PlanarMap& map, int size_cap,
                            std::uint64_t state_budget = 10'000'000, bool truncate = false);

struct ProfilePoint {
    int b = 0;   // boundary size
    int s = 0;   // max subset size seen with that boundary
    std::vector<VertexIx> witness;
};

struct IsoProfile {
    std::vector<ProfilePoint> points;   // ascending b, strictly increasing s
    int size_cap = 0;
    bool exhaustive = true;
    // Largest s among points with boundary <= b; -1 when no such point.
    int bound_for(int b) const {
        int best = -1;
        for (const auto& p : points)
            if (p.b <= b && p.s > best) best = p.s;
        return best;
    }
};

IsoProfile iso_profile(const PlanarMap& map, int size_cap,
                       std::uint64_t state_budget = 10'000'000, bool truncate = false);

struct BoundaryWalkResult {
    std::vector<VertexIx> subset;
    std::vector<VertexIx> walk;          // closed: last connects back to first
    int length = 0;                      // edge steps in the walk
    int boundary_hits = 0;               // walk positions lying in ∂S
    int distinct_boundary_vertices = 0;
    int max_subwalk = 0;                 // longest run between consecutive ∂S hits
    bool subwalks_facial = true;         // every such run stays on one bounded face
};

// Traces the closed walk bounding the unbounded face of H = S plus incident
// edges (edges between two boundary vertices excluded).
BoundaryWalkResult boundary_walk(const PlanarMap& map, const std::vector<VertexIx>& s);

struct ReductionSample {
    std::vector<VertexIx> subset;
    int boundary = 0;                // |∂S|
    std::vector<int> part_sizes;     // |S_i| per component
    std::vector<int> part_boundaries;
    bool holds = true;               // |∂S| >= (1/Δ)Σ|∂S_i| >= (c/Δ)Σ|S_i|
};

std::vector<ReductionSample> reduction_check(const PlanarMap& map,
                                             const std::vector<std::vector<VertexIx>>& samples,
                                             const Rational& c);

} // namespace coarseplane
