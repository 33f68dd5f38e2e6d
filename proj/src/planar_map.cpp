#include "coarseplane/planar_map.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace coarseplane {

const char* err_name(Err e) {
    switch (e) {
        case Err::AsymmetricAdjacency:    return "AsymmetricAdjacency";
        case Err::LoopOrMultiEdge:        return "LoopOrMultiEdge";
        case Err::NonPlanarTrace:         return "NonPlanarTrace";
        case Err::NoBoundedFace:          return "NoBoundedFace";
        case Err::NotACycle:              return "NotACycle";
        case Err::CycleTouchesOuterFace:  return "CycleTouchesOuterFace";
        case Err::Disconnected:           return "Disconnected";
        case Err::CapExceeded:            return "CapExceeded";
        case Err::GeodesicEntersCycle:    return "GeodesicEntersCycle";
        case Err::NotInS1:                return "NotInS1";
        case Err::EmptySideClass:         return "EmptySideClass";
        case Err::HullLeavesCore:         return "HullLeavesCore";
        case Err::FaceWalkNotCycle:       return "FaceWalkNotCycle";
        case Err::SearchBudgetExceeded:   return "SearchBudgetExceeded";
        case Err::TouchesRim:             return "TouchesRim";
        case Err::NotConnected:           return "NotConnected";
        case Err::EverythingIsADecoration:return "EverythingIsADecoration";
        case Err::DegreeBelowTwo:         return "DegreeBelowTwo";
        case Err::CheegerNonpositive:     return "CheegerNonpositive";
        case Err::ViolationFound:         return "ViolationFound";
        case Err::FaceNotInCore:          return "FaceNotInCore";
        case Err::NotHyperbolicParameters:return "NotHyperbolicParameters";
        case Err::BadFormat:              return "BadFormat";
    }
    return "UnknownError";
}

VertexIx PlanarMap::index_of(VertexId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
        fail(Err::BadFormat, "unknown vertex id " + std::to_string(id));
    return static_cast<VertexIx>(it - ids_.begin());
}

bool PlanarMap::has_id(VertexId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

DartId PlanarMap::dart_between(VertexIx u, VertexIx v) const {
    for (DartId d : rotation(u))
        if (target_[d] == v) return d;
    return -1;
}

std::vector<VertexIx> PlanarMap::face_vertices(FaceId f) const {
    std::vector<VertexIx> out;
    out.reserve(faces_[f].walk.size());
    for (DartId d : faces_[f].walk) out.push_back(origin_[d]);
    return out;
}

PlanarMap build_map(MapSpec spec) {
    PlanarMap m;

    for (const auto& v : spec.vertices) m.ids_.push_back(v.id);
    std::sort(m.ids_.begin(), m.ids_.end());
    if (std::adjacent_find(m.ids_.begin(), m.ids_.end()) != m.ids_.end())
        fail(Err::BadFormat, "duplicate vertex id");
    const int n = static_cast<int>(m.ids_.size());
    if (n == 0) fail(Err::BadFormat, "empty vertex list");

    auto ix = [&](VertexId id) -> VertexIx {
        auto it = std::lower_bound(m.ids_.begin(), m.ids_.end(), id);
        if (it == m.ids_.end() || *it != id)
            fail(Err::BadFormat, "neighbor references unknown vertex id " + std::to_string(id));
        return static_cast<VertexIx>(it - m.ids_.begin());
    };

    // Rotation lists in dense-index terms, in spec order.
    std::vector<std::vector<VertexIx>> rot(n);
    for (const auto& sv : spec.vertices) {
        VertexIx v = ix(sv.id);
        auto& r = rot[v];
        r.reserve(sv.nbrs.size());
        std::unordered_set<VertexIx> seen;
        for (VertexId wid : sv.nbrs) {
            VertexIx w = ix(wid);
            if (w == v)
                fail(Err::LoopOrMultiEdge, "loop at vertex " + std::to_string(sv.id));
            if (!seen.insert(w).second)
                fail(Err::LoopOrMultiEdge, "repeated neighbor " + std::to_string(wid) +
                                               " at vertex " + std::to_string(sv.id));
            r.push_back(w);
        }
    }

    // Symmetry check and edge numbering, edges sorted by (min ix, max ix).
    std::vector<std::pair<VertexIx, VertexIx>> edges;
    for (VertexIx v = 0; v < n; ++v) {
        for (VertexIx w : rot[v]) {
            if (std::find(rot[w].begin(), rot[w].end(), v) == rot[w].end())
                fail(Err::AsymmetricAdjacency,
                     std::to_string(m.ids_[v]) + " lists " + std::to_string(m.ids_[w]) +
                         " but not conversely");
            if (v < w) edges.emplace_back(v, w);
        }
    }
    std::sort(edges.begin(), edges.end());
    const int ne = static_cast<int>(edges.size());

    // Dart 2e goes min->max along edge e, dart 2e+1 is its twin.
    m.origin_.resize(2 * ne);
    m.target_.resize(2 * ne);
    std::unordered_map<std::int64_t, DartId> dart_at;   // (origin<<32|target) -> dart
    dart_at.reserve(static_cast<std::size_t>(2 * ne) * 2);
    auto key = [](VertexIx a, VertexIx b) {
        return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    };
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = edges[e];
        m.origin_[2 * e] = a; m.target_[2 * e] = b;
        m.origin_[2 * e + 1] = b; m.target_[2 * e + 1] = a;
        dart_at[key(a, b)] = 2 * e;
        dart_at[key(b, a)] = 2 * e + 1;
    }

    // CSR rotations as dart ids.
    m.rot_off_.assign(n + 1, 0);
    for (VertexIx v = 0; v < n; ++v) m.rot_off_[v + 1] = m.rot_off_[v] + static_cast<int>(rot[v].size());
    m.darts_.resize(2 * ne);
    for (VertexIx v = 0; v < n; ++v) {
        int off = m.rot_off_[v];
        for (VertexIx w : rot[v]) m.darts_[off++] = dart_at[key(v, w)];
    }

    // Position of each dart inside its origin's rotation, for the
    // face-successor rule: next(d) = rotation-successor of twin(d).
    std::vector<int> rot_pos(2 * ne);
    for (VertexIx v = 0; v < n; ++v)
        for (int i = m.rot_off_[v]; i < m.rot_off_[v + 1]; ++i)
            rot_pos[m.darts_[i]] = i - m.rot_off_[v];
    m.next_.resize(2 * ne);
    for (DartId d = 0; d < 2 * ne; ++d) {
        DartId t = PlanarMap::twin(d);
        VertexIx v = m.target_[d];
        int deg = m.rot_off_[v + 1] - m.rot_off_[v];
        m.next_[d] = m.darts_[m.rot_off_[v] + (rot_pos[t] + 1) % deg];
    }

    // Trace face orbits in dart-id order so face ids are deterministic.
    m.face_of_.assign(2 * ne, kNoFace);
    for (DartId d0 = 0; d0 < 2 * ne; ++d0) {
        if (m.face_of_[d0] != kNoFace) continue;
        FaceRecord f;
        f.id = static_cast<FaceId>(m.faces_.size());
        DartId d = d0;
        do {
            m.face_of_[d] = f.id;
            f.walk.push_back(d);
            d = m.next_[d];
        } while (d != d0);
        f.length = static_cast<int>(f.walk.size());
        m.faces_.push_back(std::move(f));
    }

    // Per-component Euler check: a valid spherical embedding of each
    // component satisfies V - E + F = 2 (counting the component's faces
    // plus one shared unbounded face... we count orbits per component).
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    {
        std::vector<VertexIx> stack;
        for (VertexIx s = 0; s < n; ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = ncomp;
            stack.push_back(s);
            while (!stack.empty()) {
                VertexIx v = stack.back(); stack.pop_back();
                for (DartId d : m.rotation(v)) {
                    VertexIx w = m.target_[d];
                    if (comp[w] < 0) { comp[w] = ncomp; stack.push_back(w); }
                }
            }
            ++ncomp;
        }
    }
    m.component_count_ = ncomp;
    {
        std::vector<int> cv(ncomp, 0), ce(ncomp, 0), cf(ncomp, 0);
        for (VertexIx v = 0; v < n; ++v) ++cv[comp[v]];
        for (int e = 0; e < ne; ++e) ++ce[comp[edges[e].first]];
        std::vector<bool> face_seen(m.faces_.size(), false);
        for (const auto& f : m.faces_) {
            int c = comp[m.origin_[f.walk[0]]];
            if (!face_seen[f.id]) { face_seen[f.id] = true; ++cf[c]; }
        }
        for (int c = 0; c < ncomp; ++c) {
            // Isolated vertices have no darts hence no traced faces; they
            // are trivially planar, skip them.
            if (ce[c] == 0) continue;
            if (cv[c] - ce[c] + cf[c] != 2)
                fail(Err::NonPlanarTrace,
                     "component fails V-E+F=2 (V=" + std::to_string(cv[c]) +
                         " E=" + std::to_string(ce[c]) + " F=" + std::to_string(cf[c]) + ")");
        }
    }

    // Rim.
    m.rim_ = Bitset(n);
    {
        std::unordered_set<VertexId> seen;
        for (VertexId id : spec.rim) {
            if (!seen.insert(id).second) fail(Err::BadFormat, "duplicate rim vertex");
            auto it = std::lower_bound(m.ids_.begin(), m.ids_.end(), id);
            if (it == m.ids_.end() || *it != id)
                fail(Err::BadFormat, "rim references unknown vertex id " + std::to_string(id));
            m.rim_.set(static_cast<VertexIx>(it - m.ids_.begin()));
        }
    }

    // Outer face: explicit hint wins, else the face seeing the most rim
    // vertices, ties broken by longest walk then smallest id.
    if (ne > 0) {
        if (spec.outer_face_dart) {
            auto [aid, bid] = *spec.outer_face_dart;
            VertexIx a = ix(aid), b = ix(bid);
            auto it = dart_at.find(key(a, b));
            if (it == dart_at.end())
                fail(Err::BadFormat, "outer face hint is not an edge: " + std::to_string(aid) +
                                         "-" + std::to_string(bid));
            m.outer_face_ = m.face_of_[it->second];
        } else {
            int best = -1, best_rim = -1, best_len = -1;
            for (const auto& f : m.faces_) {
                std::unordered_set<VertexIx> on_face;
                int nrim = 0;
                for (DartId d : f.walk)
                    if (on_face.insert(m.origin_[d]).second && m.rim_.test(m.origin_[d])) ++nrim;
                if (nrim > best_rim || (nrim == best_rim && f.length > best_len)) {
                    best = f.id; best_rim = nrim; best_len = f.length;
                }
            }
            m.outer_face_ = best;
        }
        for (auto& f : m.faces_) f.bounded = (f.id != m.outer_face_);
    }

    m.spec_ = std::move(spec);
    return m;
}

DegreeStats degree_stats(const PlanarMap& map) {
    DegreeStats s;
    for (VertexIx v = 0; v < map.vertex_count(); ++v) {
        int d = map.degree(v);
        s.max_degree = std::max(s.max_degree, d);
        ++s.degree_histogram[d];
    }
    for (const auto& f : map.faces()) {
        if (!f.bounded) continue;
        if (!s.max_codegree || f.length > *s.max_codegree) s.max_codegree = f.length;
        ++s.codegree_histogram[f.length];
    }
    return s;
}

int max_codegree_strict(const PlanarMap& map) {
    auto s = degree_stats(map);
    if (!s.max_codegree) fail(Err::NoBoundedFace, "map has no bounded face");
    return *s.max_codegree;
}

} // namespace coarseplane
