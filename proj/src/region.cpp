#include "coarseplane/region.hpp"

#include <algorithm>
#include <unordered_set>

namespace coarseplane {

std::vector<DartId> cycle_darts(const PlanarMap& map, const std::vector<VertexIx>& cycle) {
    const int k = static_cast<int>(cycle.size());
    if (k < 3) fail(Err::NotACycle, "cycle needs at least 3 vertices");
    std::unordered_set<VertexIx> seen(cycle.begin(), cycle.end());
    if (static_cast<int>(seen.size()) != k) fail(Err::NotACycle, "repeated vertex in cycle");
    std::vector<DartId> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) {
        DartId d = map.dart_between(cycle[i], cycle[(i + 1) % k]);
        if (d < 0)
            fail(Err::NotACycle, "consecutive cycle vertices " + std::to_string(map.id_of(cycle[i])) +
                                     "," + std::to_string(map.id_of(cycle[(i + 1) % k])) +
                                     " are not adjacent");
        out.push_back(d);
    }
    return out;
}

std::vector<DartId> path_darts(const PlanarMap& map, const std::vector<VertexIx>& path) {
    if (path.size() < 2) fail(Err::BadFormat, "path needs at least 2 vertices");
    std::unordered_set<VertexIx> seen(path.begin(), path.end());
    if (seen.size() != path.size()) fail(Err::BadFormat, "repeated vertex in path");
    std::vector<DartId> out;
    out.reserve(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        DartId d = map.dart_between(path[i], path[i + 1]);
        if (d < 0) fail(Err::BadFormat, "consecutive path vertices are not adjacent");
        out.push_back(d);
    }
    return out;
}

Bitset edge_set_of(const PlanarMap& map, const std::vector<DartId>& darts) {
    Bitset b(map.edge_count());
    for (DartId d : darts) b.set(PlanarMap::edge_of(d));
    return b;
}

CycleRegion cycle_interior(const PlanarMap& map, const std::vector<VertexIx>& cycle) {
    auto cdarts = cycle_darts(map, cycle);
    Bitset cut = edge_set_of(map, cdarts);

    CycleRegion r;
    r.cycle = cycle;
    r.interior_faces = Bitset(map.face_count());
    r.interior_vertices = Bitset(map.vertex_count());
    r.interior_edges = Bitset(map.edge_count());
    r.cycle_vertices = Bitset(map.vertex_count());
    for (VertexIx v : cycle) r.cycle_vertices.set(v);

    // Dual growth from the faces to the left of the walk, i.e. the faces
    // the reversed darts lie on.
    std::vector<FaceId> stack;
    for (DartId d : cdarts) {
        FaceId f = map.face_of(PlanarMap::twin(d));
        if (!r.interior_faces.test(f)) { r.interior_faces.set(f); stack.push_back(f); }
    }
    while (!stack.empty()) {
        FaceId f = stack.back(); stack.pop_back();
        for (DartId d : map.face(f).walk) {
            if (cut.test(PlanarMap::edge_of(d))) continue;
            FaceId g = map.face_of(PlanarMap::twin(d));
            if (!r.interior_faces.test(g)) { r.interior_faces.set(g); stack.push_back(g); }
        }
    }
    if (map.outer_face() >= 0 && r.interior_faces.test(map.outer_face()))
        fail(Err::CycleTouchesOuterFace, "region on this side of the cycle is unbounded");

    for (FaceId f = 0; f < map.face_count(); ++f) {
        if (!r.interior_faces.test(f)) continue;
        for (DartId d : map.face(f).walk) {
            VertexIx v = map.origin(d);
            if (!r.cycle_vertices.test(v)) r.interior_vertices.set(v);
            if (r.interior_faces.test(map.face_of(PlanarMap::twin(d))) &&
                !cut.test(PlanarMap::edge_of(d)))
                r.interior_edges.set(PlanarMap::edge_of(d));
        }
    }
    r.closed_vertices = r.interior_vertices;
    for (VertexIx v : cycle) r.closed_vertices.set(v);
    return r;
}

CycleRegion bounded_side(const PlanarMap& map, std::vector<VertexIx> cycle) {
    try {
        return cycle_interior(map, cycle);
    } catch (const MapError& e) {
        if (e.code() != Err::CycleTouchesOuterFace) throw;
    }
    std::reverse(cycle.begin(), cycle.end());
    return cycle_interior(map, cycle);
}

Bitset region_of_edge_cut(const PlanarMap& map, const Bitset& cut_edges) {
    Bitset reach(map.face_count());
    if (map.outer_face() < 0) return Bitset(map.face_count());
    std::vector<FaceId> stack{map.outer_face()};
    reach.set(map.outer_face());
    while (!stack.empty()) {
        FaceId f = stack.back(); stack.pop_back();
        for (DartId d : map.face(f).walk) {
            if (cut_edges.test(PlanarMap::edge_of(d))) continue;
            FaceId g = map.face_of(PlanarMap::twin(d));
            if (!reach.test(g)) { reach.set(g); stack.push_back(g); }
        }
    }
    Bitset shadow(map.face_count());
    for (FaceId f = 0; f < map.face_count(); ++f)
        if (!reach.test(f)) shadow.set(f);
    return shadow;
}

Bitset vertices_of_faces(const PlanarMap& map, const Bitset& faces) {
    Bitset out(map.vertex_count());
    for (FaceId f = 0; f < map.face_count(); ++f) {
        if (!faces.test(f)) continue;
        for (DartId d : map.face(f).walk) out.set(map.origin(d));
    }
    return out;
}

} // namespace coarseplane
