#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarseplane/bitset.hpp"
#include "coarseplane/errors.hpp"

#include "json.hpp"

namespace coarseplane {

using VertexId = int;      // external id, arbitrary nonnegative int
using VertexIx = int;      // dense index, 0..n-1 in ascending id order
using DartId   = int;      // darts 2e and 2e+1 are twins on edge e
using FaceId   = int;

constexpr int kNoFace = -1;
constexpr int kInfDist = INT32_MAX;

// Build-time description of a map: per-vertex neighbor lists in
// counterclockwise rotation order, plus the rim (vertices attached to the
// truncated part of the graph).  Order of vertices and neighbors is
// preserved verbatim so a loaded file re-serializes byte-identically.
struct MapSpecVertex {
    VertexId id = 0;
    std::vector<VertexId> nbrs;
};

struct MapSpec {
    std::vector<MapSpecVertex> vertices;
    std::vector<VertexId> rim;
    std::optional<std::pair<VertexId, VertexId>> outer_face_dart;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

struct FaceRecord {
    FaceId id = 0;
    std::vector<DartId> walk;   // face-successor orbit; face lies to the right of each dart
    int length = 0;             // == walk.size()
    bool bounded = true;
};

struct DegreeStats {
    int max_degree = 0;
    std::optional<int> max_codegree;            // max bounded-face length; absent for forests
    std::map<int, int> degree_histogram;
    std::map<int, int> codegree_histogram;      // bounded faces only
};

class PlanarMap {
public:
    int vertex_count() const { return static_cast<int>(ids_.size()); }
    int edge_count() const { return static_cast<int>(target_.size() / 2); }
    int dart_count() const { return static_cast<int>(target_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    VertexId id_of(VertexIx v) const { return ids_[v]; }
    VertexIx index_of(VertexId id) const;
    bool has_id(VertexId id) const;

    // Rotation of v: outgoing darts in ccw order.
    std::span<const DartId> rotation(VertexIx v) const {
        return {darts_.data() + rot_off_[v], static_cast<std::size_t>(rot_off_[v + 1] - rot_off_[v])};
    }
    int degree(VertexIx v) const { return rot_off_[v + 1] - rot_off_[v]; }

    static DartId twin(DartId d) { return d ^ 1; }
    VertexIx origin(DartId d) const { return origin_[d]; }
    VertexIx target(DartId d) const { return target_[d]; }
    static int edge_of(DartId d) { return d >> 1; }

    // Face-successor: the next dart of the face walk lying to the right of d.
    DartId next_in_face(DartId d) const { return next_[d]; }
    FaceId face_of(DartId d) const { return face_of_[d]; }
    const FaceRecord& face(FaceId f) const { return faces_[f]; }
    const std::vector<FaceRecord>& faces() const { return faces_; }
    FaceId outer_face() const { return outer_face_; }

    DartId dart_between(VertexIx u, VertexIx v) const;  // -1 if absent
    bool adjacent(VertexIx u, VertexIx v) const { return dart_between(u, v) >= 0; }

    bool is_rim(VertexIx v) const { return rim_.test(v); }
    const Bitset& rim_set() const { return rim_; }
    std::vector<VertexIx> rim_vertices() const { return rim_.to_vector(); }

    bool connected() const { return component_count_ == 1; }
    int component_count() const { return component_count_; }

    // Vertex sequence of a face walk (origins of the walk darts).
    std::vector<VertexIx> face_vertices(FaceId f) const;

    const MapSpec& source_spec() const { return spec_; }

    friend PlanarMap build_map(MapSpec spec);

private:
    std::vector<VertexId> ids_;            // ascending
    std::vector<int> rot_off_;             // CSR offsets into darts_
    std::vector<DartId> darts_;            // rotations, ccw
    std::vector<VertexIx> origin_, target_;
    std::vector<DartId> next_;             // face-successor
    std::vector<FaceId> face_of_;
    std::vector<FaceRecord> faces_;
    FaceId outer_face_ = kNoFace;
    Bitset rim_;
    int component_count_ = 0;
    MapSpec spec_;
};

// Validates the spec (symmetry, simplicity), traces faces, checks Euler's
// formula per connected component, and designates the outer face (explicit
// hint, else most rim vertices, ties by longest walk then smallest id).
PlanarMap build_map(MapSpec spec);

DegreeStats degree_stats(const PlanarMap& map);

// Max bounded-face length; throws NoBoundedFace when the map is a forest.
int max_codegree_strict(const PlanarMap& map);

} // namespace coarseplane
