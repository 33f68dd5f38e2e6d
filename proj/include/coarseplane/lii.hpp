#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coarseplane/planar_map.hpp"
#include "coarseplane/rational.hpp"

namespace coarseplane {

// Maximal connected induced rim-free subgraph with vertex boundary of size
// 1 or 2.  The rim is exempt: it stands in for the rest of an unbounded
// graph, so subgraphs containing rim vertices are never decorations.
struct Decoration {
    std::vector<VertexIx> vertices;   // sorted
    std::vector<VertexIx> boundary;   // sorted, size 1 or 2
};

std::vector<Decoration> find_decorations(const PlanarMap& map);
std::vector<std::pair<int, int>> decoration_overlaps(const std::vector<Decoration>& decs);

struct EliminatedDecoration {
    std::vector<VertexId> vertices;   // external ids, stable across rebuilds
    std::vector<VertexId> boundary;
};

struct EliminationResult {
    PlanarMap map;
    std::vector<int> vertex_map;      // original index -> new index, -1 if deleted
    std::vector<EliminatedDecoration> eliminated;
    int passes = 0;
};

// Deletes decorations one at a time (smallest vertex id first), recomputing
// maximality after each deletion.  A boundary pair {v,w} gains the edge vw
// unless already present, spliced into the rotation slots the decoration
// vacated.  Afterwards every non-rim vertex has degree >= 3.
EliminationResult eliminate_decorations(const PlanarMap& map);

struct QuasiIsometryReport {
    int pairs_checked = 0;
    int pairs_skipped = 0;            // not surviving or not certified
    Rational bound;                   // 2/c
    int max_decoration_size = 0;
    int decoration_count = 0;
};

// Verifies d_G'(x,y) <= d_G(x,y) <= (2/c) d_G'(x,y) over certified surviving
// pairs (all of them when samples is empty) and decoration sizes <= 2/c.
QuasiIsometryReport quasi_isometry_check(const PlanarMap& g, const PlanarMap& gp,
                                         const std::vector<int>& corr, const Rational& c,
                                         const std::vector<std::pair<VertexIx, VertexIx>>& samples = {});

struct CombinatorialDisk {
    PlanarMap map;                    // induced submap, ids inherited
    std::vector<VertexIx> boundary;   // boundary cycle, disk indices
};

// Induced submap on the closed region of the cycle, keeping only edges that
// lie inside it (cycle edges plus edges with both incident faces interior);
// chords hanging outside the cycle are dropped.
CombinatorialDisk disk_from_cycle(const PlanarMap& map, const std::vector<VertexIx>& cycle);

struct LiiCounts {
    bool ok = false;
    int bounded_faces = 0;
    int max_face_length = 0;
    int boundary_length = 0;
};

// true iff every bounded face length <= D and bounded faces <= k * |boundary|.
LiiCounts lii_check(const CombinatorialDisk& disk, const Rational& k, int d);

struct CycleRatio {
    std::vector<VertexIx> cycle;
    int faces = 0;
    int length = 0;
    Rational ratio;                   // faces / length
};

struct FacesInsideRatio {
    Rational max_ratio;               // the empirical k-hat
    std::vector<CycleRatio> table;
};

FacesInsideRatio faces_inside_ratio(const PlanarMap& map,
                                    const std::vector<std::vector<VertexIx>>& cycles);

struct CertificateRow {
    std::string origin;               // which sample produced the cycle
    int length = 0;
    int faces = 0;                    // faces strictly inside
    int interior_vertices = 0;
    bool ok = false;
};

struct CertificateReport {
    Rational c_prime;                 // connected-subset Cheeger lower bound
    int max_degree = 0;
    Rational coefficient;             // (1 + c') * max_degree / c'
    int size_cap = 0;
    std::vector<CertificateRow> rows;
    bool certified = false;           // every sampled cycle satisfies F <= coeff * |C|
};

// Samples rim-free cycles (geodetic hulls of core faces plus boundary walks
// of balls around a deepest vertex) and checks F <= ((1+c')Δ/c')|C| exactly.
// The map should already have its decorations eliminated.
CertificateReport hyperbolicity_certificate(const PlanarMap& map, int size_cap,
                                            std::uint64_t geodesic_cap = 1'000'000,
                                            std::uint64_t state_budget = 10'000'000);

} // namespace coarseplane
