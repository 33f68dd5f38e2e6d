#pragma once

#include <vector>

#include "coarseplane/planar_map.hpp"

namespace coarseplane {

// The bounded region enclosed by a simple cycle.
struct CycleRegion {
    std::vector<VertexIx> cycle;     // orientation whose left side is the region
    Bitset interior_faces;           // over face ids
    Bitset interior_vertices;        // strictly inside, cycle excluded
    Bitset interior_edges;           // both incident faces interior
    Bitset cycle_vertices;
    Bitset closed_vertices;          // interior plus cycle
};

// Darts c0->c1, c1->c2, ..., c{k-1}->c0.  Throws NotACycle when the vertex
// list is not a simple cycle of length >= 3 in the map.
std::vector<DartId> cycle_darts(const PlanarMap& map, const std::vector<VertexIx>& cycle);

// Darts along a simple path (distinct vertices, consecutive adjacent).
std::vector<DartId> path_darts(const PlanarMap& map, const std::vector<VertexIx>& path);

Bitset edge_set_of(const PlanarMap& map, const std::vector<DartId>& darts);

// Faces to the left of the oriented cycle, grown by dual search that never
// crosses a cycle edge.  Throws CycleTouchesOuterFace when that side holds
// the outer face.
CycleRegion cycle_interior(const PlanarMap& map, const std::vector<VertexIx>& cycle);

// Tries both orientations and returns the one enclosing a bounded region.
CycleRegion bounded_side(const PlanarMap& map, std::vector<VertexIx> cycle);

// Faces not dual-reachable from the outer face once the given edges are cut.
// The cut set need not be a cycle; an even subgraph casts a well defined
// shadow, anything else just yields whatever the cut separates (possibly
// nothing).
Bitset region_of_edge_cut(const PlanarMap& map, const Bitset& cut_edges);

// Vertices incident to at least one face of the given set.
Bitset vertices_of_faces(const PlanarMap& map, const Bitset& faces);

} // namespace coarseplane
