#pragma once

#include <vector>

#include "coarseplane/metric.hpp"
#include "coarseplane/planar_map.hpp"
#include "coarseplane/region.hpp"

#include "json.hpp"

namespace coarseplane {

enum class Side { S1, S2, Neither };

struct SideClass {
    std::vector<VertexIx> cycle;
    VertexIx x = -1, y = -1;
    std::vector<VertexIx> arc_xy;   // from x to y along the cycle's orientation
    Side cls = Side::Neither;
};

// Which side of the cycle the geodesic lies on: S1 when the arc xCy is
// between yCx and the geodesic, S2 symmetrically.  The geodesic must run
// from x to y and stay outside the cycle.
SideClass classify_side(const PlanarMap& map, const std::vector<VertexIx>& cycle, VertexIx x,
                        VertexIx y, const std::vector<VertexIx>& geodesic);

// g1 precedes g2 in the side order anchored at the arc: g1 is between the
// arc and g2 (every face enclosed by arc and g1 is enclosed by arc and g2).
bool precedes(const PlanarMap& map, const std::vector<VertexIx>& arc,
              const std::vector<VertexIx>& g1, const std::vector<VertexIx>& g2);

// Greatest lower bound of two side-class members: alternates the maximal
// subpaths of each geodesic lying inside the other's composite with the arc.
// The public form checks S1 membership against the cycle's arc xCy.
GeodesicPath meet(const PlanarMap& map, const std::vector<VertexIx>& cycle, VertexIx x, VertexIx y,
                  const GeodesicPath& g1, const GeodesicPath& g2);

GeodesicPath meet_on_arc(const PlanarMap& map, const std::vector<VertexIx>& arc,
                         const GeodesicPath& g1, const GeodesicPath& g2);

// True when the path has an edge strictly inside the closed curve given by
// its edge set (curve = simple cycle or union of lobes of an even subgraph).
bool path_crosses_cycle(const PlanarMap& map, const std::vector<VertexIx>& path,
                        const Bitset& curve_edges);

// Least element of the side class under the betweenness order, obtained by
// folding meet over every enumerated member; postcondition: no enumerated
// geodesic lying outside the cycle crosses arc ∪ result.
GeodesicPath closest_geodesic(const PlanarMap& map, const std::vector<VertexIx>& cycle, VertexIx x,
                              VertexIx y, Side side, std::uint64_t cap = 1'000'000);

struct HullStep {
    VertexIx x = -1, y = -1;
    std::vector<VertexIx> discarded_arc;
    std::vector<VertexIx> inserted;
};

struct HullTrace {
    FaceId face = -1;
    std::vector<std::vector<VertexIx>> cycles;   // C0 .. Ct
    std::vector<HullStep> steps;
    bool geodetic = false;
    bool certified = false;
};

// Shrinks the face's boundary cycle step by step, replacing the first
// non-geodesic arc by the closest geodesic on a side that keeps the face
// enclosed, until the cycle is geodetic.  Lengths strictly decrease.
HullTrace geodetic_hull(const PlanarMap& map, FaceId face, std::uint64_t geodesic_cap = 1'000'000);

// Edge-disjoint simple cycles covering an even subgraph, deterministic.
std::vector<std::vector<VertexIx>> decompose_even_subgraph(const PlanarMap& map,
                                                           const Bitset& edges);

nlohmann::ordered_json hull_trace_json(const PlanarMap& map, const HullTrace& trace);

} // namespace coarseplane
