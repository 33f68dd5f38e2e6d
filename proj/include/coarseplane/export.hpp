#pragma once

#include <string>

#include "coarseplane/planar_map.hpp"

namespace coarseplane {

// Undirected DOT listing, one edge per line, rim vertices marked.
std::string to_dot(const PlanarMap& map);

// Straight-line drawing: outer face pinned on a circle, interior vertices at
// the barycenter of their neighbors.  Coordinates are presentation-only and
// never feed back into any measurement.
std::string to_svg(const PlanarMap& map);

} // namespace coarseplane
