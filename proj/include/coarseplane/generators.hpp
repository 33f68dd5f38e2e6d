#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coarseplane/planar_map.hpp"

namespace coarseplane {

// n x n window of the square grid; rim = outermost ring.
PlanarMap gen_grid(int n);

// Combinatorial ball of radius r in the {p,q} tessellation (p-gon faces,
// degree q).  Requires (p-2)(q-2) > 4; rim = sphere of radius r.
PlanarMap gen_tessellation(int p, int q, int r);

// One wheel decoration per schedule entry (face, n): a new hub joined to the
// face's vertices by spokes of length n, with ladder rungs between
// consecutive spokes except the last/first pair, which leaves one long face
// of traced length 2n+1.
PlanarMap gen_bowditch_g1(const PlanarMap& base,
                          const std::vector<std::pair<FaceId, int>>& schedule);

// As g1 plus the closing rungs, so all new faces stay short.
PlanarMap gen_bowditch_g2(const PlanarMap& base,
                          const std::vector<std::pair<FaceId, int>>& schedule);

// Window of the dyadic graph: levels 0..L, level n holding x = i/2^n for
// i = 0..W*2^n, horizontal edges plus verticals (i,n)-(2i,n+1).  All bounded
// faces are pentagons.  Rim = side columns and the top level; the bottom
// level is genuine structure of the infinite graph, not a cut.
PlanarMap gen_dyadic(int levels, int width);

// The dyadic square H(a): corners (0,0),(a,0),(0,a),(a,a).
PlanarMap gen_dyadic_square(int a);

// Dyadic base with a reflected copy of H(n) hung below the baseline along
// [n^2, n^2+n] for each n <= N; metadata lists each copy's vertices and
// attachment path as amenability witnesses.
PlanarMap gen_composite(int big_n);

struct GeneratorSpec {
    std::string family;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
};

// Dispatch on family name; same spec always yields identical bytes.
PlanarMap generate(const GeneratorSpec& spec);

} // namespace coarseplane
