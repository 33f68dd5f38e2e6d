#include <algorithm>
#include <set>

#include "coarseplane/generators.hpp"
#include "coarseplane/hull.hpp"
#include "coarseplane/isoperimetry.hpp"
#include "coarseplane/lii.hpp"
#include "coarseplane/map_io.hpp"
#include "coarseplane/metric.hpp"
#include "coarseplane/planar_map.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coarseplane;
using namespace coarseplane::testing;

namespace {

// grid with a pendant path of `len` vertices hanging off an interior vertex
MapSpec grid_with_tail(int n, int cx, int cy, int len) {
    PlanarMap g = gen_grid(n);
    MapSpec spec = g.source_spec();
    VertexId anchor = gid(n, cx, cy);
    VertexId base = n * n;
    for (int i = 0; i < len; ++i) {
        MapSpecVertex v;
        v.id = base + i;
        v.nbrs.push_back(i == 0 ? anchor : base + i - 1);
        if (i + 1 < len) v.nbrs.push_back(base + i + 1);
        spec.vertices.push_back(std::move(v));
    }
    for (auto& sv : spec.vertices)
        if (sv.id == anchor) sv.nbrs.push_back(base);
    return spec;
}

// grid with one unit square edge subdivided by `len` vertices: they form a
// two-boundary decoration between the edge's endpoints
MapSpec grid_with_subdivided_chord(int n, int len) {
    PlanarMap g = gen_grid(n);
    MapSpec spec = g.source_spec();
    VertexId a = gid(n, 2, 2), b = gid(n, 3, 2);
    VertexId next = n * n;
    // chain a - c0 - c1 - ... - b alongside the existing edge
    for (int i = 0; i < len; ++i) {
        MapSpecVertex v;
        v.id = next + i;
        v.nbrs.push_back(i == 0 ? a : next + i - 1);
        v.nbrs.push_back(i + 1 < len ? next + i + 1 : b);
        spec.vertices.push_back(std::move(v));
    }
    for (auto& sv : spec.vertices) {
        if (sv.id == a) {
            auto it = std::find(sv.nbrs.begin(), sv.nbrs.end(), b);
            sv.nbrs.insert(it + 1, next);  // right after the parallel edge
        } else if (sv.id == b) {
            auto it = std::find(sv.nbrs.begin(), sv.nbrs.end(), a);
            sv.nbrs.insert(it, next + len - 1);
        }
    }
    return spec;
}

}  // namespace

TEST_CASE("decoration discovery") {
    SUBCASE("a pendant path is a one-boundary decoration") {
        PlanarMap m = build_map(grid_with_tail(7, 3, 3, 3));
        auto decs = find_decorations(m);
        REQUIRE(decs.size() == 1);
        CHECK(decs[0].vertices.size() == 3);
        REQUIRE(decs[0].boundary.size() == 1);
        CHECK(m.id_of(decs[0].boundary[0]) == gid(7, 3, 3));
    }
    SUBCASE("a subdivided parallel edge is a two-boundary decoration") {
        PlanarMap m = build_map(grid_with_subdivided_chord(7, 2));
        auto decs = find_decorations(m);
        REQUIRE(decs.size() == 1);
        CHECK(decs[0].vertices.size() == 2);
        CHECK(decs[0].boundary.size() == 2);
    }
    SUBCASE("tessellation windows carry no decorations") {
        CHECK(find_decorations(gen_tessellation(3, 7, 3)).empty());
        CHECK(find_decorations(gen_tessellation(4, 5, 3)).empty());
        CHECK(find_decorations(gen_grid(6)).empty());
    }
    SUBCASE("matches the brute-force cut scan") {
        for (const PlanarMap& m :
             {build_map(grid_with_tail(6, 2, 2, 2)),
              build_map(grid_with_subdivided_chord(7, 3)), gen_dyadic(2, 2)}) {
            auto got = find_decorations(m);
            auto want = decorations_brute(m);
            REQUIRE(got.size() == want.size());
            std::vector<std::pair<std::vector<VertexIx>, std::vector<VertexIx>>> gg;
            for (const auto& d : got) gg.push_back({d.vertices, d.boundary});
            std::sort(gg.begin(), gg.end());
            CHECK(gg == want);
        }
    }
    SUBCASE("disjoint decorations report no overlaps") {
        PlanarMap m = build_map(grid_with_tail(7, 3, 3, 2));
        auto decs = find_decorations(m);
        CHECK(decoration_overlaps(decs).empty());
    }
}

TEST_CASE("decoration elimination") {
    SUBCASE("removing a tail restores the grid") {
        PlanarMap m = build_map(grid_with_tail(7, 3, 3, 3));
        EliminationResult r = eliminate_decorations(m);
        CHECK(r.map.vertex_count() == 49);
        CHECK(r.map.edge_count() == 84);
        CHECK(r.eliminated.size() == 1);
        CHECK(r.passes >= 1);
        CHECK(find_decorations(r.map).empty());
        // vertex_map drops exactly the tail
        int dropped = 0;
        for (int t : r.vertex_map)
            if (t < 0) ++dropped;
        CHECK(dropped == 3);
    }
    SUBCASE("a two-boundary decoration leaves a direct edge behind") {
        PlanarMap m = build_map(grid_with_subdivided_chord(7, 2));
        // the parallel chain shadows an existing edge: nothing new inserted
        EliminationResult r = eliminate_decorations(m);
        CHECK(r.map.vertex_count() == 49);
        CHECK(r.map.edge_count() == 84);
        CHECK(r.map.adjacent(r.map.index_of(gid(7, 2, 2)), r.map.index_of(gid(7, 3, 2))));
        CHECK(find_decorations(r.map).empty());
    }
    SUBCASE("elimination is idempotent") {
        PlanarMap m = build_map(grid_with_tail(8, 4, 4, 4));
        EliminationResult once = eliminate_decorations(m);
        EliminationResult twice = eliminate_decorations(once.map);
        CHECK(twice.eliminated.empty());
        CHECK(twice.map.vertex_count() == once.map.vertex_count());
        CHECK(serialize_spec(twice.map.source_spec()) ==
              serialize_spec(once.map.source_spec()));
    }
    SUBCASE("after elimination every non-rim vertex has degree at least 3") {
        for (const MapSpec& spec :
             {grid_with_tail(7, 3, 3, 3), grid_with_subdivided_chord(7, 3)}) {
            PlanarMap m = build_map(MapSpec(spec));
            EliminationResult r = eliminate_decorations(m);
            for (VertexIx v = 0; v < r.map.vertex_count(); ++v)
                if (!r.map.is_rim(v)) CHECK(r.map.degree(v) >= 3);
        }
    }
    SUBCASE("a rimless near-cycle collapses entirely") {
        // 4-cycle plus one pendant: everything is a decoration of the rest
        PlanarMap m = build_map(make_spec({{0, {1, 3, 4}},
                                           {1, {2, 0}},
                                           {2, {3, 1}},
                                           {3, {0, 2}},
                                           {4, {0}}}));
        try {
            eliminate_decorations(m);
            FAIL("expected a throw");
        } catch (const MapError& e) {
            CHECK(e.code() == Err::EverythingIsADecoration);
        }
    }
}

TEST_CASE("quasi isometry check") {
    SUBCASE("identity correspondence on an unchanged map") {
        PlanarMap g = gen_grid(7);
        std::vector<int> corr(g.vertex_count());
        for (std::size_t i = 0; i < corr.size(); ++i) corr[i] = static_cast<int>(i);
        auto rep = quasi_isometry_check(g, g, corr, Rational(1, 2));
        CHECK(rep.pairs_checked > 0);
        CHECK(rep.bound == Rational(4, 1));
        CHECK(rep.decoration_count == 0);
    }
    SUBCASE("grid plus decorations against its eliminated form") {
        PlanarMap m = build_map(grid_with_tail(9, 4, 4, 2));
        EliminationResult r = eliminate_decorations(m);
        auto rep = quasi_isometry_check(m, r.map, r.vertex_map, Rational(1, 2));
        CHECK(rep.pairs_checked > 0);
        CHECK(rep.max_decoration_size == 2);
        CHECK(rep.decoration_count == 1);
        CHECK(rep.pairs_skipped > 0);  // the deleted tail vertices
    }
    SUBCASE("an oversized decoration for the claimed constant is flagged") {
        PlanarMap m = build_map(grid_with_tail(9, 4, 4, 6));
        EliminationResult r = eliminate_decorations(m);
        try {
            quasi_isometry_check(m, r.map, r.vertex_map, Rational(1, 2));
            FAIL("expected a throw");
        } catch (const MapError& e) {
            CHECK(e.code() == Err::ViolationFound);  // size 6 > 2/c = 4
        }
    }
}

TEST_CASE("combinatorial disks") {
    PlanarMap g = gen_grid(9);
    SUBCASE("a face cycle yields the single-face disk") {
        auto sq = block_perimeter(g, 9, 4, 4, 1);
        CombinatorialDisk d = disk_from_cycle(g, sq);
        CHECK(d.map.vertex_count() == 4);
        CHECK(d.map.edge_count() == 4);
        CHECK(d.boundary.size() == 4);
        int bounded = 0;
        for (const auto& f : d.map.faces()) bounded += f.bounded ? 1 : 0;
        CHECK(bounded == 1);
    }
    SUBCASE("a 3x3 block keeps interior vertices and drops outside chords") {
        auto c = block_perimeter(g, 9, 2, 2, 3);
        CombinatorialDisk d = disk_from_cycle(g, c);
        CHECK(d.map.vertex_count() == 16);
        CHECK(d.map.edge_count() == 24);
        int bounded = 0;
        for (const auto& f : d.map.faces()) bounded += f.bounded ? 1 : 0;
        CHECK(bounded == 9);
        CHECK(d.boundary.size() == 12);
        // ids survive into the disk
        for (VertexIx v : d.boundary) CHECK(g.has_id(d.map.id_of(v)));
    }
}

TEST_CASE("linear isoperimetric counting") {
    PlanarMap g = gen_grid(11);
    SUBCASE("single face disk passes generous parameters") {
        auto sq = block_perimeter(g, 11, 5, 5, 1);
        CombinatorialDisk d = disk_from_cycle(g, sq);
        LiiCounts c = lii_check(d, Rational(1, 1), 6);
        CHECK(c.ok);
        CHECK(c.bounded_faces == 1);
        CHECK(c.max_face_length == 4);
        CHECK(c.boundary_length == 4);
    }
    SUBCASE("block disks separate the two constants") {
        auto big = block_perimeter(g, 11, 1, 1, 8);
        CombinatorialDisk d = disk_from_cycle(g, big);
        // 64 faces inside a 32-cycle: fails k=1, passes k=2
        LiiCounts tight = lii_check(d, Rational(1, 1), 4);
        CHECK_FALSE(tight.ok);
        CHECK(tight.bounded_faces == 64);
        CHECK(tight.boundary_length == 32);
        LiiCounts loose = lii_check(d, Rational(2, 1), 4);
        CHECK(loose.ok);
    }
    SUBCASE("face length cap is enforced") {
        auto sq = block_perimeter(g, 11, 5, 5, 1);
        CombinatorialDisk d = disk_from_cycle(g, sq);
        CHECK_FALSE(lii_check(d, Rational(1, 1), 3).ok);
    }
}

TEST_CASE("faces inside ratio") {
    PlanarMap g = gen_grid(19);
    SUBCASE("m x m block perimeters grow like m/4") {
        std::vector<std::vector<VertexIx>> cycles;
        for (int m = 2; m <= 8; ++m) cycles.push_back(block_perimeter(g, 19, 1, 1, m));
        FacesInsideRatio r = faces_inside_ratio(g, cycles);
        REQUIRE(r.table.size() == 7);
        for (int i = 0; i < 7; ++i) {
            int m = i + 2;
            CHECK(r.table[i].faces == m * m);
            CHECK(r.table[i].length == 4 * m);
            CHECK(r.table[i].ratio == Rational(m, 4));
        }
        CHECK(r.max_ratio == Rational(2, 1));
        // strictly increasing with the block size: no uniform bound in sight
        for (int i = 0; i + 1 < 7; ++i) CHECK(r.table[i].ratio < r.table[i + 1].ratio);
    }
    SUBCASE("hull cycles of a hyperbolic window stay bounded") {
        PlanarMap m = gen_tessellation(3, 7, 3);
        std::vector<std::vector<VertexIx>> cycles;
        auto rd = core_radius(m);
        for (const auto& f : m.faces()) {
            if (!f.bounded) continue;
            bool core = true;
            for (VertexIx v : m.face_vertices(f.id)) core = core && rd[v] > 0;
            if (core) cycles.push_back(geodetic_hull(m, f.id).cycles.back());
        }
        REQUIRE(!cycles.empty());
        FacesInsideRatio r = faces_inside_ratio(m, cycles);
        CHECK(r.max_ratio == Rational(1, 3));  // single triangles only
    }
}

TEST_CASE("flatness refusal and certification") {
    SUBCASE("hyperbolic window is certified") {
        auto rep = hyperbolicity_certificate(gen_tessellation(4, 5, 3), 8);
        CHECK(rep.certified);
        CHECK(rep.c_prime == Rational(5, 2));
        CHECK(rep.max_degree == 5);
        CHECK(rep.coefficient == Rational(7, 1));  // (1 + 5/2) * 5 / (5/2)
        CHECK(!rep.rows.empty());
        for (const auto& row : rep.rows) CHECK(row.ok);
    }
    SUBCASE("heptagonal window is certified") {
        auto rep = hyperbolicity_certificate(gen_tessellation(3, 7, 3), 8);
        CHECK(rep.certified);
        CHECK(rep.c_prime == Rational(21, 8));
        CHECK(rep.max_degree == 7);
    }
    SUBCASE("a large flat window is refused") {
        auto rep = hyperbolicity_certificate(gen_grid(59), 6);
        CHECK_FALSE(rep.certified);
        CHECK(rep.c_prime == Rational(3, 2));
        CHECK(rep.max_degree == 4);
        CHECK(rep.coefficient == Rational(20, 3));
        bool violation = false;
        for (const auto& row : rep.rows)
            if (!row.ok) {
                violation = true;
                CHECK(Rational(row.faces, row.length) > rep.coefficient);
            }
        CHECK(violation);
    }
}
