#include <algorithm>
#include <numeric>

#include "coarseplane/generators.hpp"
#include "coarseplane/planar_map.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coarseplane;
using namespace coarseplane::testing;

namespace {

int face_length_sum(const PlanarMap& m) {
    int sum = 0;
    for (const auto& f : m.faces()) sum += f.length;
    return sum;
}

MapSpec square_spec() {
    return make_spec({{0, {1, 3}}, {1, {2, 0}}, {2, {3, 1}}, {3, {0, 2}}});
}

MapSpec planar_k4() {
    // outer triangle 1,2,3 with 0 at the centroid
    return make_spec({{0, {3, 1, 2}}, {1, {2, 0, 3}}, {2, {3, 0, 1}}, {3, {1, 0, 2}}});
}

}  // namespace

TEST_CASE("square map has two faces of length 4") {
    PlanarMap m = build_map(square_spec());
    CHECK(m.vertex_count() == 4);
    CHECK(m.edge_count() == 4);
    CHECK(m.face_count() == 2);
    for (const auto& f : m.faces()) CHECK(f.length == 4);
    CHECK(face_length_sum(m) == 2 * m.edge_count());
}

TEST_CASE("two-vertex path yields a single face of length 2") {
    PlanarMap m = build_map(make_spec({{0, {1}}, {1, {0}}}));
    CHECK(m.vertex_count() == 2);
    CHECK(m.edge_count() == 1);
    CHECK(m.face_count() == 1);
    CHECK(m.faces()[0].length == 2);
    CHECK_FALSE(m.faces()[m.outer_face()].bounded);
}

TEST_CASE("hand-built 3x3 grid satisfies Euler") {
    std::vector<std::pair<VertexId, std::vector<VertexId>>> rows;
    const int n = 3;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            std::vector<VertexId> nbrs;  // ccw: right, up, left, down
            if (c + 1 < n) nbrs.push_back(gid(n, c + 1, r));
            if (r + 1 < n) nbrs.push_back(gid(n, c, r + 1));
            if (c > 0) nbrs.push_back(gid(n, c - 1, r));
            if (r > 0) nbrs.push_back(gid(n, c, r - 1));
            rows.push_back({gid(n, c, r), std::move(nbrs)});
        }
    PlanarMap m = build_map(make_spec(std::move(rows)));
    CHECK(m.vertex_count() == 9);
    CHECK(m.edge_count() == 12);
    CHECK(m.face_count() == 5);
    CHECK(m.vertex_count() - m.edge_count() + m.face_count() == 2);
    int bounded = 0;
    for (const auto& f : m.faces())
        if (f.bounded) {
            ++bounded;
            CHECK(f.length == 4);
        }
    CHECK(bounded == 4);
}

TEST_CASE("hexagon cycle gives two faces of length 6") {
    PlanarMap m = build_map(make_spec(
        {{0, {1, 5}}, {1, {2, 0}}, {2, {3, 1}}, {3, {4, 2}}, {4, {5, 3}}, {5, {0, 4}}}));
    REQUIRE(m.face_count() == 2);
    CHECK(m.faces()[0].length == 6);
    CHECK(m.faces()[1].length == 6);
}

TEST_CASE("star traces one face of length 8") {
    PlanarMap m = build_map(
        make_spec({{0, {1, 2, 3, 4}}, {1, {0}}, {2, {0}}, {3, {0}}, {4, {0}}}));
    REQUIRE(m.face_count() == 1);
    CHECK(m.faces()[0].length == 8);
}

TEST_CASE("planar K4 builds, a flipped rotation does not") {
    PlanarMap good = build_map(planar_k4());
    CHECK(good.face_count() == 4);
    CHECK(good.vertex_count() - good.edge_count() + good.face_count() == 2);

    MapSpec bad = planar_k4();
    std::reverse(bad.vertices[0].nbrs.begin(), bad.vertices[0].nbrs.end());
    CHECK_THROWS_WITH_AS(build_map(std::move(bad)), doctest::Contains("V-E+F"),
                         MapError);
}

TEST_CASE("spec validation errors") {
    SUBCASE("asymmetric adjacency") {
        CHECK_THROWS_AS(build_map(make_spec({{0, {1}}, {1, {}}})), MapError);
        try {
            build_map(make_spec({{0, {1}}, {1, {}}}));
        } catch (const MapError& e) {
            CHECK(e.code() == Err::AsymmetricAdjacency);
        }
    }
    SUBCASE("multi-edge") {
        try {
            build_map(make_spec({{0, {1, 1}}, {1, {0, 0}}}));
            FAIL("expected a throw");
        } catch (const MapError& e) {
            CHECK(e.code() == Err::LoopOrMultiEdge);
        }
    }
    SUBCASE("self loop") {
        try {
            build_map(make_spec({{0, {0, 0}}}));
            FAIL("expected a throw");
        } catch (const MapError& e) {
            CHECK(e.code() == Err::LoopOrMultiEdge);
        }
    }
    SUBCASE("flipped K4 rotation is a non-planar trace") {
        MapSpec bad = planar_k4();
        std::reverse(bad.vertices[0].nbrs.begin(), bad.vertices[0].nbrs.end());
        try {
            build_map(std::move(bad));
            FAIL("expected a throw");
        } catch (const MapError& e) {
            CHECK(e.code() == Err::NonPlanarTrace);
        }
    }
}

TEST_CASE("outer face: explicit hint wins, rim-count heuristic otherwise") {
    PlanarMap grid = gen_grid(3);
    // heuristic: the perimeter face carries all 8 rim vertices
    const auto& outer = grid.face(grid.outer_face());
    CHECK(outer.length == 8);
    CHECK_FALSE(outer.bounded);

    // explicit hint can designate a unit square instead
    MapSpec spec = grid.source_spec();
    spec.outer_face_dart = {gid(3, 1, 1), gid(3, 0, 1)};  // dart with a square on its right
    PlanarMap forced = build_map(std::move(spec));
    CHECK(forced.face(forced.outer_face()).length == 4);

    MapSpec bad = grid.source_spec();
    bad.outer_face_dart = {gid(3, 0, 0), gid(3, 2, 2)};  // not an edge
    try {
        build_map(std::move(bad));
        FAIL("expected a throw");
    } catch (const MapError& e) {
        CHECK(e.code() == Err::BadFormat);
    }
}

TEST_CASE("degree and codegree statistics") {
    SUBCASE("5x5 grid") {
        auto s = degree_stats(gen_grid(5));
        CHECK(s.max_degree == 4);
        REQUIRE(s.max_codegree.has_value());
        CHECK(*s.max_codegree == 4);
        CHECK(s.degree_histogram.at(2) == 4);   // corners
        CHECK(s.degree_histogram.at(3) == 12);  // sides
        CHECK(s.degree_histogram.at(4) == 9);   // interior
        CHECK(s.codegree_histogram.at(4) == 16);
    }
    SUBCASE("{3,7} window") {
        auto s = degree_stats(gen_tessellation(3, 7, 2));
        CHECK(s.max_degree == 7);
        REQUIRE(s.max_codegree.has_value());
        CHECK(*s.max_codegree == 3);
    }
    SUBCASE("forest has no bounded face") {
        PlanarMap path = build_map(make_spec({{0, {1}}, {1, {0, 2}}, {2, {1}}}));
        CHECK_FALSE(degree_stats(path).max_codegree.has_value());
        try {
            max_codegree_strict(path);
            FAIL("expected a throw");
        } catch (const MapError& e) {
            CHECK(e.code() == Err::NoBoundedFace);
        }
    }
}

TEST_CASE("dyadic window faces are all pentagons") {
    PlanarMap m = gen_dyadic(3, 1);
    for (const auto& f : m.faces())
        if (f.bounded) CHECK(f.length == 5);
    CHECK(max_codegree_strict(m) == 5);
}

TEST_CASE("face walk bookkeeping is consistent") {
    for (const PlanarMap& m :
         {gen_grid(4), gen_tessellation(4, 5, 2), gen_dyadic(2, 2), gen_composite(2)}) {
        CHECK(face_length_sum(m) == m.dart_count());
        // next_in_face stays within the face and covers the walk
        for (const auto& f : m.faces()) {
            DartId d = f.walk.front();
            for (int i = 0; i < f.length; ++i) {
                CHECK(m.face_of(d) == f.id);
                d = m.next_in_face(d);
            }
            CHECK(d == f.walk.front());
        }
        // rotations and dart endpoints agree
        for (VertexIx v = 0; v < m.vertex_count(); ++v)
            for (DartId d : m.rotation(v)) {
                CHECK(m.origin(d) == v);
                CHECK(m.target(PlanarMap::twin(d)) == v);
            }
    }
}

TEST_CASE("two disjoint squares build as separate components") {
    PlanarMap m = build_map(make_spec({{0, {1, 3}},
                                       {1, {2, 0}},
                                       {2, {3, 1}},
                                       {3, {0, 2}},
                                       {10, {11, 13}},
                                       {11, {12, 10}},
                                       {12, {13, 11}},
                                       {13, {10, 12}}}));
    CHECK(m.component_count() == 2);
    CHECK_FALSE(m.connected());
    CHECK(m.face_count() == 4);
}

TEST_CASE("index and id lookups round-trip") {
    PlanarMap m = gen_grid(4);
    for (VertexIx v = 0; v < m.vertex_count(); ++v) {
        CHECK(m.index_of(m.id_of(v)) == v);
        CHECK(m.has_id(m.id_of(v)));
    }
    CHECK_FALSE(m.has_id(999));
    CHECK(m.adjacent(m.index_of(0), m.index_of(1)));
    CHECK_FALSE(m.adjacent(m.index_of(0), m.index_of(5)));
    CHECK(m.dart_between(m.index_of(0), m.index_of(7)) == -1);
}

TEST_CASE("face_vertices lists walk origins in order") {
    PlanarMap m = build_map(square_spec());
    for (const auto& f : m.faces()) {
        auto vs = m.face_vertices(f.id);
        REQUIRE(static_cast<int>(vs.size()) == f.length);
        std::vector<VertexIx> sorted = vs;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}
