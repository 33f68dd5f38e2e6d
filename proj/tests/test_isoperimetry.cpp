#include <algorithm>
#include <random>
#include <set>

#include "coarseplane/generators.hpp"
#include "coarseplane/isoperimetry.hpp"
#include "coarseplane/metric.hpp"
#include "coarseplane/planar_map.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coarseplane;
using namespace coarseplane::testing;

namespace {

std::vector<VertexIx> block_vertices(const PlanarMap& g, int n, int x0, int y0, int k) {
    std::vector<VertexIx> out;
    for (int dx = 0; dx <= k; ++dx)
        for (int dy = 0; dy <= k; ++dy)
            out.push_back(g.index_of(gid(n, x0 + dx, y0 + dy)));
    return out;
}

}  // namespace

TEST_CASE("vertex boundary") {
    PlanarMap g = gen_grid(9);
    SUBCASE("empty set has empty boundary") {
        CHECK(vertex_boundary(g, std::vector<VertexIx>{}).empty());
    }
    SUBCASE("an interior singleton has its degree as boundary") {
        std::vector<VertexIx> s{g.index_of(gid(9, 4, 4))};
        CHECK(vertex_boundary(g, s).size() == 4);
    }
    SUBCASE("a k-block boundary is 4k for the (k-1)-block vertex set") {
        for (int k = 2; k <= 6; ++k) {
            auto s = block_vertices(g, 9, 1, 1, k - 1);  // k x k vertices
            CHECK(vertex_boundary(g, s).size() == 4 * k);
        }
    }
    SUBCASE("matches the set-based reference on assorted subsets") {
        PlanarMap m = gen_tessellation(4, 5, 2);
        std::mt19937_64 rng(3);
        for (int t = 0; t < 40; ++t) {
            std::set<VertexIx> pick;
            int want = 1 + static_cast<int>(rng() % 6);
            while (static_cast<int>(pick.size()) < want)
                pick.insert(static_cast<VertexIx>(rng() % m.vertex_count()));
            std::vector<VertexIx> s(pick.begin(), pick.end());
            auto got = vertex_boundary(m, s);
            auto want_b = boundary_of(m, s);
            std::sort(got.begin(), got.end());
            CHECK(got == want_b);
        }
    }
    SUBCASE("bitset and vector forms agree") {
        std::vector<VertexIx> s = block_vertices(g, 9, 2, 2, 2);
        Bitset bs(g.vertex_count());
        for (VertexIx v : s) bs.set(v);
        Bitset got = vertex_boundary(g, bs);
        auto vec = vertex_boundary(g, s);
        CHECK(got.count() == static_cast<int>(vec.size()));
        for (VertexIx v : vec) CHECK(got.test(v));
    }
}

TEST_CASE("core vertices sit at rim distance two or more") {
    for (const PlanarMap& m : {gen_grid(6), gen_tessellation(3, 7, 2)}) {
        Bitset core = core_vertices(m);
        auto rd = core_radius(m);
        for (VertexIx v = 0; v < m.vertex_count(); ++v)
            CHECK(core.test(v) == (rd[v] >= 2));
    }
}

TEST_CASE("connected subset enumeration") {
    PlanarMap g = gen_grid(5);
    Bitset all(g.vertex_count());
    for (VertexIx v = 0; v < g.vertex_count(); ++v) all.set(v);

    SUBCASE("each connected subset appears exactly once") {
        std::set<std::vector<VertexIx>> seen;
        std::uint64_t calls = 0;
        auto res = for_each_connected_subset(
            g, all, 3, 1'000'000, [&](const std::vector<VertexIx>& s, int) {
                std::vector<VertexIx> key = s;
                std::sort(key.begin(), key.end());
                CHECK(seen.insert(key).second);
                ++calls;
            });
        CHECK(res.completed);
        CHECK(res.states == calls);
        // reference count: connected subsets of the 5x5 grid, sizes 1..3
        // size 1: 25, size 2: edges = 40, size 3: paths + corners
        std::uint64_t size3 = 0;
        for (const auto& s : seen)
            if (s.size() == 3) ++size3;
        CHECK(seen.size() == 25 + 40 + size3);
        // brute count of connected 3-subsets
        std::uint64_t brute3 = 0;
        for (VertexIx a = 0; a < 25; ++a)
            for (VertexIx b = a + 1; b < 25; ++b)
                for (VertexIx c = b + 1; c < 25; ++c) {
                    int ab = g.adjacent(a, b), ac = g.adjacent(a, c), bc = g.adjacent(b, c);
                    if (ab + ac + bc >= 2) ++brute3;
                }
        CHECK(size3 == brute3);
    }
    SUBCASE("boundary sizes are reported correctly") {
        for_each_connected_subset(g, all, 2, 1'000'000,
                                  [&](const std::vector<VertexIx>& s, int b) {
                                      auto ref = boundary_of(g, s);
                                      CHECK(b == static_cast<int>(ref.size()));
                                  });
    }
    SUBCASE("state budget interrupts a root cleanly") {
        // the budget is accounted per enumeration call; five states cannot
        // cover the subsets rooted at the first corner
        auto res = for_each_connected_subset_from_root(
            g, all, 0, 4, 5, [](const std::vector<VertexIx>&, int) {});
        CHECK_FALSE(res.completed);
        CHECK(res.states >= 5);
        auto whole = for_each_connected_subset(g, all, 4, 5,
                                               [](const std::vector<VertexIx>&, int) {});
        CHECK_FALSE(whole.completed);
    }
}

TEST_CASE("cheeger lower bound") {
    SUBCASE("grid 5 core is a single vertex of ratio 4") {
        auto r = cheeger_lower(gen_grid(5), 4);
        CHECK(r.ratio == Rational(4, 1));
        REQUIRE(r.witness.size() == 1);
        PlanarMap g = gen_grid(5);
        CHECK(r.witness[0] == g.index_of(gid(5, 2, 2)));
        CHECK(r.exhaustive);
        CHECK(r.disconnected_bound == Rational(1, 1));  // ratio / max degree
    }
    SUBCASE("grid 7 matches the bitmask reference over the core") {
        PlanarMap g = gen_grid(7);
        auto r = cheeger_lower(g, 9);
        Bitset core = core_vertices(g);
        std::vector<VertexIx> core_list;
        for (VertexIx v = 0; v < g.vertex_count(); ++v)
            if (core.test(v)) core_list.push_back(v);
        auto ref = cheeger_bitmask(g, core_list);
        REQUIRE(ref.has_value());
        CHECK(Rational(static_cast<std::int64_t>(ref->num),
                       static_cast<std::int64_t>(ref->den)) == r.ratio);
    }
    SUBCASE("hyperbolic window ratios are far from zero") {
        auto r = cheeger_lower(gen_tessellation(4, 5, 3), 8);
        CHECK(r.ratio == Rational(5, 2));
        CHECK(r.witness.size() == 6);
        auto r37 = cheeger_lower(gen_tessellation(3, 7, 3), 8);
        CHECK(r37.ratio == Rational(21, 8));
        CHECK(r37.witness.size() == 8);
    }
    SUBCASE("windows without core vertices are rejected") {
        try {
            cheeger_lower(gen_grid(3), 4);
            FAIL("expected a throw");
        } catch (const MapError& e) {
            CHECK(e.code() == Err::CheegerNonpositive);
        }
    }
    SUBCASE("budget exhaustion throws unless truncation is requested") {
        PlanarMap g = gen_grid(9);
        try {
            cheeger_lower(g, 12, 100);
            FAIL("expected a throw");
        } catch (const MapError& e) {
            CHECK(e.code() == Err::SearchBudgetExceeded);
        }
        auto r = cheeger_lower(g, 12, 100, true);
        CHECK_FALSE(r.exhaustive);
        CHECK(r.ratio.num > 0);
    }
    SUBCASE("deterministic across repeat runs") {
        auto a = cheeger_lower(gen_tessellation(4, 5, 3), 6);
        auto b = cheeger_lower(gen_tessellation(4, 5, 3), 6);
        CHECK(a.ratio == b.ratio);
        CHECK(a.witness == b.witness);
        CHECK(a.states == b.states);
    }
}

TEST_CASE("isoperimetric profile") {
    SUBCASE("grid points trade boundary for area quadratically") {
        PlanarMap g = gen_grid(11);
        IsoProfile p = iso_profile(g, 9);
        REQUIRE(!p.points.empty());
        for (std::size_t i = 0; i + 1 < p.points.size(); ++i) {
            CHECK(p.points[i].b < p.points[i + 1].b);
            CHECK(p.points[i].s < p.points[i + 1].s);
        }
        // a 3x3 block (9 vertices) has boundary 12 in a big grid
        CHECK(p.bound_for(12) == 9);
        CHECK(p.bound_for(7) >= 2);
        CHECK(p.bound_for(0) == -1);
        for (const auto& pt : p.points) {
            CHECK(static_cast<int>(pt.witness.size()) == pt.s);
            CHECK(static_cast<int>(vertex_boundary(g, pt.witness).size()) == pt.b);
        }
    }
    SUBCASE("hyperbolic windows never reach grid-like areas") {
        IsoProfile p = iso_profile(gen_tessellation(4, 5, 3), 8);
        for (const auto& pt : p.points) CHECK(pt.b >= 2 * pt.s);
    }
}

TEST_CASE("boundary walks") {
    PlanarMap g = gen_grid(9);
    SUBCASE("interior singleton") {
        std::vector<VertexIx> s{g.index_of(gid(9, 4, 4))};
        auto w = boundary_walk(g, s);
        CHECK(w.length == 8);
        CHECK(w.boundary_hits == 4);
        CHECK(w.distinct_boundary_vertices == 4);
        CHECK(w.max_subwalk <= 3);  // < max codegree 4
        CHECK(w.subwalks_facial);
        CHECK(w.walk.size() == static_cast<std::size_t>(w.length));
    }
    SUBCASE("2x2 interior block") {
        // S plus pendants has 12 edges and one bounded face (the center
        // square), so the outer walk doubles 8 pendant edges plus 4 square
        // edges: 20 steps
        auto s = block_vertices(g, 9, 4, 4, 1);
        auto w = boundary_walk(g, s);
        CHECK(w.length == 20);
        CHECK(w.boundary_hits == 8);
        CHECK(w.distinct_boundary_vertices == 8);
        CHECK(w.max_subwalk < 4);
        CHECK(w.subwalks_facial);
    }
    SUBCASE("heptagonal window singleton") {
        PlanarMap m = gen_tessellation(3, 7, 3);
        auto rd = core_radius(m);
        VertexIx deep = -1;
        for (VertexIx v = 0; v < m.vertex_count(); ++v)
            if (rd[v] >= 2) { deep = v; break; }
        REQUIRE(deep >= 0);
        auto w = boundary_walk(m, {deep});
        CHECK(w.length == 14);  // degree 7, each face contributes two steps
        CHECK(w.boundary_hits == 7);
        CHECK(w.max_subwalk < 3);  // < max codegree 3
        CHECK(w.subwalks_facial);
    }
    SUBCASE("boundary hit count dominates length over codegree") {
        PlanarMap m = gen_tessellation(4, 5, 3);
        Bitset core = core_vertices(m);
        std::vector<std::vector<VertexIx>> subsets;
        for_each_connected_subset(m, core, 4, 1'000'000,
                                  [&](const std::vector<VertexIx>& s, int) {
                                      if (subsets.size() < 60) subsets.push_back(s);
                                  });
        int cod = max_codegree_strict(m);
        for (const auto& s : subsets) {
            auto w = boundary_walk(m, s);
            CHECK(w.boundary_hits * cod > w.length);
            CHECK(w.max_subwalk < cod);
            CHECK(w.subwalks_facial);
        }
    }
}

TEST_CASE("reduction to connected parts") {
    PlanarMap g = gen_grid(11);
    Rational c(4, 9);  // grid: |∂S| >= 4 sqrt(|S|) >= (4/9)|S| up to 9x9 blocks

    SUBCASE("two far apart singletons") {
        std::vector<VertexIx> s{g.index_of(gid(11, 3, 3)), g.index_of(gid(11, 8, 8))};
        auto rep = reduction_check(g, {s}, c);
        REQUIRE(rep.size() == 1);
        CHECK(rep[0].holds);
        CHECK(rep[0].part_sizes == std::vector<int>{1, 1});
        CHECK(rep[0].part_boundaries == std::vector<int>{4, 4});
        CHECK(rep[0].boundary == 8);
    }
    SUBCASE("a connected subset is its own single part") {
        auto s = block_vertices(g, 11, 4, 4, 1);
        auto rep = reduction_check(g, {s}, c);
        REQUIRE(rep.size() == 1);
        CHECK(rep[0].holds);
        CHECK(rep[0].part_sizes == std::vector<int>{4});
        CHECK(rep[0].boundary == 8);
    }
    SUBCASE("adjacent blocks share boundary but the inequality still holds") {
        auto a = block_vertices(g, 11, 2, 2, 1);
        auto b = block_vertices(g, 11, 2, 5, 1);  // two rows apart, shared boundary
        std::vector<VertexIx> s = a;
        s.insert(s.end(), b.begin(), b.end());
        auto rep = reduction_check(g, {s}, c);
        REQUIRE(rep.size() == 1);
        CHECK(rep[0].holds);
        CHECK(rep[0].part_sizes.size() == 2);
        CHECK(rep[0].boundary < 16);  // the gap row is counted once, not twice
    }
}
