#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "coarseplane/planar_map.hpp"

namespace coarseplane {

struct GeodesicPath {
    std::vector<VertexIx> vertices;
    int length = 0;
    bool certified = false;   // both endpoints core-certified for this distance
};

struct GeodeticCheck {
    bool geodetic = true;
    // First pair (canonical cycle order) where both arcs exceed the distance.
    std::optional<std::pair<VertexIx, VertexIx>> witness;
};

struct DeltaOptions {
    enum class Mode { exact, sampled };
    Mode mode = Mode::exact;
    std::uint64_t seed = 0;
    int trials = 2000;
    std::uint64_t geodesic_cap = 1'000'000;     // per certified pair, exact mode
    std::uint64_t apsp_entry_cap = 20'000'000;  // n^2 guard for the cached rows
};

struct DeltaWitness {
    VertexIx x = -1, y = -1, z = -1;  // triangle corners
    VertexIx p = -1;                  // point on side (x,y) realizing delta
};

struct DeltaResult {
    int delta = 0;
    bool exact = true;
    std::int64_t certified_pairs = 0;
    std::int64_t triples = 0;         // triples inspected (exact: all certified)
    std::optional<DeltaWitness> witness;
};

// Per-source BFS rows, -1 marks unreachable.  warm_all fills every row in
// parallel; afterwards row() is safe from any thread.  Lazy row() use and a
// concurrent warm_all must not be mixed.
class DistanceOracle {
public:
    explicit DistanceOracle(const PlanarMap& map);
    const std::vector<int>& row(VertexIx s) const;
    std::vector<int> bfs_row(VertexIx s) const;   // uncached
    int dist(VertexIx u, VertexIx v) const { return row(u)[v]; }
    void warm_all();

private:
    const PlanarMap& map_;
    mutable std::vector<std::unique_ptr<std::vector<int>>> rows_;
    mutable std::mutex mu_;
};

int distance(const PlanarMap& map, VertexIx x, VertexIx y);  // Disconnected on failure

// Distance to the nearest rim vertex; kInfDist everywhere when the rim is
// empty (the whole map is then certified).
std::vector<int> core_radius(const PlanarMap& map);

inline bool pair_certified(int d, int rd_x, int rd_y) {
    return d >= 0 && d < (rd_x < rd_y ? rd_x : rd_y);
}

// Saturating count of x-y geodesics via the predecessor DAG.
std::uint64_t count_geodesics(const PlanarMap& map, VertexIx x, VertexIx y);

// All x-y geodesics in lexicographic vertex-sequence order; CapExceeded
// (carrying the DAG-counted total) when there are more than cap.
std::vector<GeodesicPath> enumerate_geodesics(const PlanarMap& map, VertexIx x, VertexIx y,
                                              std::uint64_t cap = 1'000'000);

GeodeticCheck is_geodetic_cycle(const PlanarMap& map, const std::vector<VertexIx>& cycle);

// Smallest integer delta such that every geodesic triangle over certified
// triples is delta-thin, all geodesic choices considered.  Sampled mode
// gives a lower bound, deterministic in (seed, trials).
DeltaResult thin_triangle_delta(const PlanarMap& map, const DeltaOptions& opts = {});

} // namespace coarseplane
