#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarseplane/isoperimetry.hpp"
#include "coarseplane/lii.hpp"
#include "coarseplane/metric.hpp"
#include "coarseplane/planar_map.hpp"
#include "coarseplane/rational.hpp"

namespace coarseplane {

struct AnalysisCaps {
    int size_cap = 8;
    std::uint64_t state_budget = 10'000'000;
    std::uint64_t geodesic_cap = 1'000'000;
    int delta_exact_limit = 350;   // above this vertex count delta is sampled
    int delta_trials = 2000;
    std::uint64_t seed = 0;
};

// Window experiments can falsify asymptotic claims but never prove them, so
// positive results only ever speak for the certified core at this scale.
enum class Verdict { Certified, Refused, HypothesisFailed, Advisory };
const char* verdict_name(Verdict v);

struct ImplicationResult {
    Verdict verdict = Verdict::Advisory;
    std::vector<std::string> notes;
};

struct HullSummary {
    int run = 0;
    int skipped = 0;        // faces whose hull could not be taken (caps, rim)
    int certified = 0;      // traces whose every shrink step was certified
    int max_terminal = 0;   // longest terminal cycle
    int max_steps = 0;
};

struct AnalysisReport {
    std::string digest;          // of the serialized input map
    DegreeStats degrees;
    int codegree = 0;            // max bounded-face length
    std::string delta_scope;     // "certified" | "advisory"
    DeltaResult delta;
    std::vector<VertexId> delta_witness_ids;     // x, y, z, p
    CheegerResult cheeger;
    std::vector<VertexId> cheeger_witness_ids;
    IsoProfile profile;
    HullSummary hulls;
    Rational k_hat;              // max faces/length over hull cycles
    int k_hat_cycles = 0;
    std::vector<std::string> notes;   // window-level remarks
    ImplicationResult hyperbolicity;    // expansion + bounded codegree => thin triangles
    ImplicationResult bounded_codegree; // thin triangles + finite profile => bounded codegree
    ImplicationResult non_amenability;  // thin triangles + bounded codegree => expansion

    nlohmann::ordered_json to_json() const;   // schema report-v1, stable field order
};

// The three one-way implications between non-amenability, bounded codegree,
// and hyperbolicity, run as finite checks on one window.
ImplicationResult check_implication_1(const PlanarMap& map, const AnalysisCaps& caps = {});
ImplicationResult check_implication_2(const PlanarMap& map, const AnalysisCaps& caps = {});
ImplicationResult check_implication_3(const PlanarMap& map, const AnalysisCaps& caps = {});

// Full report; shared measurements (delta, hulls, elimination) are computed
// once.  Deterministic in (map bytes, caps, seed).
AnalysisReport analyze(const PlanarMap& map, const AnalysisCaps& caps = {});

} // namespace coarseplane
