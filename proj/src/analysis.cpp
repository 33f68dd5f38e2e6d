#include "coarseplane/analysis.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "coarseplane/check.hpp"
#include "coarseplane/errors.hpp"
#include "coarseplane/hull.hpp"
#include "coarseplane/map_io.hpp"
#include "coarseplane/parallel.hpp"
#include "coarseplane/region.hpp"

namespace coarseplane {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Refused: return "refused";
        case Verdict::HypothesisFailed: return "hypothesis-failed";
        case Verdict::Advisory: return "advisory";
    }
    return "?";
}

namespace {

std::vector<VertexIx> canonical_cycle(std::vector<VertexIx> cycle) {
    auto mn = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), mn, cycle.end());
    if (cycle.size() > 2 && cycle.back() < cycle[1]) {
        std::reverse(cycle.begin() + 1, cycle.end());
    }
    return cycle;
}

std::pair<DeltaResult, std::string> measure_delta(const PlanarMap& map, const AnalysisCaps& caps) {
    DeltaOptions opt;
    opt.geodesic_cap = caps.geodesic_cap;
    if (map.vertex_count() <= caps.delta_exact_limit) {
        opt.mode = DeltaOptions::Mode::exact;
    } else {
        opt.mode = DeltaOptions::Mode::sampled;
        opt.seed = caps.seed;
        opt.trials = caps.delta_trials;
    }
    DeltaResult res = thin_triangle_delta(map, opt);
    std::string scope = res.exact && res.certified_pairs > 0 ? "certified" : "advisory";
    return {std::move(res), std::move(scope)};
}

// Re-window onto the vertices at rim distance >= depth (largest component);
// those at exactly depth become the new rim.  Empty when nothing is left.
std::optional<PlanarMap> peel_window(const PlanarMap& map, int depth) {
    if (!map.rim_set().any()) return std::nullopt;
    auto rd = core_radius(map);
    const int n = map.vertex_count();
    Bitset kept(n);
    bool any = false;
    for (VertexIx v = 0; v < n; ++v)
        if (rd[v] >= depth) {
            kept.set(v);
            any = true;
        }
    if (!any) return std::nullopt;

    Bitset comp(n), seen(n);
    for (VertexIx r = 0; r < n; ++r) {
        if (!kept.test(r) || seen.test(r)) continue;
        Bitset cur(n);
        std::vector<VertexIx> stack{r};
        cur.set(r);
        seen.set(r);
        while (!stack.empty()) {
            VertexIx v = stack.back();
            stack.pop_back();
            for (DartId d : map.rotation(v)) {
                VertexIx w = map.target(d);
                if (kept.test(w) && !seen.test(w)) {
                    seen.set(w);
                    cur.set(w);
                    stack.push_back(w);
                }
            }
        }
        if (cur.count() > comp.count()) comp = cur;
    }

    Bitset hedges(map.edge_count());
    for (VertexIx v : comp.to_vector())
        for (DartId d : map.rotation(v))
            if (comp.test(map.target(d))) hedges.set(PlanarMap::edge_of(d));
    if (!hedges.any()) return std::nullopt;

    Bitset shadow = region_of_edge_cut(map, hedges);
    std::pair<VertexId, VertexId> hint{-1, -1};
    for (VertexIx v = 0; v < n && hint.first < 0; ++v) {
        if (!comp.test(v)) continue;
        for (DartId d : map.rotation(v)) {
            if (!hedges.test(PlanarMap::edge_of(d))) continue;
            if (!shadow.test(map.face_of(d))) {
                hint = {map.id_of(v), map.id_of(map.target(d))};
                break;
            }
        }
    }
    if (hint.first < 0) return std::nullopt;

    MapSpec spec;
    for (VertexIx v = 0; v < n; ++v) {
        if (!comp.test(v)) continue;
        MapSpecVertex rec;
        rec.id = map.id_of(v);
        for (DartId d : map.rotation(v))
            if (comp.test(map.target(d))) rec.nbrs.push_back(map.id_of(map.target(d)));
        spec.vertices.push_back(std::move(rec));
        if (rd[v] == depth) spec.rim.push_back(map.id_of(v));
    }
    spec.outer_face_dart = hint;
    spec.meta = {{"family", "peeled"}, {"depth", depth}};
    try {
        return build_map(std::move(spec));
    } catch (const MapError&) {
        return std::nullopt;
    }
}

struct Measurements {
    Measurements(const PlanarMap& m, const AnalysisCaps& c) : map(m), caps(c) {}

    const PlanarMap& map;
    AnalysisCaps caps;

    std::optional<std::pair<DeltaResult, std::string>> delta_;
    std::optional<std::vector<HullTrace>> hulls_;
    int hulls_skipped = 0;
    std::optional<EliminationResult> elim_;
    std::optional<std::pair<Rational, int>> khat_;

    const std::pair<DeltaResult, std::string>& delta() {
        if (!delta_) delta_ = measure_delta(map, caps);
        return *delta_;
    }

    const EliminationResult& elim() {
        if (!elim_) elim_ = eliminate_decorations(map);
        return *elim_;
    }

    // Hull traces for every bounded face whose walk avoids the rim; faces the
    // procedure cannot handle (caps, degenerate walks) are counted, not hidden.
    const std::vector<HullTrace>& hulls() {
        if (hulls_) return *hulls_;
        std::vector<FaceId> eligible;
        for (const auto& f : map.faces()) {
            if (!f.bounded) continue;
            bool ok = true;
            for (DartId d : f.walk)
                if (map.is_rim(map.origin(d))) ok = false;
            if (ok) eligible.push_back(f.id);
        }
        auto traces = parallel_map<HullTrace>(static_cast<int>(eligible.size()), [&](int i) {
            try {
                return geodetic_hull(map, eligible[i], caps.geodesic_cap);
            } catch (const MapError& e) {
                switch (e.code()) {
                    case Err::FaceWalkNotCycle:
                    case Err::CapExceeded:
                    case Err::EmptySideClass:
                    case Err::HullLeavesCore:
                    case Err::SearchBudgetExceeded:
                        return HullTrace{};   // face stays -1: skipped
                    default:
                        throw;
                }
            }
        });
        hulls_.emplace();
        for (auto& t : traces) {
            if (t.face < 0)
                ++hulls_skipped;
            else
                hulls_->push_back(std::move(t));
        }
        return *hulls_;
    }

    // k  = max bounded-faces/length over distinct hull cycles whose closed
    // region stays off the rim; defaults to 1 when no cycle qualifies.
    const std::pair<Rational, int>& k_hat() {
        if (khat_) return *khat_;
        std::set<std::vector<VertexIx>> dedup;
        for (const auto& t : hulls())
            for (const auto& c : t.cycles) dedup.insert(canonical_cycle(c));
        std::vector<std::vector<VertexIx>> usable;
        for (const auto& c : dedup) {
            try {
                CycleRegion region = bounded_side(map, c);
                bool ok = true;
                for (VertexIx v : region.closed_vertices.to_vector())
                    if (map.is_rim(v)) ok = false;
                if (ok) usable.push_back(c);
            } catch (const MapError&) {
            }
        }
        if (usable.empty()) {
            khat_ = {Rational::of(1), 0};
        } else {
            FacesInsideRatio fir = faces_inside_ratio(map, usable);
            Rational k = fir.max_ratio;
            if (!(Rational::of(0) < k)) k = Rational::of(1);
            khat_ = {k, static_cast<int>(usable.size())};
        }
        return *khat_;
    }
};

ImplicationResult implication_1(Measurements& m) {
    ImplicationResult out;
    const EliminationResult* elim = nullptr;
    try {
        elim = &m.elim();
    } catch (const MapError& e) {
        if (e.code() != Err::EverythingIsADecoration) throw;
        out.verdict = Verdict::Advisory;
        out.notes.push_back("no non-rim structure survives decoration elimination");
        return out;
    }
    if (!elim->eliminated.empty())
        out.notes.push_back(std::to_string(elim->eliminated.size()) + " decorations eliminated in " +
                            std::to_string(elim->passes) + " passes");
    try {
        CertificateReport cert = hyperbolicity_certificate(elim->map, m.caps.size_cap,
                                                           m.caps.geodesic_cap, m.caps.state_budget);
        int bad = 0;
        std::string worst;
        for (const auto& row : cert.rows)
            if (!row.ok) {
                ++bad;
                if (worst.empty())
                    worst = row.origin + ": " + std::to_string(row.faces) + " faces inside a " +
                            std::to_string(row.length) + "-cycle";
            }
        out.notes.push_back("c' = " + cert.c_prime.str() + " at cap " +
                            std::to_string(cert.size_cap) + ", coefficient " +
                            cert.coefficient.str() + ", " + std::to_string(cert.rows.size()) +
                            " cycles sampled");
        if (cert.certified) {
            out.verdict = Verdict::Certified;
        } else {
            out.verdict = Verdict::Refused;
            out.notes.push_back("face-count bound violated on " + std::to_string(bad) +
                                " cycles; first: " + worst);
        }
    } catch (const MapError& e) {
        if (e.code() != Err::CheegerNonpositive) throw;
        out.verdict = Verdict::Advisory;
        out.notes.push_back("expansion unmeasurable: no core subsets at rim distance 2");
    }
    return out;
}

ImplicationResult implication_2(Measurements& m) {
    ImplicationResult out;
    const auto& [dfull, scope] = m.delta();
    out.notes.push_back("delta " + std::to_string(dfull.delta) + " (" + scope +
                        (dfull.exact ? ", exact)" : ", sampled lower bound)"));

    // scale probe: a thin-triangle constant that keeps growing as the window
    // widens is the signature of a non-hyperbolic ambient graph
    if (auto peeled = peel_window(m.map, 2)) {
        auto [dp, scope_p] = measure_delta(*peeled, m.caps);
        if (dfull.certified_pairs > 0 && dp.certified_pairs > 0) {
            if (dfull.delta > dp.delta) {
                out.notes.push_back("delta grows with window scale (peeled " +
                                    std::to_string(dp.delta) + " vs full " +
                                    std::to_string(dfull.delta) + ")");
                out.verdict = Verdict::HypothesisFailed;
                return out;
            }
            out.notes.push_back("delta stable under peeling (" + std::to_string(dp.delta) + ")");
        } else {
            out.notes.push_back("scale probe inconclusive: no certified triples after peeling");
        }
    } else {
        out.notes.push_back("window too small for a scale probe");
    }

    // Bounded geodetic cycle check. For a certified terminal cycle C the three
    // equally spaced cycle vertices form a certified triple whose arc-sided
    // triangle is in the delta scope, so floor(|C|/6) <= delta must hold; the
    // unfloored form 6*delta can be off by up to 5 on cycles with 6 not
    // dividing |C| (a certified unit triangle coexists with delta = 0).
    const auto& hulls = m.hulls();
    const bool delta_certified = scope == "certified";
    int certified_hulls = 0, violations = 0, max_terminal = 0;
    std::string worst;
    for (const auto& t : hulls) {
        const int term = static_cast<int>(t.cycles.back().size());
        max_terminal = std::max(max_terminal, term);
        if (t.certified) {
            ++certified_hulls;
            if (term / 6 > dfull.delta) {
                if (worst.empty())
                    worst = "face " + std::to_string(t.face) + " terminal length " +
                            std::to_string(term);
                ++violations;
            }
        }
    }
    out.notes.push_back(std::to_string(hulls.size()) + " hulls (" + std::to_string(m.hulls_skipped) +
                        " skipped), " + std::to_string(certified_hulls) +
                        " certified, max terminal " + std::to_string(max_terminal) +
                        ", delta = " + std::to_string(dfull.delta));
    if (violations > 0 && delta_certified) {
        out.verdict = Verdict::Refused;
        out.notes.push_back("geodetic cycle breaks floor(|C|/6) <= delta: " + worst);
        return out;
    }
    if (delta_certified && certified_hulls > 0) {
        out.verdict = Verdict::Certified;
    } else {
        out.verdict = Verdict::Advisory;
        out.notes.push_back(delta_certified ? "no certified hull in this window"
                                            : "delta not certified in this window");
    }
    return out;
}

ImplicationResult implication_3(Measurements& m) {
    ImplicationResult out;
    auto cd = degree_stats(m.map).max_codegree;
    if (!cd) {
        out.verdict = Verdict::Certified;
        out.notes.push_back("no bounded faces; the face-count bound is vacuous");
        return out;
    }
    const auto& [khat, ncyc] = m.k_hat();
    if (ncyc == 0) out.notes.push_back("no usable hull cycles; k defaults to 1");
    const int dstar = *cd;
    const Rational bound =
        Rational::of(1) / (khat * Rational::of(static_cast<std::int64_t>(dstar) * dstar));
    out.notes.push_back("k = " + khat.str() + " over " + std::to_string(ncyc) +
                        " hull cycles, codegree " + std::to_string(dstar) + ", bound " +
                        bound.str());

    const auto& meta = m.map.source_spec().meta;
    const bool precondition_flagged =
        meta.is_object() && meta.contains("family") && meta["family"] == "composite";
    if (precondition_flagged)
        out.notes.push_back("attached copies leave the outer-face condition unverifiable at the "
                            "window edge; measurements advisory");

    Bitset core = core_vertices(m.map);
    std::int64_t checked = 0;
    int violations = 0, whole_components = 0;
    bool any_ratio = false;
    Rational min_ratio = Rational::of(0);
    int min_size = 0;
    auto res = for_each_connected_subset(
        m.map, core, m.caps.size_cap, m.caps.state_budget,
        [&](const std::vector<VertexIx>& sub, int boundary) {
            ++checked;
            if (boundary == 0) {   // swallowed a whole component: no ambient boundary
                ++whole_components;
                return;
            }
            Rational ratio(boundary, static_cast<std::int64_t>(sub.size()));
            if (!any_ratio || ratio < min_ratio) {
                any_ratio = true;
                min_ratio = ratio;
                min_size = static_cast<int>(sub.size());
            }
            if (ratio < bound) ++violations;
        });
    if (!res.completed)
        fail_counted(Err::SearchBudgetExceeded, "connected subset enumeration", res.states);
    if (checked == 0) {
        out.notes.push_back("no core subsets at rim distance 2; nothing to check");
        out.verdict = precondition_flagged ? Verdict::Advisory : Verdict::Certified;
        return out;
    }
    out.notes.push_back(std::to_string(checked) + " subsets at cap " +
                        std::to_string(m.caps.size_cap) + ", min ratio " +
                        (any_ratio ? min_ratio.str() + " at size " + std::to_string(min_size)
                                   : std::string("n/a")) +
                        ", " + std::to_string(violations) + " below the bound");
    if (whole_components > 0)
        out.notes.push_back(std::to_string(whole_components) +
                            " subsets exhausted a whole component and were not rated");

    // attached copies carry their own ratio witnesses beyond the subset cap
    if (meta.is_object() && meta.contains("copies"))
        for (const auto& copy : meta["copies"]) {
            Bitset s(m.map.vertex_count());
            for (VertexId id : copy["vertices"]) s.set(m.map.index_of(id));
            int boundary = static_cast<int>(vertex_boundary(m.map, s).count());
            Rational ratio(boundary, static_cast<std::int64_t>(s.count()));
            out.notes.push_back("copy n=" + copy["n"].dump() + ": |S| = " +
                                std::to_string(s.count()) + ", boundary " +
                                std::to_string(boundary) + ", ratio " + ratio.str());
            if (ratio < bound) ++violations;
        }

    if (precondition_flagged)
        out.verdict = Verdict::Advisory;
    else
        out.verdict = violations > 0 ? Verdict::Refused : Verdict::Certified;
    return out;
}

nlohmann::ordered_json rat_json(const Rational& r) {
    nlohmann::ordered_json j;
    j["num"] = r.num;
    j["den"] = r.den;
    return j;
}

nlohmann::ordered_json implication_json(const ImplicationResult& r) {
    nlohmann::ordered_json j;
    j["verdict"] = verdict_name(r.verdict);
    j["notes"] = r.notes;
    return j;
}

} // namespace

ImplicationResult check_implication_1(const PlanarMap& map, const AnalysisCaps& caps) {
    Measurements m(map, caps);
    return implication_1(m);
}

ImplicationResult check_implication_2(const PlanarMap& map, const AnalysisCaps& caps) {
    Measurements m(map, caps);
    return implication_2(m);
}

ImplicationResult check_implication_3(const PlanarMap& map, const AnalysisCaps& caps) {
    Measurements m(map, caps);
    return implication_3(m);
}

AnalysisReport analyze(const PlanarMap& map, const AnalysisCaps& caps) {
    Measurements m(map, caps);
    AnalysisReport rep;
    rep.digest = digest64(serialize_spec(map.source_spec()));
    rep.degrees = degree_stats(map);
    rep.codegree = rep.degrees.max_codegree.value_or(0);

    const auto& [d, scope] = m.delta();
    rep.delta = d;
    rep.delta_scope = scope;
    if (d.witness) {
        rep.delta_witness_ids = {map.id_of(d.witness->x), map.id_of(d.witness->y),
                                 map.id_of(d.witness->z), map.id_of(d.witness->p)};
    }

    try {
        rep.cheeger = cheeger_lower(map, caps.size_cap, caps.state_budget);
        for (VertexIx v : rep.cheeger.witness) rep.cheeger_witness_ids.push_back(map.id_of(v));
        rep.profile = iso_profile(map, caps.size_cap, caps.state_budget);
    } catch (const MapError& e) {
        if (e.code() != Err::CheegerNonpositive) throw;
        rep.notes.push_back("no core subsets at rim distance 2; expansion fields empty");
    }

    const auto& hulls = m.hulls();
    rep.hulls.run = static_cast<int>(hulls.size());
    rep.hulls.skipped = m.hulls_skipped;
    for (const auto& t : hulls) {
        rep.hulls.max_terminal =
            std::max(rep.hulls.max_terminal, static_cast<int>(t.cycles.back().size()));
        rep.hulls.max_steps = std::max(rep.hulls.max_steps, static_cast<int>(t.steps.size()));
        if (t.certified) ++rep.hulls.certified;
    }
    const auto& [khat, ncyc] = m.k_hat();
    rep.k_hat = khat;
    rep.k_hat_cycles = ncyc;

    rep.hyperbolicity = implication_1(m);
    rep.bounded_codegree = implication_2(m);
    rep.non_amenability = implication_3(m);
    return rep;
}

nlohmann::ordered_json AnalysisReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "report-v1";
    j["digest"] = digest;

    nlohmann::ordered_json deg;
    deg["max_degree"] = degrees.max_degree;
    deg["codegree"] = codegree;
    nlohmann::ordered_json dh = nlohmann::ordered_json::object();
    for (const auto& [k, v] : degrees.degree_histogram) dh[std::to_string(k)] = v;
    deg["degree_histogram"] = dh;
    nlohmann::ordered_json ch = nlohmann::ordered_json::object();
    for (const auto& [k, v] : degrees.codegree_histogram) ch[std::to_string(k)] = v;
    deg["codegree_histogram"] = ch;
    j["degrees"] = deg;

    nlohmann::ordered_json dj;
    dj["value"] = delta.delta;
    dj["scope"] = delta_scope;
    dj["exact"] = delta.exact;
    dj["certified_pairs"] = delta.certified_pairs;
    dj["triples"] = delta.triples;
    dj["witness"] = delta_witness_ids;
    j["delta"] = dj;

    nlohmann::ordered_json cj;
    cj["ratio"] = rat_json(cheeger.ratio);
    cj["disconnected_bound"] = rat_json(cheeger.disconnected_bound);
    cj["cap"] = cheeger.size_cap;
    cj["exhaustive"] = cheeger.exhaustive;
    cj["witness"] = cheeger_witness_ids;
    j["cheeger"] = cj;

    nlohmann::ordered_json pj = nlohmann::ordered_json::array();
    for (const auto& p : profile.points) {
        nlohmann::ordered_json pt;
        pt["boundary"] = p.b;
        pt["size"] = p.s;
        pj.push_back(pt);
    }
    j["profile"] = pj;

    nlohmann::ordered_json hj;
    hj["run"] = hulls.run;
    hj["skipped"] = hulls.skipped;
    hj["certified"] = hulls.certified;
    hj["max_terminal"] = hulls.max_terminal;
    hj["max_steps"] = hulls.max_steps;
    j["hulls"] = hj;

    nlohmann::ordered_json kj = rat_json(k_hat);
    kj["cycles"] = k_hat_cycles;
    j["k_hat"] = kj;

    nlohmann::ordered_json imps;
    imps["hyperbolicity"] = implication_json(hyperbolicity);
    imps["bounded_codegree"] = implication_json(bounded_codegree);
    imps["non_amenability"] = implication_json(non_amenability);
    j["implications"] = imps;
    j["notes"] = notes;
    return j;
}

} // namespace coarseplane
