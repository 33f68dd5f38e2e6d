#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coarseplane/analysis.hpp"
#include "coarseplane/errors.hpp"
#include "coarseplane/export.hpp"
#include "coarseplane/generators.hpp"
#include "coarseplane/hull.hpp"
#include "coarseplane/isoperimetry.hpp"
#include "coarseplane/map_io.hpp"

using namespace coarseplane;

namespace {

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Err::BadFormat, "cannot open " + path + " for writing");
    out << bytes;
    if (!out.good()) fail(Err::BadFormat, "write failed for " + path);
}

void emit(const std::string& path, const std::string& bytes) {
    if (path.empty())
        std::cout << bytes;
    else
        write_file(path, bytes);
}

PlanarMap load(const std::string& path) { return build_map(load_spec(path)); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse geometry of planar maps: generators and window analyses"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a window of a known family");
    std::string family, gen_out;
    int g_n = 0, g_p = 0, g_q = 0, g_r = 0, g_levels = 0, g_width = 0, g_a = 0, g_count = 0;
    std::vector<int> g_faces;
    std::uint64_t g_seed = 0;
    gen->add_option("family", family,
                    "grid | tessellation | g1 | g2 | dyadic | dyadic_square | composite")
        ->required();
    gen->add_option("--n", g_n, "side / copies / spoke length");
    gen->add_option("--p", g_p, "face length");
    gen->add_option("--q", g_q, "vertex degree");
    gen->add_option("--r", g_r, "ball radius");
    gen->add_option("--levels", g_levels, "dyadic levels");
    gen->add_option("--width", g_width, "dyadic base width");
    gen->add_option("--a", g_a, "dyadic square side");
    gen->add_option("--count", g_count, "number of decorated faces (seeded pick)");
    gen->add_option("--faces", g_faces, "explicit face ids to decorate");
    gen->add_option("--seed", g_seed, "rng seed (default 0)");
    gen->add_option("-o,--output", gen_out, "output map file")->required();

    // analyze
    auto* an = app.add_subcommand("analyze", "full window report (report-v1)");
    std::string an_in, an_out;
    AnalysisCaps caps;
    an->add_option("-i,--input", an_in, "input map file")->required();
    an->add_option("-o,--output", an_out, "output report file")->required();
    an->add_option("--size-cap", caps.size_cap, "connected subset size cap");
    an->add_option("--state-budget", caps.state_budget, "subset enumeration budget");
    an->add_option("--geodesic-cap", caps.geodesic_cap, "geodesic enumeration cap");
    an->add_option("--delta-exact-limit", caps.delta_exact_limit,
                   "vertex count above which delta is sampled");
    an->add_option("--delta-trials", caps.delta_trials, "sampled delta trials");
    an->add_option("--seed", caps.seed, "rng seed (default 0)");

    // hull
    auto* hu = app.add_subcommand("hull", "geodetic hull trace of one face");
    std::string hu_in, hu_out;
    int hu_face = -1;
    std::uint64_t hu_cap = 1'000'000;
    hu->add_option("-i,--input", hu_in, "input map file")->required();
    hu->add_option("--face", hu_face, "bounded face id")->required();
    hu->add_option("--geodesic-cap", hu_cap, "geodesic enumeration cap");
    hu->add_option("-o,--output", hu_out, "output trace file")->required();

    // profile
    auto* pr = app.add_subcommand("profile", "isoperimetric profile points");
    std::string pr_in, pr_out;
    int pr_cap = 8;
    std::uint64_t pr_budget = 10'000'000;
    pr->add_option("-i,--input", pr_in, "input map file")->required();
    pr->add_option("--cap", pr_cap, "connected subset size cap");
    pr->add_option("--state-budget", pr_budget, "subset enumeration budget");
    pr->add_option("-o,--output", pr_out, "output file (default stdout)");

    // export
    auto* ex = app.add_subcommand("export", "render to dot or svg");
    std::string ex_in, ex_out, ex_fmt;
    ex->add_option("-i,--input", ex_in, "input map file")->required();
    ex->add_option("--format", ex_fmt, "dot | svg")->required();
    ex->add_option("-o,--output", ex_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            GeneratorSpec gs;
            gs.family = family;
            gs.seed = g_seed;
            auto put = [&](const CLI::Option* opt, const char* key, int value) {
                if (opt->count() > 0) gs.params[key] = value;
            };
            put(gen->get_option("--n"), "n", g_n);
            put(gen->get_option("--p"), "p", g_p);
            put(gen->get_option("--q"), "q", g_q);
            put(gen->get_option("--r"), "r", g_r);
            put(gen->get_option("--levels"), "levels", g_levels);
            put(gen->get_option("--width"), "width", g_width);
            put(gen->get_option("--a"), "a", g_a);
            put(gen->get_option("--count"), "count", g_count);
            if (gen->get_option("--faces")->count() > 0) gs.params["faces"] = g_faces;
            PlanarMap map = generate(gs);
            write_file(gen_out, serialize_spec(map.source_spec()));
        } else if (an->parsed()) {
            PlanarMap map = load(an_in);
            AnalysisReport rep = analyze(map, caps);
            write_file(an_out, rep.to_json().dump(2) + "\n");
        } else if (hu->parsed()) {
            PlanarMap map = load(hu_in);
            HullTrace trace = geodetic_hull(map, hu_face, hu_cap);
            write_file(hu_out, hull_trace_json(map, trace).dump(2) + "\n");
        } else if (pr->parsed()) {
            PlanarMap map = load(pr_in);
            IsoProfile prof = iso_profile(map, pr_cap, pr_budget);
            nlohmann::ordered_json j;
            j["cap"] = prof.size_cap;
            j["exhaustive"] = prof.exhaustive;
            nlohmann::ordered_json pts = nlohmann::ordered_json::array();
            for (const auto& p : prof.points) {
                nlohmann::ordered_json pt;
                pt["boundary"] = p.b;
                pt["size"] = p.s;
                nlohmann::ordered_json wit = nlohmann::ordered_json::array();
                for (VertexIx v : p.witness) wit.push_back(map.id_of(v));
                pt["witness"] = wit;
                pts.push_back(pt);
            }
            j["points"] = pts;
            emit(pr_out, j.dump(2) + "\n");
        } else if (ex->parsed()) {
            PlanarMap map = load(ex_in);
            if (ex_fmt == "dot")
                emit(ex_out, to_dot(map));
            else if (ex_fmt == "svg")
                emit(ex_out, to_svg(map));
            else
                fail(Err::BadFormat, "unknown format '" + ex_fmt + "'");
        }
    } catch (const MapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Err::CapExceeded || e.code() == Err::SearchBudgetExceeded ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
