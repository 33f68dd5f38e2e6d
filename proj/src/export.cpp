#include "coarseplane/export.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace coarseplane {

namespace {

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::string to_dot(const PlanarMap& map) {
    std::string out = "graph coarsemap {\n  node [shape=circle];\n";
    for (VertexIx v = 0; v < map.vertex_count(); ++v) {
        out += "  v" + std::to_string(map.id_of(v));
        if (map.is_rim(v)) out += " [style=dashed]";
        out += ";\n";
    }
    for (DartId d = 0; d < map.dart_count(); ++d) {
        if (d > PlanarMap::twin(d)) continue;
        out += "  v" + std::to_string(map.id_of(map.origin(d))) + " -- v" +
               std::to_string(map.id_of(map.target(d))) + ";\n";
    }
    out += "}\n";
    return out;
}

std::string to_svg(const PlanarMap& map) {
    const int n = map.vertex_count();
    std::vector<double> x(n, 0.0), y(n, 0.0);
    std::vector<char> pinned(n, 0);

    // outer walk runs counterclockwise; keep that orientation on the circle
    std::vector<VertexIx> ring;
    for (DartId d : map.face(map.outer_face()).walk) {
        VertexIx v = map.origin(d);
        if (!pinned[v]) {
            pinned[v] = 1;
            ring.push_back(v);
        }
    }
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < ring.size(); ++i) {
        double a = 2.0 * pi * static_cast<double>(i) / static_cast<double>(ring.size());
        x[ring[i]] = std::cos(a);
        y[ring[i]] = std::sin(a);
    }

    std::vector<double> nx(n), ny(n);
    for (int it = 0; it < 5000; ++it) {
        double moved = 0.0;
        for (VertexIx v = 0; v < n; ++v) {
            if (pinned[v]) continue;
            double sx = 0.0, sy = 0.0;
            int deg = 0;
            for (DartId d : map.rotation(v)) {
                sx += x[map.target(d)];
                sy += y[map.target(d)];
                ++deg;
            }
            nx[v] = sx / deg;
            ny[v] = sy / deg;
            moved = std::max({moved, std::fabs(nx[v] - x[v]), std::fabs(ny[v] - y[v])});
        }
        for (VertexIx v = 0; v < n; ++v) {
            if (pinned[v]) continue;
            x[v] = nx[v];
            y[v] = ny[v];
        }
        if (moved < 1e-9) break;
    }

    const double size = 800.0, margin = 24.0, scale = (size - 2 * margin) / 2.0;
    auto px = [&](VertexIx v) { return fmt4(size / 2 + scale * x[v]); };
    auto py = [&](VertexIx v) { return fmt4(size / 2 - scale * y[v]); };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
                      "viewBox=\"0 0 800 800\">\n";
    out += "<g stroke=\"#555555\" stroke-width=\"0.75\">\n";
    for (DartId d = 0; d < map.dart_count(); ++d) {
        if (d > PlanarMap::twin(d)) continue;
        out += "<line x1=\"" + px(map.origin(d)) + "\" y1=\"" + py(map.origin(d)) + "\" x2=\"" +
               px(map.target(d)) + "\" y2=\"" + py(map.target(d)) + "\"/>\n";
    }
    out += "</g>\n<g>\n";
    for (VertexIx v = 0; v < n; ++v) {
        out += "<circle cx=\"" + px(v) + "\" cy=\"" + py(v) + "\" r=\"2\" fill=\"" +
               (map.is_rim(v) ? "#cc3333" : "#222222") + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace coarseplane
