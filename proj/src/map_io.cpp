#include "coarseplane/map_io.hpp"

#include <fstream>
#include <sstream>

namespace coarseplane {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Err::BadFormat, what); }

const ordered_json& field(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
    return *it;
}

int int_field(const ordered_json& j) {
    if (!j.is_number_integer()) bad("expected an integer");
    return j.get<int>();
}

} // namespace

MapSpec parse_spec(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        bad(std::string("invalid json: ") + e.what());
    }
    if (!j.is_object()) bad("top level must be an object");
    if (field(j, "format") != "planar-map-v1") bad("format must be \"planar-map-v1\"");

    MapSpec spec;
    const auto& verts = field(j, "vertices");
    if (!verts.is_array()) bad("\"vertices\" must be an array");
    for (const auto& jv : verts) {
        if (!jv.is_object()) bad("vertex entries must be objects");
        MapSpecVertex v;
        v.id = int_field(field(jv, "id"));
        const auto& nbrs = field(jv, "nbrs");
        if (!nbrs.is_array()) bad("\"nbrs\" must be an array");
        for (const auto& w : nbrs) v.nbrs.push_back(int_field(w));
        spec.vertices.push_back(std::move(v));
    }
    const auto& rim = field(j, "rim");
    if (!rim.is_array()) bad("\"rim\" must be an array");
    for (const auto& r : rim) spec.rim.push_back(int_field(r));

    if (auto it = j.find("outer_face_dart"); it != j.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != 2) bad("\"outer_face_dart\" must be [a,b]");
        spec.outer_face_dart = {int_field((*it)[0]), int_field((*it)[1])};
    }
    if (auto it = j.find("meta"); it != j.end()) {
        if (!it->is_object()) bad("\"meta\" must be an object");
        spec.meta = *it;
    }
    return spec;
}

std::string serialize_spec(const MapSpec& spec) {
    ordered_json j;
    j["format"] = "planar-map-v1";
    auto verts = ordered_json::array();
    for (const auto& v : spec.vertices) {
        ordered_json jv;
        jv["id"] = v.id;
        jv["nbrs"] = v.nbrs;
        verts.push_back(std::move(jv));
    }
    j["vertices"] = std::move(verts);
    j["rim"] = spec.rim;
    if (spec.outer_face_dart)
        j["outer_face_dart"] = {spec.outer_face_dart->first, spec.outer_face_dart->second};
    j["meta"] = spec.meta;
    return j.dump() + "\n";
}

MapSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

void save_spec(const MapSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot write " + path);
    out << serialize_spec(spec);
}

std::string digest64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) { out[i] = hex[h & 0xf]; h >>= 4; }
    return out;
}

} // namespace coarseplane
