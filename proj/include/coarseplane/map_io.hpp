#pragma once

#include <string>
#include <string_view>

#include "coarseplane/planar_map.hpp"

namespace coarseplane {

// planar-map-v1: {"format":"planar-map-v1","vertices":[{"id":..,"nbrs":[..]},..],
//                 "rim":[..],"outer_face_dart":[a,b]?, "meta":{..}}
// Serialization is canonical (fixed key order, compact, trailing newline), so
// load followed by save reproduces a saved file byte for byte.

MapSpec parse_spec(const std::string& text);
std::string serialize_spec(const MapSpec& spec);

MapSpec load_spec(const std::string& path);
void save_spec(const MapSpec& spec, const std::string& path);

// FNV-1a, 16 hex digits.  Stable across platforms.
std::string digest64(std::string_view bytes);

} // namespace coarseplane
