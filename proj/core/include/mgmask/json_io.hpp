#pragma once

#include <string>
#include <string_view>

#include "mgmask/saliency.hpp"
#include "mgmask/tokengrid.hpp"

namespace mgmask {

// {"frames": [[[r0, c0, r1, c1], ...], ...]}; throws MalformedJson.
BoxAnnotation parse_box_annotation(std::string_view text);
std::string box_annotation_to_json(const BoxAnnotation& boxes);

// [{"slab", "x", "y", "w", "h", "added": [[row, col], ...], "removed": [...]}, ...]
std::string boxtrack_to_json(const BoxTrack& track);

}  // namespace mgmask
