#include "mgmask/json_io.hpp"

#include <nlohmann/json.hpp>

#include "mgmask/error.hpp"

namespace mgmask {
namespace {

using nlohmann::json;

json cells_json(const std::vector<TokenCell>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back({c.row, c.col});
  return out;
}

}  // namespace

BoxAnnotation parse_box_annotation(std::string_view text) {
  BoxAnnotation out;
  try {
    const json doc = json::parse(text);
    const auto& frames = doc.at("frames");
    if (!frames.is_array()) throw Error(ErrorCode::kMalformedJson, "\"frames\" is not an array");
    for (const auto& frame : frames) {
      auto& boxes = out.frames.emplace_back();
      for (const auto& b : frame) {
        if (!b.is_array() || b.size() != 4) {
          throw Error(ErrorCode::kMalformedJson, "box must be [r0, c0, r1, c1]");
        }
        const PixelRect rect{b[0].get<std::uint32_t>(), b[1].get<std::uint32_t>(),
                             b[2].get<std::uint32_t>(), b[3].get<std::uint32_t>()};
        if (rect.r1 <= rect.r0 || rect.c1 <= rect.c0) {
          throw Error(ErrorCode::kMalformedJson, "box has empty extent");
        }
        boxes.push_back(rect);
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
  return out;
}

std::string box_annotation_to_json(const BoxAnnotation& boxes) {
  json frames = json::array();
  for (const auto& frame : boxes.frames) {
    json list = json::array();
    for (const auto& b : frame) list.push_back({b.r0, b.c0, b.r1, b.c1});
    frames.push_back(std::move(list));
  }
  return json{{"frames", std::move(frames)}}.dump();
}

std::string boxtrack_to_json(const BoxTrack& track) {
  json out = json::array();
  for (std::size_t s = 0; s < track.slabs.size(); ++s) {
    const auto& b = track.slabs[s];
    out.push_back({{"slab", s},
                   {"x", b.x},
                   {"y", b.y},
                   {"w", b.w},
                   {"h", b.h},
                   {"added", cells_json(b.added)},
                   {"removed", cells_json(b.removed)}});
  }
  return out.dump(2) + "\n";
}

}  // namespace mgmask
