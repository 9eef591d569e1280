#include "mgmask/clipio.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <string_view>

#include "byteio.hpp"
#include "mgmask/error.hpp"

namespace mgmask {
namespace {

void check_dims(std::uint32_t t, std::uint32_t h, std::uint32_t w, std::uint32_t c) {
  if (t == 0 || h == 0 || w == 0 || (c != 1 && c != 3)) {
    throw Error(ErrorCode::kInvalidDims, "T=" + std::to_string(t) + " H=" + std::to_string(h) +
                                             " W=" + std::to_string(w) +
                                             " C=" + std::to_string(c));
  }
}

std::size_t volume(std::uint32_t t, std::uint32_t h, std::uint32_t w, std::uint32_t c) {
  return static_cast<std::size_t>(t) * h * w * c;
}

std::string_view as_text(std::span<const std::uint8_t> b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

bool parse_uint(std::string_view s, std::uint32_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

enum class Chroma { k420, kMono };

}  // namespace

Clip::Clip(std::uint32_t frames, std::uint32_t height, std::uint32_t width,
           std::uint32_t channels)
    : frames_(frames), height_(height), width_(width), channels_(channels) {
  check_dims(frames, height, width, channels);
  data_.assign(volume(frames, height, width, channels), 0);
}

Clip::Clip(std::uint32_t frames, std::uint32_t height, std::uint32_t width,
           std::uint32_t channels, std::vector<std::uint8_t> data)
    : frames_(frames), height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  check_dims(frames, height, width, channels);
  const auto expected = volume(frames, height, width, channels);
  if (data_.size() != expected) {
    throw Error(ErrorCode::kTruncatedPayload, "expected " + std::to_string(expected) +
                                                  ", got " + std::to_string(data_.size()));
  }
}

Clip parse_rvc(std::span<const std::uint8_t> bytes) {
  if (!detail::has_magic(bytes, "RVC1")) throw Error(ErrorCode::kBadMagic, "not an RVC1 file");
  if (bytes.size() < kRvcHeaderSize) {
    throw Error(ErrorCode::kTruncatedPayload, "header needs " + std::to_string(kRvcHeaderSize) +
                                                  " bytes, got " + std::to_string(bytes.size()));
  }
  const auto t = detail::load_u32le(bytes, 4);
  const auto h = detail::load_u32le(bytes, 8);
  const auto w = detail::load_u32le(bytes, 12);
  const auto c = detail::load_u32le(bytes, 16);
  check_dims(t, h, w, c);
  const auto payload = bytes.subspan(kRvcHeaderSize);
  const auto expected = volume(t, h, w, c);
  if (payload.size() != expected) {
    throw Error(ErrorCode::kTruncatedPayload, "expected " + std::to_string(expected) +
                                                  ", got " + std::to_string(payload.size()));
  }
  return Clip(t, h, w, c, std::vector<std::uint8_t>(payload.begin(), payload.end()));
}

std::vector<std::uint8_t> write_rvc(const Clip& clip) {
  std::vector<std::uint8_t> out;
  out.reserve(kRvcHeaderSize + clip.data().size());
  detail::put_str(out, "RVC1");
  detail::put_u32le(out, clip.frames());
  detail::put_u32le(out, clip.height());
  detail::put_u32le(out, clip.width());
  detail::put_u32le(out, clip.channels());
  out.insert(out.end(), clip.data().begin(), clip.data().end());
  return out;
}

Clip parse_y4m(std::span<const std::uint8_t> bytes) {
  const std::string_view text = as_text(bytes);
  constexpr std::string_view kMagic = "YUV4MPEG2";
  if (!text.starts_with(kMagic) ||
      (text.size() > kMagic.size() && text[kMagic.size()] != ' ' && text[kMagic.size()] != '\n')) {
    throw Error(ErrorCode::kBadMagic, "not a YUV4MPEG2 stream");
  }
  const auto eol = text.find('\n');
  if (eol == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedHeader, "stream header is not newline-terminated");
  }

  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Chroma chroma = Chroma::k420;  // YUV4MPEG2 default when no C tag is present
  std::string_view params = text.substr(kMagic.size(), eol - kMagic.size());
  while (!params.empty()) {
    const auto start = params.find_first_not_of(' ');
    if (start == std::string_view::npos) break;
    params.remove_prefix(start);
    const auto end = std::min(params.find(' '), params.size());
    const std::string_view token = params.substr(0, end);
    params.remove_prefix(end);
    const std::string_view value = token.substr(1);
    switch (token[0]) {
      case 'W':
        if (!parse_uint(value, width)) throw Error(ErrorCode::kMalformedHeader, "bad width");
        break;
      case 'H':
        if (!parse_uint(value, height)) throw Error(ErrorCode::kMalformedHeader, "bad height");
        break;
      case 'C':
        if (value == "mono") {
          chroma = Chroma::kMono;
        } else if (value == "420" || value == "420jpeg" || value == "420paldv" ||
                   value == "420mpeg2") {
          chroma = Chroma::k420;
        } else {
          throw Error(ErrorCode::kUnsupportedColorSpace, "C" + std::string(value));
        }
        break;
      default:  // F, I, A, X: irrelevant to sample layout
        break;
    }
  }
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kMalformedHeader, "missing or zero W/H");
  }

  const std::size_t luma = static_cast<std::size_t>(width) * height;
  const std::size_t chroma_bytes =
      chroma == Chroma::kMono
          ? 0
          : 2 * ((static_cast<std::size_t>(width) + 1) / 2) * ((static_cast<std::size_t>(height) + 1) / 2);

  std::vector<std::uint8_t> data;
  std::uint32_t frames = 0;
  std::size_t pos = eol + 1;
  while (pos < text.size()) {
    const auto line_end = text.find('\n', pos);
    if (line_end == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedFrameHeader,
                  "frame " + std::to_string(frames) + " header is not newline-terminated");
    }
    const std::string_view line = text.substr(pos, line_end - pos);
    if (!line.starts_with("FRAME") || (line.size() > 5 && line[5] != ' ')) {
      throw Error(ErrorCode::kMalformedFrameHeader,
                  "frame " + std::to_string(frames) + " lacks FRAME marker");
    }
    pos = line_end + 1;
    if (text.size() - pos < luma + chroma_bytes) {
      throw Error(ErrorCode::kTruncatedFrame,
                  "frame " + std::to_string(frames) + " needs " +
                      std::to_string(luma + chroma_bytes) + " bytes, " +
                      std::to_string(text.size() - pos) + " remain");
    }
    data.insert(data.end(), bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                bytes.begin() + static_cast<std::ptrdiff_t>(pos + luma));
    pos += luma + chroma_bytes;
    ++frames;
  }
  if (frames == 0) throw Error(ErrorCode::kInvalidDims, "stream contains no frames");
  return Clip(frames, height, width, 1, std::move(data));
}

Clip to_luma(const Clip& clip) {
  if (clip.channels() == 1) return clip;
  const auto in = clip.data();
  std::vector<std::uint8_t> out(in.size() / 3);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t r = in[3 * i];
    const std::uint32_t g = in[3 * i + 1];
    const std::uint32_t b = in[3 * i + 2];
    // Exact half-up rounding of the decimal weights, no floating point.
    out[i] = static_cast<std::uint8_t>(std::min<std::uint32_t>((299 * r + 587 * g + 114 * b + 500) / 1000, 255));
  }
  return Clip(clip.frames(), clip.height(), clip.width(), 1, std::move(out));
}

std::vector<std::uint8_t> write_ppm_frame(const Clip& clip, std::size_t frame_index) {
  if (frame_index >= clip.frames()) {
    throw Error(ErrorCode::kIndexOutOfRange, "frame " + std::to_string(frame_index) + " of " +
                                                 std::to_string(clip.frames()));
  }
  std::vector<std::uint8_t> out;
  const std::string header = std::string(clip.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(clip.width()) + " " + std::to_string(clip.height()) +
                             "\n255\n";
  out.reserve(header.size() + clip.frame_size());
  detail::put_str(out, header);
  const auto f = clip.frame(frame_index);
  out.insert(out.end(), f.begin(), f.end());
  return out;
}

}  // namespace mgmask
