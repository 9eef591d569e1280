#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mgmask {

// Decoded raw video: frames x height x width x channels, 8-bit samples stored
// frame-major, row-major, channel-interleaved.
class Clip {
 public:
  Clip() = default;
  // Zero-filled clip. Throws InvalidDims when any extent is 0 or channels is not 1 or 3.
  Clip(std::uint32_t frames, std::uint32_t height, std::uint32_t width, std::uint32_t channels);
  // Adopts `data`; throws InvalidDims on bad extents and TruncatedPayload on a length mismatch.
  Clip(std::uint32_t frames, std::uint32_t height, std::uint32_t width, std::uint32_t channels,
       std::vector<std::uint8_t> data);

  std::uint32_t frames() const noexcept { return frames_; }
  std::uint32_t height() const noexcept { return height_; }
  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t channels() const noexcept { return channels_; }

  std::size_t frame_size() const noexcept {
    return static_cast<std::size_t>(height_) * width_ * channels_;
  }
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> frame(std::size_t t) const noexcept {
    return std::span<const std::uint8_t>(data_).subspan(t * frame_size(), frame_size());
  }
  std::span<std::uint8_t> frame(std::size_t t) noexcept {
    return std::span<std::uint8_t>(data_).subspan(t * frame_size(), frame_size());
  }

  std::uint8_t at(std::size_t t, std::size_t r, std::size_t c, std::size_t ch = 0) const noexcept {
    return data_[((t * height_ + r) * width_ + c) * channels_ + ch];
  }
  std::uint8_t& at(std::size_t t, std::size_t r, std::size_t c, std::size_t ch = 0) noexcept {
    return data_[((t * height_ + r) * width_ + c) * channels_ + ch];
  }

  friend bool operator==(const Clip&, const Clip&) = default;

 private:
  std::uint32_t frames_ = 0;
  std::uint32_t height_ = 0;
  std::uint32_t width_ = 0;
  std::uint32_t channels_ = 0;
  std::vector<std::uint8_t> data_;
};

inline constexpr std::size_t kRvcHeaderSize = 20;

// "RVC1" + LE u32 T, H, W, C + raw payload.
Clip parse_rvc(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_rvc(const Clip& clip);

// YUV4MPEG2 stream, 8-bit 4:2:0 or mono. Only the luma plane is kept.
Clip parse_y4m(std::span<const std::uint8_t> bytes);

// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B). Identity for single-channel clips.
Clip to_luma(const Clip& clip);

// Binary PGM (P5) for C=1, PPM (P6) for C=3.
std::vector<std::uint8_t> write_ppm_frame(const Clip& clip, std::size_t frame_index);

}  // namespace mgmask
