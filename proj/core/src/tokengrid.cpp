#include "mgmask/tokengrid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "byteio.hpp"
#include "mgmask/error.hpp"

namespace mgmask {

GridSpec grid_from_clip(std::uint32_t frames, std::uint32_t height, std::uint32_t width,
                        PatchSize patch) {
  if (patch.t == 0 || patch.h == 0 || patch.w == 0) {
    throw Error(ErrorCode::kInvalidDims, "patch extents must be >= 1");
  }
  if (frames % patch.t != 0) {
    throw Error(ErrorCode::kNotDivisible, "time: " + std::to_string(frames) + " % " +
                                              std::to_string(patch.t));
  }
  if (height % patch.h != 0) {
    throw Error(ErrorCode::kNotDivisible, "height: " + std::to_string(height) + " % " +
                                              std::to_string(patch.h));
  }
  if (width % patch.w != 0) {
    throw Error(ErrorCode::kNotDivisible, "width: " + std::to_string(width) + " % " +
                                              std::to_string(patch.w));
  }
  GridSpec spec{frames / patch.t, height / patch.h, width / patch.w, patch};
  if (spec.token_count() == 0) throw Error(ErrorCode::kInvalidDims, "empty token grid");
  return spec;
}

std::size_t masked_count(double gamma, std::size_t count) {
  return static_cast<std::size_t>(std::floor(gamma * static_cast<double>(count) + 0.5));
}

PixelBox token_to_pixel_box(const GridSpec& spec, std::uint32_t slab, std::uint32_t row,
                            std::uint32_t col) {
  if (slab >= spec.slabs || row >= spec.rows || col >= spec.cols) {
    throw Error(ErrorCode::kIndexOutOfRange, "token (" + std::to_string(slab) + "," +
                                                 std::to_string(row) + "," +
                                                 std::to_string(col) + ")");
  }
  const auto& p = spec.patch;
  return {slab * p.t, (slab + 1) * p.t, row * p.h, (row + 1) * p.h, col * p.w, (col + 1) * p.w};
}

TokenCoord pixel_to_token(const GridSpec& spec, std::uint32_t frame, std::uint32_t r,
                          std::uint32_t c) {
  if (frame >= spec.frames() || r >= spec.height() || c >= spec.width()) {
    throw Error(ErrorCode::kIndexOutOfRange, "pixel (" + std::to_string(frame) + "," +
                                                 std::to_string(r) + "," + std::to_string(c) +
                                                 ")");
  }
  return {frame / spec.patch.t, r / spec.patch.h, c / spec.patch.w};
}

Mask3D::Mask3D(const GridSpec& spec, std::size_t target_masked)
    : spec_(spec), target_(target_masked), bits_(spec.token_count(), 0) {}

std::size_t Mask3D::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::size_t Mask3D::slab_popcount(std::size_t slab) const noexcept {
  const auto n = spec_.cells_per_slab();
  const auto first = bits_.begin() + static_cast<std::ptrdiff_t>(slab * n);
  return static_cast<std::size_t>(
      std::count(first, first + static_cast<std::ptrdiff_t>(n), std::uint8_t{1}));
}

TokenSplit split(const GridSpec& spec, const Mask3D& mask) {
  if (!(mask.spec() == spec)) throw Error(ErrorCode::kSpecMismatch, "mask grid differs");
  TokenSplit out;
  const auto pop = mask.popcount();
  out.masked.reserve(pop);
  out.visible.reserve(spec.token_count() - pop);
  for (std::size_t i = 0; i < spec.token_count(); ++i) {
    (mask.get(i) ? out.masked : out.visible).push_back(i);
  }
  return out;
}

std::vector<std::uint8_t> write_msk(const Mask3D& mask) {
  const auto& spec = mask.spec();
  if (!mask.is_exact()) {
    throw Error(ErrorCode::kCountMismatch, "popcount " + std::to_string(mask.popcount()) +
                                               " != target " +
                                               std::to_string(mask.target_masked()));
  }
  std::vector<std::uint8_t> out;
  const std::size_t n = spec.token_count();
  out.reserve(kMskHeaderSize + (n + 7) / 8);
  detail::put_str(out, "MSK1");
  detail::put_u32le(out, spec.slabs);
  detail::put_u32le(out, spec.rows);
  detail::put_u32le(out, spec.cols);
  detail::put_u32le(out, static_cast<std::uint32_t>(mask.target_masked()));
  out.resize(kMskHeaderSize + (n + 7) / 8, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask.get(i)) out[kMskHeaderSize + i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  return out;
}

Mask3D read_msk(std::span<const std::uint8_t> bytes, PatchSize patch) {
  if (!detail::has_magic(bytes, "MSK1")) throw Error(ErrorCode::kBadMagic, "not an MSK1 file");
  if (bytes.size() < kMskHeaderSize) {
    throw Error(ErrorCode::kTruncatedPayload, "header needs " + std::to_string(kMskHeaderSize) +
                                                  " bytes, got " + std::to_string(bytes.size()));
  }
  GridSpec spec{detail::load_u32le(bytes, 4), detail::load_u32le(bytes, 8),
                detail::load_u32le(bytes, 12), patch};
  const std::size_t target = detail::load_u32le(bytes, 16);
  const std::size_t n = spec.token_count();
  if (n == 0) throw Error(ErrorCode::kInvalidDims, "empty token grid");
  if (target > n) {
    throw Error(ErrorCode::kTargetExceedsGrid,
                std::to_string(target) + " > " + std::to_string(n) + " tokens");
  }
  const auto payload = bytes.subspan(kMskHeaderSize);
  if (payload.size() != (n + 7) / 8) {
    throw Error(ErrorCode::kTruncatedPayload, "expected " + std::to_string((n + 7) / 8) +
                                                  ", got " + std::to_string(payload.size()));
  }
  if (n % 8 != 0 && (payload.back() >> (n % 8)) != 0) {
    throw Error(ErrorCode::kInvalidDims, "padding bits set past the last token");
  }
  Mask3D mask(spec, target);
  for (std::size_t i = 0; i < n; ++i) mask.set(i, ((payload[i / 8] >> (i % 8)) & 1u) != 0);
  if (!mask.is_exact()) {
    throw Error(ErrorCode::kCountMismatch, "popcount " + std::to_string(mask.popcount()) +
                                               " != target " + std::to_string(target));
  }
  return mask;
}

}  // namespace mgmask
