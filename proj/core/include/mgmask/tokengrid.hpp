#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mgmask {

struct PatchSize {
  std::uint32_t t = 2;
  std::uint32_t h = 16;
  std::uint32_t w = 16;
  friend bool operator==(const PatchSize&, const PatchSize&) = default;
};

// Token lattice induced by a patch size over a T x H x W clip.
struct GridSpec {
  std::uint32_t slabs = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  PatchSize patch;

  std::size_t cells_per_slab() const noexcept { return static_cast<std::size_t>(rows) * cols; }
  std::size_t token_count() const noexcept { return cells_per_slab() * slabs; }
  std::size_t index(std::size_t slab, std::size_t row, std::size_t col) const noexcept {
    return (slab * rows + row) * cols + col;
  }
  std::uint32_t frames() const noexcept { return slabs * patch.t; }
  std::uint32_t height() const noexcept { return rows * patch.h; }
  std::uint32_t width() const noexcept { return cols * patch.w; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Throws NotDivisible naming the offending axis, or InvalidDims for zero extents.
GridSpec grid_from_clip(std::uint32_t frames, std::uint32_t height, std::uint32_t width,
                        PatchSize patch = {});

// Round-half-up of gamma * count.
std::size_t masked_count(double gamma, std::size_t count);

struct TokenCoord {
  std::uint32_t slab = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  friend bool operator==(const TokenCoord&, const TokenCoord&) = default;
};

// Half-open pixel region of one token.
struct PixelBox {
  std::uint32_t t0 = 0, t1 = 0;
  std::uint32_t r0 = 0, r1 = 0;
  std::uint32_t c0 = 0, c1 = 0;
  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

PixelBox token_to_pixel_box(const GridSpec& spec, std::uint32_t slab, std::uint32_t row,
                            std::uint32_t col);
TokenCoord pixel_to_token(const GridSpec& spec, std::uint32_t frame, std::uint32_t r,
                          std::uint32_t c);

// One bit per token, slab-major then row-major. `target_masked` is the
// count the mask was generated for; generators and the MSK1 codec keep
// popcount() == target_masked.
class Mask3D {
 public:
  Mask3D() = default;
  explicit Mask3D(const GridSpec& spec, std::size_t target_masked = 0);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t target_masked() const noexcept { return target_; }
  void set_target(std::size_t target) noexcept { target_ = target; }

  bool get(std::size_t index) const noexcept { return bits_[index] != 0; }
  bool get(std::size_t slab, std::size_t row, std::size_t col) const noexcept {
    return get(spec_.index(slab, row, col));
  }
  void set(std::size_t index, bool value) noexcept { bits_[index] = value ? 1 : 0; }
  void set(std::size_t slab, std::size_t row, std::size_t col, bool value) noexcept {
    set(spec_.index(slab, row, col), value);
  }

  std::size_t popcount() const noexcept;
  std::size_t slab_popcount(std::size_t slab) const noexcept;
  bool is_exact() const noexcept { return popcount() == target_; }

  friend bool operator==(const Mask3D&, const Mask3D&) = default;

 private:
  GridSpec spec_;
  std::size_t target_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct TokenSplit {
  std::vector<std::size_t> visible;
  std::vector<std::size_t> masked;
};

// Partition of [0, N) into ascending visible and masked token indices.
TokenSplit split(const GridSpec& spec, const Mask3D& mask);

struct TokenCell {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  friend bool operator==(const TokenCell&, const TokenCell&) = default;
};

// Rectangle in token units for one slab, with the cells exact-count
// correction added to or removed from it.
struct SlabBox {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t w = 1;
  std::int32_t h = 1;
  std::vector<TokenCell> added;
  std::vector<TokenCell> removed;
  // MGM: the motion-argmax cell the box is centred on; never removed by correction.
  std::optional<TokenCell> anchor;
};

struct BoxTrack {
  std::vector<SlabBox> slabs;
  // Zero-sum size jitter actually drawn, one entry per slab transition.
  std::vector<int> jitter_w;
  std::vector<int> jitter_h;
};

inline constexpr std::size_t kMskHeaderSize = 20;

// "MSK1" + LE u32 T', Ht, Wt, target + packed bits (LSB-first).
// The patch size is not stored; read_msk attaches `patch`.
std::vector<std::uint8_t> write_msk(const Mask3D& mask);
Mask3D read_msk(std::span<const std::uint8_t> bytes, PatchSize patch = {});

}  // namespace mgmask
