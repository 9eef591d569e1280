#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mgmask/clipio.hpp"

namespace mgmask {

inline constexpr std::uint32_t kMotionBlock = 8;
inline constexpr int kDefaultSearchRadius = 7;

struct MotionVector {
  std::int16_t dx = 0;
  std::int16_t dy = 0;
  friend bool operator==(const MotionVector&, const MotionVector&) = default;
};

// Block-granularity motion map. Vector (dx, dy) at frame t means the block's
// content came from offset (-dx, -dy) in frame t-1. Frame 0 carries no motion.
class MotionField {
 public:
  MotionField() = default;
  MotionField(std::uint32_t frames, std::uint32_t block_rows, std::uint32_t block_cols);

  std::uint32_t frames() const noexcept { return frames_; }
  std::uint32_t block_rows() const noexcept { return block_rows_; }
  std::uint32_t block_cols() const noexcept { return block_cols_; }
  std::uint32_t pixel_height() const noexcept { return block_rows_ * kMotionBlock; }
  std::uint32_t pixel_width() const noexcept { return block_cols_ * kMotionBlock; }

  MotionVector at(std::size_t t, std::size_t br, std::size_t bc) const noexcept {
    return vectors_[(t * block_rows_ + br) * block_cols_ + bc];
  }
  MotionVector& at(std::size_t t, std::size_t br, std::size_t bc) noexcept {
    return vectors_[(t * block_rows_ + br) * block_cols_ + bc];
  }
  std::span<const MotionVector> vectors() const noexcept { return vectors_; }
  std::span<MotionVector> vectors() noexcept { return vectors_; }

  friend bool operator==(const MotionField&, const MotionField&) = default;

 private:
  std::uint32_t frames_ = 0;
  std::uint32_t block_rows_ = 0;
  std::uint32_t block_cols_ = 0;
  std::vector<MotionVector> vectors_;
};

// Per-pixel motion obtained by nearest-neighbour replication of block vectors.
class UpsampledField {
 public:
  UpsampledField(std::uint32_t frames, std::uint32_t height, std::uint32_t width);

  std::uint32_t frames() const noexcept { return frames_; }
  std::uint32_t height() const noexcept { return height_; }
  std::uint32_t width() const noexcept { return width_; }

  MotionVector at(std::size_t t, std::size_t r, std::size_t c) const noexcept {
    return vectors_[(t * height_ + r) * width_ + c];
  }
  MotionVector& at(std::size_t t, std::size_t r, std::size_t c) noexcept {
    return vectors_[(t * height_ + r) * width_ + c];
  }
  std::span<const MotionVector> vectors() const noexcept { return vectors_; }

 private:
  std::uint32_t frames_;
  std::uint32_t height_;
  std::uint32_t width_;
  std::vector<MotionVector> vectors_;
};

// Same-shape magnitude map, frame-major then row-major.
struct MagnitudeField {
  std::uint32_t frames = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<double> values;

  double at(std::size_t t, std::size_t r, std::size_t c) const noexcept {
    return values[(t * rows + r) * cols + c];
  }
};

// Exhaustive SAD block matching over [-radius, radius]^2 against frame t-1.
// Out-of-frame candidates are skipped. Ties go to the smallest |dx|+|dy|,
// then the smallest dy, then the smallest dx.
MotionField estimate_mv(const Clip& clip, int search_radius = kDefaultSearchRadius,
                        std::uint32_t block = kMotionBlock);

UpsampledField upsample_nearest(const MotionField& field, std::uint32_t height,
                                std::uint32_t width);

MagnitudeField magnitude(const MotionField& field);
MagnitudeField magnitude(const UpsampledField& field);

double mean_magnitude(const MotionField& field);

inline constexpr std::size_t kMvfHeaderSize = 16;

// "MVF1" + LE u32 T, Hb, Wb + (dx, dy) pairs of LE i16.
MotionField read_mvf(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_mvf(const MotionField& field);

}  // namespace mgmask
