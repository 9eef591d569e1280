#include "mgmask/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mgmask/error.hpp"

namespace mgmask {

double saliency_score(const MotionField& motion, const BoxAnnotation& boxes) {
  if (boxes.frames.size() != motion.frames()) {
    throw Error(ErrorCode::kDimMismatch, std::to_string(boxes.frames.size()) +
                                             " annotated frames vs " +
                                             std::to_string(motion.frames()) + " motion frames");
  }
  const auto height = motion.pixel_height();
  const auto width = motion.pixel_width();
  for (const auto& frame : boxes.frames) {
    for (const auto& b : frame) {
      if (b.r1 <= b.r0 || b.c1 <= b.c0 || b.r1 > height || b.c1 > width) {
        throw Error(ErrorCode::kDimMismatch, "box outside a " + std::to_string(height) + "x" +
                                                 std::to_string(width) + " frame");
      }
    }
  }

  double inside_sum = 0.0;
  double outside_sum = 0.0;
  std::size_t inside_n = 0;
  std::size_t outside_n = 0;
  const auto mags = magnitude(motion);
  for (std::uint32_t t = 1; t < motion.frames(); ++t) {
    for (std::uint32_t br = 0; br < motion.block_rows(); ++br) {
      for (std::uint32_t bc = 0; bc < motion.block_cols(); ++bc) {
        const auto cy = br * kMotionBlock + kMotionBlock / 2;
        const auto cx = bc * kMotionBlock + kMotionBlock / 2;
        const bool inside = std::any_of(
            boxes.frames[t].begin(), boxes.frames[t].end(),
            [&](const PixelRect& b) { return cy >= b.r0 && cy < b.r1 && cx >= b.c0 && cx < b.c1; });
        const double m = mags.at(t, br, bc);
        if (inside) {
          inside_sum += m;
          ++inside_n;
        } else {
          outside_sum += m;
          ++outside_n;
        }
      }
    }
  }
  if (inside_n == 0) throw Error(ErrorCode::kNoInsideBlocks, "no block centre falls in a box");
  if (outside_n == 0) throw Error(ErrorCode::kNoOutsideBlocks, "boxes cover every block");
  const double inside_mean = inside_sum / static_cast<double>(inside_n);
  const double outside_mean = outside_sum / static_cast<double>(outside_n);
  if (outside_mean == 0.0) {
    return inside_mean == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                              : std::numeric_limits<double>::infinity();
  }
  return inside_mean / outside_mean;
}

double mask_motion_coverage(const Mask3D& mask, const MotionGuide& guide, double q) {
  if (!(mask.spec() == guide.spec)) {
    throw Error(ErrorCode::kDimMismatch, "mask and motion grids differ");
  }
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quantile must lie in [0, 1)");
  }
  const std::size_t n = guide.token_magnitude.size();
  const auto below = static_cast<std::size_t>(std::floor(q * static_cast<double>(n) + 1e-9));
  const std::size_t top = std::max<std::size_t>(1, n - std::min(below, n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& mag = guide.token_magnitude;
  std::stable_sort(order.begin(), order.end(),
                   [&mag](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  std::size_t covered = 0;
  for (std::size_t i = 0; i < top; ++i) covered += mask.get(order[i]) ? 1 : 0;
  return static_cast<double>(covered) / static_cast<double>(top);
}

double mask_motion_coverage(const Mask3D& mask, const MotionField& motion, const GridSpec& spec,
                            double q) {
  if (!(mask.spec() == spec)) throw Error(ErrorCode::kDimMismatch, "mask grid differs from spec");
  MotionGuide guide;
  try {
    guide = prepare_motion_guide(motion, spec);
  } catch (const Error& e) {
    throw Error(ErrorCode::kDimMismatch, e.what());
  }
  return mask_motion_coverage(mask, guide, q);
}

Reconstruction temporal_copy_reconstruct(const Clip& clip, const Mask3D& mask,
                                         const GridSpec& spec) {
  if (!(mask.spec() == spec) || clip.frames() != spec.frames() ||
      clip.height() != spec.height() || clip.width() != spec.width()) {
    throw Error(ErrorCode::kDimMismatch, "clip, mask and grid disagree");
  }
  const std::uint32_t channels = clip.channels();
  Reconstruction out{clip, 0.0, 0, 0, false};

  // Per-channel mean of every visible sample.
  std::vector<std::uint64_t> sums(channels, 0);
  std::uint64_t visible_pixels = 0;
  for (std::uint32_t s = 0; s < spec.slabs; ++s) {
    for (std::uint32_t r = 0; r < spec.rows; ++r) {
      for (std::uint32_t c = 0; c < spec.cols; ++c) {
        if (mask.get(s, r, c)) continue;
        const auto box = token_to_pixel_box(spec, s, r, c);
        for (auto t = box.t0; t < box.t1; ++t) {
          for (auto y = box.r0; y < box.r1; ++y) {
            for (auto x = box.c0; x < box.c1; ++x) {
              for (std::uint32_t ch = 0; ch < channels; ++ch) sums[ch] += clip.at(t, y, x, ch);
              ++visible_pixels;
            }
          }
        }
      }
    }
  }
  std::vector<std::uint8_t> fill(channels, 128);
  if (visible_pixels == 0) {
    out.fallback_fill = mask.popcount() > 0;
  } else {
    for (std::uint32_t ch = 0; ch < channels; ++ch) {
      fill[ch] = static_cast<std::uint8_t>((sums[ch] + visible_pixels / 2) / visible_pixels);
    }
  }

  double sq_err = 0.0;
  for (std::uint32_t s = 0; s < spec.slabs; ++s) {
    for (std::uint32_t r = 0; r < spec.rows; ++r) {
      for (std::uint32_t c = 0; c < spec.cols; ++c) {
        if (!mask.get(s, r, c)) continue;
        std::int64_t source = -1;
        for (std::uint32_t d = 1; d < spec.slabs && source < 0; ++d) {
          if (s >= d && !mask.get(s - d, r, c)) {
            source = s - d;
          } else if (s + d < spec.slabs && !mask.get(s + d, r, c)) {
            source = s + d;
          }
        }
        if (source < 0) ++out.mean_filled_tokens;
        const auto box = token_to_pixel_box(spec, s, r, c);
        for (auto t = box.t0; t < box.t1; ++t) {
          const auto src_t = source < 0 ? 0 : static_cast<std::uint32_t>(source) * spec.patch.t +
                                                  (t - box.t0);
          for (auto y = box.r0; y < box.r1; ++y) {
            for (auto x = box.c0; x < box.c1; ++x) {
              for (std::uint32_t ch = 0; ch < channels; ++ch) {
                const std::uint8_t value = source < 0 ? fill[ch] : clip.at(src_t, y, x, ch);
                const double diff = static_cast<double>(value) - clip.at(t, y, x, ch);
                sq_err += diff * diff;
                out.clip.at(t, y, x, ch) = value;
                ++out.masked_samples;
              }
            }
          }
        }
      }
    }
  }
  out.mse = out.masked_samples == 0 ? 0.0 : sq_err / static_cast<double>(out.masked_samples);
  return out;
}

}  // namespace mgmask
