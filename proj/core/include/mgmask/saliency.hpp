#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mgmask/clipio.hpp"
#include "mgmask/maskgen.hpp"
#include "mgmask/motionfield.hpp"
#include "mgmask/tokengrid.hpp"

namespace mgmask {

// Half-open pixel rectangle [r0, r1) x [c0, c1).
struct PixelRect {
  std::uint32_t r0 = 0, c0 = 0, r1 = 0, c1 = 0;
  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

struct BoxAnnotation {
  std::vector<std::vector<PixelRect>> frames;  // one list per frame, possibly empty
};

// Mean block magnitude inside boxes over mean magnitude outside, frames 1..T-1.
// A block is inside when the centre of its 8x8 footprint lies in any box of its
// frame. Returns +inf when every outside block is motionless.
double saliency_score(const MotionField& motion, const BoxAnnotation& boxes);

// Fraction of the top-(1-q) tokens by slab-aggregated motion magnitude that the
// mask covers. The top set holds N - floor(q N) tokens (at least one), ranked by
// magnitude with ties in raster order.
double mask_motion_coverage(const Mask3D& mask, const MotionGuide& guide, double q);
double mask_motion_coverage(const Mask3D& mask, const MotionField& motion, const GridSpec& spec,
                            double q);

struct Reconstruction {
  Clip clip;
  double mse = 0.0;              // squared 8-bit units, masked samples only
  std::size_t masked_samples = 0;
  std::size_t mean_filled_tokens = 0;  // masked in every slab, filled with the visible mean
  bool fallback_fill = false;    // nothing visible: 128 fill
};

// Fills each masked token from the same cell of the nearest slab that shows it
// (ties to the earlier slab); cells masked in every slab get the rounded
// per-channel mean of all visible samples.
Reconstruction temporal_copy_reconstruct(const Clip& clip, const Mask3D& mask,
                                         const GridSpec& spec);

}  // namespace mgmask
