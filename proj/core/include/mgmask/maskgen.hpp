#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mgmask/motionfield.hpp"
#include "mgmask/rng.hpp"
#include "mgmask/tokengrid.hpp"

namespace mgmask {

enum class Generator { kRandom, kTube, kBlock, kSmmSparse, kSmmDense, kMgmSparse, kMgmDense };

inline constexpr Generator kAllGenerators[] = {
    Generator::kRandom,    Generator::kTube,      Generator::kBlock,    Generator::kSmmSparse,
    Generator::kSmmDense,  Generator::kMgmSparse, Generator::kMgmDense,
};

std::string_view generator_name(Generator g) noexcept;
std::optional<Generator> parse_generator(std::string_view name) noexcept;
constexpr bool needs_motion(Generator g) noexcept {
  return g == Generator::kMgmSparse || g == Generator::kMgmDense;
}

struct MaskParams {
  double gamma = 0.75;
  int velocity_cap = 1;  // tokens per slab
  int jitter_cap = 1;    // tokens
  std::uint64_t seed = 0;
};

// Throws InvalidArgument unless 0 < gamma <= 1 and both caps are >= 0.
void validate(const MaskParams& params);

struct MaskStats {
  std::size_t target_masked = 0;
  std::size_t per_slab_quota = 0;
  // target_masked - slabs * per_slab_quota: rounding drift the global pass absorbs.
  long correction_residue = 0;
  std::size_t cells_added = 0;
  std::size_t cells_removed = 0;
  // The initial square did not fit and was clamped to the grid.
  bool block_clamped = false;
};

struct MaskResult {
  Mask3D mask;
  BoxTrack track;  // empty for random and tube
  MaskStats stats;
};

// Slab-aggregated motion derived once per (field, grid) and reused across seeds.
struct MotionGuide {
  GridSpec spec;
  // Per slab: pixel argmax of the slab-mean upsampled magnitude (lowest row, then column).
  std::vector<std::uint32_t> argmax_row;
  std::vector<std::uint32_t> argmax_col;
  // Per token (slab-major): mean of the slab's pixel saliency over the token footprint.
  std::vector<double> token_magnitude;
  // Per token: ordering key of token_magnitude within its slab, normalised by the
  // slab maximum so positive rescaling of the field cannot reorder tokens.
  std::vector<std::int64_t> token_key;

  TokenCell argmax_token(std::size_t slab) const;
};

// Throws MotionDimsMismatch unless the field covers exactly spec's frames and pixels.
MotionGuide prepare_motion_guide(const MotionField& motion, const GridSpec& spec);

MaskResult gen_random(const GridSpec& spec, const MaskParams& params);
MaskResult gen_tube(const GridSpec& spec, const MaskParams& params);
MaskResult gen_block(const GridSpec& spec, const MaskParams& params);
MaskResult gen_smm(const GridSpec& spec, const MaskParams& params, bool dense);
MaskResult gen_mgm(const GridSpec& spec, const MaskParams& params, const MotionGuide& guide,
                   bool dense);
MaskResult gen_mgm(const GridSpec& spec, const MaskParams& params, const MotionField& motion,
                   bool dense);

// Dispatch by name. `motion` is required for the MGM generators (MissingMotion otherwise).
MaskResult generate(Generator g, const GridSpec& spec, const MaskParams& params,
                    const MotionGuide* motion = nullptr);

// Brings one slab to exactly `count` masked cells. With a box, unmasked cells are
// filled ring by ring from the innermost outwards (in practice the ring just
// outside the box) and removed from the outermost ring inwards, each ring walked
// clockwise from the top-left; otherwise cells are drawn uniformly.
// The box's anchor cell, if any, is never removed.
void adjust_slab(Mask3D& mask, std::size_t slab, std::size_t count, SlabBox* box, Rng& rng);

// Returns a copy with popcount == target. The difference is spread one cell at a
// time over slabs round-robin from slab 0, then applied per slab via adjust_slab
// (box-anchored when `anchor` is given). Throws TargetExceedsGrid.
Mask3D correct_count(const Mask3D& mask, std::size_t target, BoxTrack* anchor, Rng& rng);

// Zero-sum jitter: +k/-k pairs with k cycling 0..cap, padded with a zero to
// `length`, then shuffled.
std::vector<int> zero_sum_jitter(std::size_t length, int cap, Rng& rng);

}  // namespace mgmask
