#include "mgmask/maskgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mgmask/error.hpp"

namespace mgmask {
namespace {

constexpr double kKeyScale = 1e9;

std::int64_t relative_key(double value, double max) {
  if (max <= 0.0) return 0;
  return std::llround(value / max * kKeyScale);
}

struct Rect {
  std::int32_t x, y, w, h;
};

// Perimeter of `r` clockwise: top row from the second cell rightwards, down the
// right side, back along the bottom, up the left side, ending on the top-left
// corner. Every cell after the first touches its predecessor or the inside of
// the rectangle.
template <typename Fn>
void walk_ring(const Rect& r, Fn&& fn) {
  if (r.w <= 0 || r.h <= 0) return;
  if (r.h == 1) {
    for (std::int32_t c = r.x; c < r.x + r.w; ++c) fn(r.y, c);
    return;
  }
  if (r.w == 1) {
    for (std::int32_t y = r.y; y < r.y + r.h; ++y) fn(y, r.x);
    return;
  }
  const std::int32_t right = r.x + r.w - 1;
  const std::int32_t bottom = r.y + r.h - 1;
  for (std::int32_t c = r.x + 1; c <= right; ++c) fn(r.y, c);
  for (std::int32_t y = r.y + 1; y <= bottom; ++y) fn(y, right);
  for (std::int32_t c = right - 1; c >= r.x; --c) fn(bottom, c);
  for (std::int32_t y = bottom - 1; y >= r.y; --y) fn(y, r.x);
}

std::vector<std::pair<std::int32_t, std::int32_t>> ring_cells(const Rect& r) {
  std::vector<std::pair<std::int32_t, std::int32_t>> out;
  walk_ring(r, [&](std::int32_t y, std::int32_t x) { out.emplace_back(y, x); });
  return out;
}

Rect ring_rect(const SlabBox& box, std::int32_t k) {
  return {box.x - k, box.y - k, box.w + 2 * k, box.h + 2 * k};
}

// Picks `count` distinct cells of [0, n) uniformly (partial Fisher-Yates).
std::vector<std::size_t> draw_cells(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  count = std::min(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

// 4-connected components among the slab's masked cells.
std::size_t slab_components(const Mask3D& mask, std::size_t slab) {
  const auto& spec = mask.spec();
  const std::size_t n = spec.cells_per_slab();
  const std::size_t base = slab * n;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::size_t> stack;
  std::size_t components = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start] || !mask.get(base + start)) continue;
    ++components;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const std::size_t r = i / spec.cols;
      const std::size_t c = i % spec.cols;
      const auto visit = [&](std::size_t j) {
        if (!seen[j] && mask.get(base + j)) {
          seen[j] = 1;
          stack.push_back(j);
        }
      };
      if (r > 0) visit(i - spec.cols);
      if (r + 1 < spec.rows) visit(i + spec.cols);
      if (c > 0) visit(i - 1);
      if (c + 1 < spec.cols) visit(i + 1);
    }
  }
  return components;
}

void paint_box(Mask3D& mask, std::size_t slab, const SlabBox& box) {
  for (std::int32_t r = box.y; r < box.y + box.h; ++r) {
    for (std::int32_t c = box.x; c < box.x + box.w; ++c) {
      mask.set(slab, static_cast<std::size_t>(r), static_cast<std::size_t>(c), true);
    }
  }
}

// Per-slab deltas realising `target` from `counts`, one cell per slab per round
// starting at slab 0, skipping slabs that cannot move further.
std::vector<long> distribute(const std::vector<std::size_t>& counts, std::size_t cells_per_slab,
                             std::size_t target) {
  std::vector<long> delta(counts.size(), 0);
  const std::size_t current = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  long remaining = static_cast<long>(target) - static_cast<long>(current);
  const long step = remaining > 0 ? 1 : -1;
  while (remaining != 0) {
    bool moved = false;
    for (std::size_t s = 0; s < counts.size() && remaining != 0; ++s) {
      const long next = static_cast<long>(counts[s]) + delta[s] + step;
      if (next < 0 || next > static_cast<long>(cells_per_slab)) continue;
      delta[s] += step;
      remaining -= step;
      moved = true;
    }
    if (!moved) break;
  }
  return delta;
}

struct BoxSeed {
  std::int32_t side_w;
  std::int32_t side_h;
  std::int32_t x0;
  std::int32_t y0;
  bool clamped;
};

// Square of side round(sqrt(gamma * Ht * Wt)) at a uniform position; x is drawn before y.
BoxSeed init_box(const GridSpec& spec, const MaskParams& params, Rng& rng) {
  const double area = params.gamma * static_cast<double>(spec.cells_per_slab());
  const auto side = static_cast<std::int32_t>(std::floor(std::sqrt(area) + 0.5));
  const auto rows = static_cast<std::int32_t>(spec.rows);
  const auto cols = static_cast<std::int32_t>(spec.cols);
  BoxSeed seed{};
  seed.side_w = std::clamp(side, 1, cols);
  seed.side_h = std::clamp(side, 1, rows);
  seed.clamped = side > cols || side > rows;
  seed.x0 = static_cast<std::int32_t>(rng.uniform(0, cols - seed.side_w));
  seed.y0 = static_cast<std::int32_t>(rng.uniform(0, rows - seed.side_h));
  return seed;
}

struct Quotas {
  std::size_t slab;
  std::size_t total;
};

Quotas quotas(const GridSpec& spec, const MaskParams& params) {
  return {masked_count(params.gamma, spec.cells_per_slab()),
          masked_count(params.gamma, spec.token_count())};
}

MaskStats base_stats(const GridSpec& spec, const Quotas& q) {
  MaskStats st;
  st.target_masked = q.total;
  st.per_slab_quota = q.slab;
  st.correction_residue =
      static_cast<long>(q.total) - static_cast<long>(spec.slabs * q.slab);
  return st;
}

void record_drift(MaskStats& stats, std::size_t before, std::size_t target) {
  if (target >= before) {
    stats.cells_added += target - before;
  } else {
    stats.cells_removed += before - target;
  }
}

void tally(MaskStats& stats, const BoxTrack& track) {
  for (const auto& b : track.slabs) {
    stats.cells_added += b.added.size();
    stats.cells_removed += b.removed.size();
  }
}

// Shared tail of the box-based dense generators: paint, per-slab quota, global target.
MaskResult finish_dense(const GridSpec& spec, const Quotas& q, BoxTrack track, Rng& rng,
                        MaskStats stats) {
  Mask3D mask(spec, q.total);
  for (std::size_t s = 0; s < spec.slabs; ++s) paint_box(mask, s, track.slabs[s]);
  for (std::size_t s = 0; s < spec.slabs; ++s) adjust_slab(mask, s, q.slab, &track.slabs[s], rng);
  mask = correct_count(mask, q.total, &track, rng);
  tally(stats, track);
  return {std::move(mask), std::move(track), stats};
}

// Random-draw correction for scattered masks; logs into `track` when it has slabs.
Mask3D correct_scattered(Mask3D mask, std::size_t target, BoxTrack& track, Rng& rng) {
  const auto& spec = mask.spec();
  std::vector<std::size_t> counts(spec.slabs);
  for (std::size_t s = 0; s < spec.slabs; ++s) counts[s] = mask.slab_popcount(s);
  const auto delta = distribute(counts, spec.cells_per_slab(), target);
  for (std::size_t s = 0; s < spec.slabs; ++s) {
    if (delta[s] == 0) continue;
    const auto want = static_cast<std::size_t>(static_cast<long>(counts[s]) + delta[s]);
    const Mask3D before = mask;
    adjust_slab(mask, s, want, nullptr, rng);
    if (s < track.slabs.size()) {
      for (std::uint32_t r = 0; r < spec.rows; ++r) {
        for (std::uint32_t c = 0; c < spec.cols; ++c) {
          if (mask.get(s, r, c) && !before.get(s, r, c)) track.slabs[s].added.push_back({r, c});
          if (!mask.get(s, r, c) && before.get(s, r, c)) track.slabs[s].removed.push_back({r, c});
        }
      }
    }
  }
  mask.set_target(target);
  return mask;
}

}  // namespace

std::string_view generator_name(Generator g) noexcept {
  switch (g) {
    case Generator::kRandom: return "random";
    case Generator::kTube: return "tube";
    case Generator::kBlock: return "block";
    case Generator::kSmmSparse: return "smm-sparse";
    case Generator::kSmmDense: return "smm-dense";
    case Generator::kMgmSparse: return "mgm-sparse";
    case Generator::kMgmDense: return "mgm-dense";
  }
  return "unknown";
}

std::optional<Generator> parse_generator(std::string_view name) noexcept {
  for (const auto g : kAllGenerators) {
    if (generator_name(g) == name) return g;
  }
  return std::nullopt;
}

void validate(const MaskParams& params) {
  if (!(params.gamma > 0.0 && params.gamma <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in (0, 1], got " +
                                                 std::to_string(params.gamma));
  }
  if (params.velocity_cap < 0 || params.jitter_cap < 0) {
    throw Error(ErrorCode::kInvalidArgument, "velocity and jitter caps must be >= 0");
  }
}

TokenCell MotionGuide::argmax_token(std::size_t slab) const {
  return {argmax_row[slab] / spec.patch.h, argmax_col[slab] / spec.patch.w};
}

MotionGuide prepare_motion_guide(const MotionField& motion, const GridSpec& spec) {
  if (motion.frames() != spec.frames() || motion.pixel_height() != spec.height() ||
      motion.pixel_width() != spec.width()) {
    throw Error(ErrorCode::kMotionDimsMismatch,
                "field " + std::to_string(motion.frames()) + "x" +
                    std::to_string(motion.pixel_height()) + "x" +
                    std::to_string(motion.pixel_width()) + " vs clip " +
                    std::to_string(spec.frames()) + "x" + std::to_string(spec.height()) + "x" +
                    std::to_string(spec.width()));
  }
  const auto mags = magnitude(upsample_nearest(motion, spec.height(), spec.width()));
  const std::size_t H = spec.height();
  const std::size_t W = spec.width();
  const std::size_t t = spec.patch.t;

  MotionGuide guide;
  guide.spec = spec;
  guide.argmax_row.resize(spec.slabs);
  guide.argmax_col.resize(spec.slabs);
  guide.token_magnitude.assign(spec.token_count(), 0.0);
  guide.token_key.assign(spec.token_count(), 0);

  std::vector<double> saliency(H * W);
  for (std::size_t s = 0; s < spec.slabs; ++s) {
    std::fill(saliency.begin(), saliency.end(), 0.0);
    for (std::size_t f = s * t; f < (s + 1) * t; ++f) {
      const double* src = mags.values.data() + f * H * W;
      for (std::size_t i = 0; i < H * W; ++i) saliency[i] += src[i];
    }
    for (auto& v : saliency) v /= static_cast<double>(t);

    const double peak = *std::max_element(saliency.begin(), saliency.end());
    std::int64_t best = -1;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < H * W; ++i) {
      const auto key = relative_key(saliency[i], peak);
      if (key > best) {
        best = key;
        best_i = i;
      }
    }
    guide.argmax_row[s] = static_cast<std::uint32_t>(best_i / W);
    guide.argmax_col[s] = static_cast<std::uint32_t>(best_i % W);

    double token_peak = 0.0;
    const double footprint = static_cast<double>(spec.patch.h) * spec.patch.w;
    for (std::uint32_t r = 0; r < spec.rows; ++r) {
      for (std::uint32_t c = 0; c < spec.cols; ++c) {
        double sum = 0.0;
        for (std::size_t y = r * spec.patch.h; y < (r + 1) * spec.patch.h; ++y) {
          for (std::size_t x = c * spec.patch.w; x < (c + 1) * spec.patch.w; ++x) {
            sum += saliency[y * W + x];
          }
        }
        const double m = sum / footprint;
        guide.token_magnitude[spec.index(s, r, c)] = m;
        token_peak = std::max(token_peak, m);
      }
    }
    for (std::size_t i = 0; i < spec.cells_per_slab(); ++i) {
      const auto idx = s * spec.cells_per_slab() + i;
      guide.token_key[idx] = relative_key(guide.token_magnitude[idx], token_peak);
    }
  }
  return guide;
}

std::vector<int> zero_sum_jitter(std::size_t length, int cap, Rng& rng) {
  std::vector<int> out;
  out.reserve(length);
  const int period = std::max(cap, 0) + 1;
  for (std::size_t i = 0; i < length / 2; ++i) {
    const int k = static_cast<int>((i + 1) % static_cast<std::size_t>(period));
    out.push_back(k);
    out.push_back(-k);
  }
  if (out.size() < length) out.push_back(0);
  rng.shuffle(std::span<int>(out));
  return out;
}

void adjust_slab(Mask3D& mask, std::size_t slab, std::size_t count, SlabBox* box, Rng& rng) {
  const auto& spec = mask.spec();
  const auto rows = static_cast<std::int32_t>(spec.rows);
  const auto cols = static_cast<std::int32_t>(spec.cols);
  if (count > spec.cells_per_slab()) {
    throw Error(ErrorCode::kTargetExceedsGrid, std::to_string(count) + " cells in a slab of " +
                                                   std::to_string(spec.cells_per_slab()));
  }
  std::size_t have = mask.slab_popcount(slab);
  if (have == count) return;

  const auto is_anchor = [&](std::int32_t r, std::int32_t c) {
    return box != nullptr && box->anchor &&
           box->anchor->row == static_cast<std::uint32_t>(r) &&
           box->anchor->col == static_cast<std::uint32_t>(c);
  };
  const auto log = [&](bool added, std::int32_t r, std::int32_t c) {
    if (box == nullptr) return;
    const TokenCell cell{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)};
    (added ? box->added : box->removed).push_back(cell);
  };
  const auto inside = [&](std::int32_t r, std::int32_t c) {
    return r >= 0 && c >= 0 && r < rows && c < cols;
  };

  if (box == nullptr) {
    const bool adding = have < count;
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < spec.cells_per_slab(); ++i) {
      if (mask.get(slab * spec.cells_per_slab() + i) != adding) eligible.push_back(i);
    }
    const std::size_t need = adding ? count - have : have - count;
    for (const auto pick : draw_cells(eligible.size(), need, rng)) {
      mask.set(slab * spec.cells_per_slab() + eligible[pick], adding);
    }
    return;
  }

  const std::int32_t max_ring = std::max(rows, cols);
  const std::int32_t min_ring = -(std::min(box->w, box->h) - 1) / 2;
  if (have < count) {
    // Cells earlier removed from inside the box come back first, innermost ring
    // first; a fully painted box starts at the ring just outside it.
    for (std::int32_t k = min_ring; k <= max_ring && have < count; ++k) {
      for (const auto& [r, c] : ring_cells(ring_rect(*box, k))) {
        if (have == count) break;
        if (!inside(r, c) || mask.get(slab, r, c)) continue;
        mask.set(slab, r, c, true);
        log(true, r, c);
        ++have;
      }
    }
  } else {
    // Outermost ring first, each ring walked backwards. A connected slab stays
    // connected: cut cells are skipped and picked up by a later pass.
    std::vector<std::pair<std::int32_t, std::int32_t>> order;
    for (std::int32_t k = max_ring; k >= min_ring; --k) {
      auto cells = ring_cells(ring_rect(*box, k));
      std::reverse(cells.begin(), cells.end());
      for (const auto& cell : cells) {
        if (inside(cell.first, cell.second)) order.push_back(cell);
      }
    }
    const bool keep_connected = slab_components(mask, slab) <= 1;
    bool progress = true;
    while (have > count && progress) {
      progress = false;
      for (const auto& [r, c] : order) {
        if (have == count) break;
        if (!mask.get(slab, r, c) || is_anchor(r, c)) continue;
        mask.set(slab, r, c, false);
        if (keep_connected && slab_components(mask, slab) > 1) {
          mask.set(slab, r, c, true);
          continue;
        }
        log(false, r, c);
        --have;
        progress = true;
      }
    }
  }
  // Rings reach every cell of the grid, so only the anchor itself can remain.
  if (have > count && box->anchor) {
    mask.set(slab, box->anchor->row, box->anchor->col, false);
    log(false, static_cast<std::int32_t>(box->anchor->row),
        static_cast<std::int32_t>(box->anchor->col));
  }
}

Mask3D correct_count(const Mask3D& mask, std::size_t target, BoxTrack* anchor, Rng& rng) {
  const auto& spec = mask.spec();
  if (target > spec.token_count()) {
    throw Error(ErrorCode::kTargetExceedsGrid, std::to_string(target) + " > " +
                                                   std::to_string(spec.token_count()) +
                                                   " tokens");
  }
  if (anchor != nullptr && anchor->slabs.size() != spec.slabs) {
    throw Error(ErrorCode::kSpecMismatch, "box track covers " +
                                              std::to_string(anchor->slabs.size()) +
                                              " slabs, grid has " + std::to_string(spec.slabs));
  }
  Mask3D out = mask;
  out.set_target(target);
  if (mask.popcount() == target) return out;

  std::vector<std::size_t> counts(spec.slabs);
  for (std::size_t s = 0; s < spec.slabs; ++s) counts[s] = out.slab_popcount(s);
  const auto delta = distribute(counts, spec.cells_per_slab(), target);
  for (std::size_t s = 0; s < spec.slabs; ++s) {
    if (delta[s] == 0) continue;
    const auto want = static_cast<std::size_t>(static_cast<long>(counts[s]) + delta[s]);
    adjust_slab(out, s, want, anchor != nullptr ? &anchor->slabs[s] : nullptr, rng);
  }
  return out;
}

MaskResult gen_random(const GridSpec& spec, const MaskParams& params) {
  validate(params);
  Rng rng(params.seed);
  const auto q = quotas(spec, params);
  Mask3D mask(spec, q.total);
  for (std::size_t s = 0; s < spec.slabs; ++s) {
    for (const auto cell : draw_cells(spec.cells_per_slab(), q.slab, rng)) {
      mask.set(s * spec.cells_per_slab() + cell, true);
    }
  }
  MaskStats stats = base_stats(spec, q);
  BoxTrack none;
  record_drift(stats, mask.popcount(), q.total);
  mask = correct_scattered(std::move(mask), q.total, none, rng);
  return {std::move(mask), {}, stats};
}

MaskResult gen_tube(const GridSpec& spec, const MaskParams& params) {
  validate(params);
  Rng rng(params.seed);
  const auto q = quotas(spec, params);
  Mask3D mask(spec, q.total);
  const auto plane = draw_cells(spec.cells_per_slab(), q.slab, rng);
  for (std::size_t s = 0; s < spec.slabs; ++s) {
    for (const auto cell : plane) mask.set(s * spec.cells_per_slab() + cell, true);
  }
  MaskStats stats = base_stats(spec, q);
  BoxTrack none;
  record_drift(stats, mask.popcount(), q.total);
  mask = correct_scattered(std::move(mask), q.total, none, rng);
  return {std::move(mask), {}, stats};
}

MaskResult gen_block(const GridSpec& spec, const MaskParams& params) {
  validate(params);
  Rng rng(params.seed);
  const auto q = quotas(spec, params);
  const auto seed = init_box(spec, params, rng);
  BoxTrack track;
  track.slabs.resize(spec.slabs);
  for (auto& b : track.slabs) {
    b.x = seed.x0;
    b.y = seed.y0;
    b.w = seed.side_w;
    b.h = seed.side_h;
  }
  MaskStats stats = base_stats(spec, q);
  stats.block_clamped = seed.clamped;
  return finish_dense(spec, q, std::move(track), rng, stats);
}

MaskResult gen_smm(const GridSpec& spec, const MaskParams& params, bool dense) {
  validate(params);
  Rng rng(params.seed);
  const auto q = quotas(spec, params);
  const auto seed = init_box(spec, params, rng);
  const auto rows = static_cast<std::int32_t>(spec.rows);
  const auto cols = static_cast<std::int32_t>(spec.cols);
  const std::size_t steps = spec.slabs > 0 ? spec.slabs - 1 : 0;

  BoxTrack track;
  track.jitter_w = zero_sum_jitter(steps, params.jitter_cap, rng);
  track.jitter_h = track.jitter_w;
  track.slabs.resize(spec.slabs);

  // Cumulative, unclamped displacement; drives the scattered variant.
  std::vector<std::pair<std::int32_t, std::int32_t>> drift(spec.slabs, {0, 0});
  std::int32_t nominal_w = seed.side_w;
  std::int32_t nominal_h = seed.side_h;
  track.slabs[0].x = seed.x0;
  track.slabs[0].y = seed.y0;
  track.slabs[0].w = seed.side_w;
  track.slabs[0].h = seed.side_h;
  for (std::size_t s = 1; s < spec.slabs; ++s) {
    const auto vx = static_cast<std::int32_t>(rng.uniform(-params.velocity_cap, params.velocity_cap));
    const auto vy = static_cast<std::int32_t>(rng.uniform(-params.velocity_cap, params.velocity_cap));
    drift[s] = {drift[s - 1].first + vx, drift[s - 1].second + vy};
    nominal_w += track.jitter_w[s - 1];
    nominal_h += track.jitter_h[s - 1];
    auto& prev = track.slabs[s - 1];
    auto& cur = track.slabs[s];
    cur.w = std::clamp(nominal_w, 1, cols);
    cur.h = std::clamp(nominal_h, 1, rows);
    cur.x = std::clamp(prev.x + vx, 0, cols - cur.w);
    cur.y = std::clamp(prev.y + vy, 0, rows - cur.h);
  }

  MaskStats stats = base_stats(spec, q);
  stats.block_clamped = seed.clamped;
  if (dense) return finish_dense(spec, q, std::move(track), rng, stats);

  Mask3D mask(spec, q.total);
  const auto base = draw_cells(spec.cells_per_slab(), q.slab, rng);
  for (std::size_t s = 0; s < spec.slabs; ++s) {
    const auto [dx, dy] = drift[s];
    for (const auto cell : base) {
      const auto r = static_cast<std::int32_t>(cell / spec.cols);
      const auto c = static_cast<std::int32_t>(cell % spec.cols);
      const auto rr = ((r + dy) % rows + rows) % rows;
      const auto cc = ((c + dx) % cols + cols) % cols;
      mask.set(s, static_cast<std::size_t>(rr), static_cast<std::size_t>(cc), true);
    }
  }
  mask = correct_scattered(std::move(mask), q.total, track, rng);
  tally(stats, track);
  return {std::move(mask), std::move(track), stats};
}

MaskResult gen_mgm(const GridSpec& spec, const MaskParams& params, const MotionGuide& guide,
                   bool dense) {
  validate(params);
  if (!(guide.spec == spec)) {
    throw Error(ErrorCode::kMotionDimsMismatch, "motion guide was prepared for another grid");
  }
  Rng rng(params.seed);
  const auto q = quotas(spec, params);
  MaskStats stats = base_stats(spec, q);
  const std::size_t per_slab = spec.cells_per_slab();

  if (!dense) {
    Mask3D mask(spec, q.total);
    const auto delta = distribute(std::vector<std::size_t>(spec.slabs, q.slab), per_slab, q.total);
    BoxTrack track;
    track.slabs.resize(spec.slabs);
    std::vector<std::size_t> order(per_slab);
    for (std::size_t s = 0; s < spec.slabs; ++s) {
      const std::int64_t* keys = guide.token_key.data() + s * per_slab;
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [keys](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
      const auto count = static_cast<std::size_t>(static_cast<long>(q.slab) + delta[s]);
      for (std::size_t i = 0; i < count; ++i) mask.set(s * per_slab + order[i], true);
      auto& box = track.slabs[s];
      box.x = static_cast<std::int32_t>(order[0] % spec.cols);
      box.y = static_cast<std::int32_t>(order[0] / spec.cols);
      box.w = 1;
      box.h = 1;
      box.anchor = TokenCell{static_cast<std::uint32_t>(box.y), static_cast<std::uint32_t>(box.x)};
    }
    return {std::move(mask), std::move(track), stats};
  }

  const auto seed = init_box(spec, params, rng);
  stats.block_clamped = seed.clamped;
  const auto rows = static_cast<std::int32_t>(spec.rows);
  const auto cols = static_cast<std::int32_t>(spec.cols);
  const std::size_t steps = spec.slabs > 0 ? spec.slabs - 1 : 0;

  BoxTrack track;
  track.jitter_w = zero_sum_jitter(steps, params.jitter_cap, rng);
  track.jitter_h = zero_sum_jitter(steps, params.jitter_cap, rng);
  track.slabs.resize(spec.slabs);
  track.slabs[0].x = seed.x0;
  track.slabs[0].y = seed.y0;
  track.slabs[0].w = seed.side_w;
  track.slabs[0].h = seed.side_h;
  std::int32_t nominal_w = seed.side_w;
  std::int32_t nominal_h = seed.side_h;
  for (std::size_t s = 1; s < spec.slabs; ++s) {
    nominal_w += track.jitter_w[s - 1];
    nominal_h += track.jitter_h[s - 1];
    const TokenCell centre = guide.argmax_token(s);
    auto& box = track.slabs[s];
    box.w = std::clamp(nominal_w, 1, cols);
    box.h = std::clamp(nominal_h, 1, rows);
    // Translate back into the grid without shrinking; the centre cell stays covered.
    box.x = std::clamp(static_cast<std::int32_t>(centre.col) - box.w / 2, 0, cols - box.w);
    box.y = std::clamp(static_cast<std::int32_t>(centre.row) - box.h / 2, 0, rows - box.h);
    box.anchor = centre;
  }
  return finish_dense(spec, q, std::move(track), rng, stats);
}

MaskResult gen_mgm(const GridSpec& spec, const MaskParams& params, const MotionField& motion,
                   bool dense) {
  return gen_mgm(spec, params, prepare_motion_guide(motion, spec), dense);
}

MaskResult generate(Generator g, const GridSpec& spec, const MaskParams& params,
                    const MotionGuide* motion) {
  switch (g) {
    case Generator::kRandom: return gen_random(spec, params);
    case Generator::kTube: return gen_tube(spec, params);
    case Generator::kBlock: return gen_block(spec, params);
    case Generator::kSmmSparse: return gen_smm(spec, params, false);
    case Generator::kSmmDense: return gen_smm(spec, params, true);
    case Generator::kMgmSparse:
    case Generator::kMgmDense:
      if (motion == nullptr) {
        throw Error(ErrorCode::kMissingMotion,
                    std::string(generator_name(g)) + " needs a motion field");
      }
      return gen_mgm(spec, params, *motion, g == Generator::kMgmDense);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown generator");
}

}  // namespace mgmask
