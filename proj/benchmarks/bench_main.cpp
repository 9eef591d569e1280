#include <benchmark/benchmark.h>

#include "mgmask/clipio.hpp"
#include "mgmask/maskgen.hpp"
#include "mgmask/motionfield.hpp"
#include "mgmask/saliency.hpp"
#include "mgmask/tokengrid.hpp"

namespace {

using namespace mgmask;

const GridSpec kGrid = grid_from_clip(16, 224, 224);

Clip noise_clip(std::uint64_t seed, std::uint32_t frames, std::uint32_t size) {
  Rng rng(seed);
  Clip clip(frames, size, size, 1);
  for (auto& v : clip.data()) v = static_cast<std::uint8_t>(rng.below(256));
  return clip;
}

// Static noise background with a 64 px noise square drifting 3 px right, 2 px down per frame.
Clip sprite_clip() {
  Clip bg = noise_clip(1, 1, 224);
  const Clip tex = noise_clip(2, 1, 64);
  Clip clip(16, 224, 224, 1);
  for (std::uint32_t t = 0; t < 16; ++t) {
    auto f = clip.frame(t);
    std::copy(bg.frame(0).begin(), bg.frame(0).end(), f.begin());
    for (std::uint32_t r = 0; r < 64; ++r)
      for (std::uint32_t c = 0; c < 64; ++c) clip.at(t, 40 + 2 * t + r, 40 + 3 * t + c) = tex.at(0, r, c);
  }
  return clip;
}

void BM_EstimateSprite(benchmark::State& state) {
  const Clip clip = sprite_clip();
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_mv(clip, radius));
}
BENCHMARK(BM_EstimateSprite)->Arg(4)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_EstimateNoise(benchmark::State& state) {
  // Independent frames: no zero-SAD shortcut, every candidate is scored.
  const Clip clip = noise_clip(3, 2, 224);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_mv(clip, 7));
}
BENCHMARK(BM_EstimateNoise)->Unit(benchmark::kMillisecond);

void BM_PrepareGuide(benchmark::State& state) {
  const MotionField field = estimate_mv(sprite_clip(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(prepare_motion_guide(field, kGrid));
}
BENCHMARK(BM_PrepareGuide)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  const auto g = kAllGenerators[state.range(0)];
  const auto guide = prepare_motion_guide(estimate_mv(sprite_clip(), 7), kGrid);
  MaskParams p;
  for (auto _ : state) {
    ++p.seed;
    benchmark::DoNotOptimize(generate(g, kGrid, p, &guide));
  }
  state.SetLabel(std::string(generator_name(g)));
}
BENCHMARK(BM_Generate)->DenseRange(0, static_cast<int>(std::size(kAllGenerators)) - 1);

void BM_Reconstruct(benchmark::State& state) {
  const Clip clip = sprite_clip();
  MaskParams p;
  p.seed = 5;
  const auto mask = gen_random(kGrid, p).mask;
  for (auto _ : state) benchmark::DoNotOptimize(temporal_copy_reconstruct(clip, mask, kGrid));
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

void BM_MskRoundTrip(benchmark::State& state) {
  MaskParams p;
  const auto mask = gen_random(kGrid, p).mask;
  for (auto _ : state) benchmark::DoNotOptimize(read_msk(write_msk(mask)));
}
BENCHMARK(BM_MskRoundTrip);

void BM_RvcParse(benchmark::State& state) {
  const auto bytes = write_rvc(noise_clip(4, 16, 224));
  for (auto _ : state) benchmark::DoNotOptimize(parse_rvc(bytes));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_RvcParse);

}  // namespace

BENCHMARK_MAIN();
