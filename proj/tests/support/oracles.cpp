#include "oracles.hpp"

#include <cstdlib>
#include <limits>
#include <tuple>

namespace mgmask::testing {

Clip random_clip(Rng& rng, std::uint32_t frames, std::uint32_t height, std::uint32_t width,
                 std::uint32_t channels) {
  Clip clip(frames, height, width, channels);
  for (auto& v : clip.data()) v = static_cast<std::uint8_t>(rng.next() & 0xFF);
  return clip;
}

MotionField brute_force_mv(const Clip& clip, int radius) {
  const std::uint32_t rows = clip.height() / 8;
  const std::uint32_t cols = clip.width() / 8;
  MotionField field(clip.frames(), rows, cols);
  const int H = static_cast<int>(clip.height());
  const int W = static_cast<int>(clip.width());
  for (std::uint32_t t = 1; t < clip.frames(); ++t) {
    for (std::uint32_t br = 0; br < rows; ++br) {
      for (std::uint32_t bc = 0; bc < cols; ++bc) {
        using Key = std::tuple<long, int, int, int>;
        Key best{std::numeric_limits<long>::max(), 0, 0, 0};
        for (int dy = -radius; dy <= radius; ++dy) {
          for (int dx = -radius; dx <= radius; ++dx) {
            const int sy = static_cast<int>(br) * 8 - dy;
            const int sx = static_cast<int>(bc) * 8 - dx;
            if (sy < 0 || sx < 0 || sy + 8 > H || sx + 8 > W) continue;
            long sad = 0;
            for (int y = 0; y < 8; ++y) {
              for (int x = 0; x < 8; ++x) {
                sad += std::abs(int(clip.at(t, br * 8 + y, bc * 8 + x)) -
                                int(clip.at(t - 1, sy + y, sx + x)));
              }
            }
            const Key key{sad, std::abs(dx) + std::abs(dy), dy, dx};
            if (key < best) best = key;
          }
        }
        field.at(t, br, bc) = {static_cast<std::int16_t>(std::get<3>(best)),
                               static_cast<std::int16_t>(std::get<2>(best))};
      }
    }
  }
  return field;
}

Clip circular_shift_pair(Rng& rng, std::uint32_t height, std::uint32_t width, int dx, int dy) {
  Clip clip(2, height, width, 1);
  for (std::uint32_t r = 0; r < height; ++r) {
    for (std::uint32_t c = 0; c < width; ++c) {
      clip.at(0, r, c) = static_cast<std::uint8_t>(rng.next() & 0xFF);
    }
  }
  const int H = static_cast<int>(height);
  const int W = static_cast<int>(width);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      const int sr = ((r - dy) % H + H) % H;
      const int sc = ((c - dx) % W + W) % W;
      clip.at(1, r, c) = clip.at(0, sr, sc);
    }
  }
  return clip;
}

bool window_in_bounds(std::uint32_t br, std::uint32_t bc, std::uint32_t height,
                      std::uint32_t width, int radius) {
  const int y = static_cast<int>(br) * 8;
  const int x = static_cast<int>(bc) * 8;
  return y - radius >= 0 && x - radius >= 0 && y + 8 + radius <= static_cast<int>(height) &&
         x + 8 + radius <= static_cast<int>(width);
}

MotionField random_field(Rng& rng, std::uint32_t frames, std::uint32_t block_rows,
                         std::uint32_t block_cols, int max_abs) {
  MotionField field(frames, block_rows, block_cols);
  for (std::uint32_t t = 1; t < frames; ++t) {
    for (std::uint32_t r = 0; r < block_rows; ++r) {
      for (std::uint32_t c = 0; c < block_cols; ++c) {
        field.at(t, r, c) = {static_cast<std::int16_t>(rng.uniform(-max_abs, max_abs)),
                             static_cast<std::int16_t>(rng.uniform(-max_abs, max_abs))};
      }
    }
  }
  return field;
}

SpriteClip make_sprite_clip(std::uint64_t seed, std::uint32_t frames, std::uint32_t height,
                            std::uint32_t width, std::uint32_t sprite) {
  Rng rng(seed);
  std::vector<std::uint8_t> background(static_cast<std::size_t>(height) * width);
  for (auto& v : background) v = static_cast<std::uint8_t>(rng.next() & 0xFF);
  std::vector<std::uint8_t> texture(static_cast<std::size_t>(sprite) * sprite);
  for (auto& v : texture) v = static_cast<std::uint8_t>(rng.next() & 0xFF);

  // Velocity of 2..5 px/frame per axis with random sign, start chosen so the
  // sprite stays fully in frame for the whole clip.
  const auto speed = [&]() {
    const int mag = static_cast<int>(rng.uniform(2, 5));
    return rng.below(2) == 0 ? mag : -mag;
  };
  const int vx = speed();
  const int vy = speed();
  const int travel_x = vx * static_cast<int>(frames - 1);
  const int travel_y = vy * static_cast<int>(frames - 1);
  const int span_x = static_cast<int>(width - sprite) - std::abs(travel_x);
  const int span_y = static_cast<int>(height - sprite) - std::abs(travel_y);
  const int x0 = static_cast<int>(rng.uniform(0, span_x)) + (travel_x < 0 ? -travel_x : 0);
  const int y0 = static_cast<int>(rng.uniform(0, span_y)) + (travel_y < 0 ? -travel_y : 0);

  SpriteClip out{Clip(frames, height, width, 1), {}};
  for (std::uint32_t t = 0; t < frames; ++t) {
    auto frame = out.clip.frame(t);
    std::copy(background.begin(), background.end(), frame.begin());
    const int px = x0 + vx * static_cast<int>(t);
    const int py = y0 + vy * static_cast<int>(t);
    for (std::uint32_t r = 0; r < sprite; ++r) {
      for (std::uint32_t c = 0; c < sprite; ++c) {
        out.clip.at(t, py + r, px + c) = texture[r * sprite + c];
      }
    }
    out.boxes.frames.push_back({PixelRect{static_cast<std::uint32_t>(py),
                                          static_cast<std::uint32_t>(px),
                                          static_cast<std::uint32_t>(py) + sprite,
                                          static_cast<std::uint32_t>(px) + sprite}});
  }
  return out;
}

}  // namespace mgmask::testing
