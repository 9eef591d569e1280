#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace mgmask {

// SplitMix64. Output sequence is a closed formula of the seed, so any
// implementation in any language reproduces it bit for bit.
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Rejection sampling removes modulo bias; bound 0 returns 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [lo, hi] (inclusive). Draws nothing when lo == hi.
  constexpr std::int64_t uniform(std::int64_t lo, std::int64_t hi) noexcept {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
  }

  template <typename T>
  constexpr void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

// First SplitMix64 output for `value` used as a seed.
constexpr std::uint64_t splitmix64(std::uint64_t value) noexcept {
  return Rng(value).next();
}

// Per-clip seed for batch runs: base ^ splitmix64(index in sorted input order).
constexpr std::uint64_t derive_clip_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return base ^ splitmix64(index);
}

}  // namespace mgmask
