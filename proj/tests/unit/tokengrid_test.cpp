#include <gtest/gtest.h>

#include <numeric>

#include "mgmask/error.hpp"
#include "mgmask/rng.hpp"
#include "mgmask/tokengrid.hpp"

namespace mgmask {
namespace {

TEST(GridTest, StandardLattice) {
  const auto spec = grid_from_clip(16, 224, 224);
  EXPECT_EQ(spec.slabs, 8u);
  EXPECT_EQ(spec.rows, 14u);
  EXPECT_EQ(spec.cols, 14u);
  EXPECT_EQ(spec.token_count(), 1568u);
  EXPECT_EQ(grid_from_clip(2, 16, 16).token_count(), 1u);
}

TEST(GridTest, NotDivisibleNamesAxis) {
  try {
    grid_from_clip(16, 224, 224, {2, 16, 15});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotDivisible);
    EXPECT_NE(std::string(e.what()).find("width"), std::string::npos);
  }
  try {
    grid_from_clip(15, 224, 224);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("time"), std::string::npos);
  }
}

TEST(GridTest, MaskedCountRoundsHalfUp) {
  EXPECT_EQ(masked_count(0.75, 1568), 1176u);
  EXPECT_EQ(masked_count(0.9, 1568), 1411u);
  EXPECT_EQ(masked_count(0.5, 7), 4u);
  EXPECT_EQ(masked_count(1.0, 196), 196u);
}

TEST(SplitTest, EdgesAndPartition) {
  const auto spec = grid_from_clip(16, 224, 224);
  Mask3D empty(spec, 0);
  auto s = split(spec, empty);
  EXPECT_EQ(s.visible.size(), 1568u);
  EXPECT_TRUE(s.masked.empty());

  Mask3D full(spec, 1568);
  for (std::size_t i = 0; i < 1568; ++i) full.set(i, true);
  s = split(spec, full);
  EXPECT_EQ(s.masked.size(), 1568u);

  Rng rng(1);
  Mask3D m(spec, 1176);
  std::vector<std::size_t> idx(1568);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(std::span<std::size_t>(idx));
  for (std::size_t i = 0; i < 1176; ++i) m.set(idx[i], true);
  s = split(spec, m);
  EXPECT_EQ(s.masked.size(), 1176u);
  EXPECT_TRUE(std::is_sorted(s.masked.begin(), s.masked.end()));
  EXPECT_TRUE(std::is_sorted(s.visible.begin(), s.visible.end()));
  std::vector<std::size_t> merged(s.masked);
  merged.insert(merged.end(), s.visible.begin(), s.visible.end());
  std::sort(merged.begin(), merged.end());
  for (std::size_t i = 0; i < merged.size(); ++i) ASSERT_EQ(merged[i], i);

  try {
    split(grid_from_clip(2, 16, 16), m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpecMismatch);
  }
}

TEST(PixelMapTest, TokenBoxes) {
  const auto spec = grid_from_clip(16, 224, 224);
  EXPECT_EQ(token_to_pixel_box(spec, 0, 0, 0), (PixelBox{0, 2, 0, 16, 0, 16}));
  EXPECT_EQ(token_to_pixel_box(spec, 7, 13, 13), (PixelBox{14, 16, 208, 224, 208, 224}));
  EXPECT_THROW(token_to_pixel_box(spec, 8, 0, 0), Error);
  EXPECT_EQ(pixel_to_token(spec, 3, 17, 0), (TokenCoord{1, 1, 0}));
  EXPECT_EQ(pixel_to_token(spec, 15, 223, 223), (TokenCoord{7, 13, 13}));
  EXPECT_THROW(pixel_to_token(spec, 0, 224, 0), Error);
}

TEST(PixelMapTest, BoxesTileTheClipAndInvertPixelLookup) {
  const auto spec = grid_from_clip(6, 12, 20, {3, 4, 5});
  std::vector<int> hits(6 * 12 * 20, 0);
  std::size_t volume = 0;
  for (std::uint32_t s = 0; s < spec.slabs; ++s) {
    for (std::uint32_t r = 0; r < spec.rows; ++r) {
      for (std::uint32_t c = 0; c < spec.cols; ++c) {
        const auto b = token_to_pixel_box(spec, s, r, c);
        volume += std::size_t{b.t1 - b.t0} * (b.r1 - b.r0) * (b.c1 - b.c0);
        for (auto t = b.t0; t < b.t1; ++t)
          for (auto y = b.r0; y < b.r1; ++y)
            for (auto x = b.c0; x < b.c1; ++x) {
              ++hits[(t * 12 + y) * 20 + x];
              ASSERT_EQ(pixel_to_token(spec, t, y, x), (TokenCoord{s, r, c}));
            }
      }
    }
  }
  EXPECT_EQ(volume, 6u * 12u * 20u);
  for (const int h : hits) EXPECT_EQ(h, 1);
}

TEST(MskTest, LayoutIsLsbFirst) {
  const auto spec = grid_from_clip(2, 48, 48);  // 1 x 3 x 3 = 9 tokens
  Mask3D m(spec, 2);
  m.set(0, true);
  m.set(8, true);
  const auto bytes = write_msk(m);
  ASSERT_EQ(bytes.size(), kMskHeaderSize + 2);
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[8], 3);
  EXPECT_EQ(bytes[12], 3);
  EXPECT_EQ(bytes[16], 2);
  EXPECT_EQ(bytes[20], 0x01);
  EXPECT_EQ(bytes[21], 0x01);
}

TEST(MskTest, RoundTripAndValidation) {
  const auto spec = grid_from_clip(4, 48, 32);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Mask3D m(spec);
    for (std::size_t k = 0; k < spec.token_count(); ++k) m.set(k, rng.below(2) == 1);
    m.set_target(m.popcount());
    EXPECT_EQ(read_msk(write_msk(m)), m);
  }
  Mask3D bad(spec, 3);
  EXPECT_THROW(write_msk(bad), Error);

  Mask3D ok(spec, 1);
  ok.set(0, true);
  auto bytes = write_msk(ok);
  bytes[16] = 2;
  try {
    read_msk(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCountMismatch);
  }
  bytes = write_msk(ok);
  bytes.back() |= 0x80;  // 12 tokens: bits 4..7 of the last byte are padding
  EXPECT_THROW(read_msk(bytes), Error);
  bytes.pop_back();
  try {
    read_msk(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncatedPayload);
  }
}

}  // namespace
}  // namespace mgmask
