#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "../support/oracles.hpp"
#include "mgmask/error.hpp"
#include "mgmask/motionfield.hpp"

namespace mgmask {
namespace {

TEST(EstimateMvTest, RecoversCircularShiftOnInteriorBlocks) {
  Rng rng(11);
  const Clip clip = testing::circular_shift_pair(rng, 64, 64, 3, 0);
  const MotionField field = estimate_mv(clip, 7);
  int checked = 0;
  for (std::uint32_t br = 0; br < field.block_rows(); ++br) {
    for (std::uint32_t bc = 0; bc < field.block_cols(); ++bc) {
      EXPECT_EQ(field.at(0, br, bc), (MotionVector{0, 0}));
      if (!testing::window_in_bounds(br, bc, 64, 64, 7)) continue;
      EXPECT_EQ(field.at(1, br, bc), (MotionVector{3, 0})) << br << "," << bc;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 36);
  EXPECT_EQ(field, testing::brute_force_mv(clip, 7));
}

TEST(EstimateMvTest, IdenticalFramesGiveZeroMotion) {
  Rng rng(1);
  Clip clip = testing::random_clip(rng, 3, 16, 24, 1);
  std::copy(clip.frame(0).begin(), clip.frame(0).end(), clip.frame(1).begin());
  std::copy(clip.frame(0).begin(), clip.frame(0).end(), clip.frame(2).begin());
  const auto field = estimate_mv(clip, 4);
  for (const auto v : field.vectors()) EXPECT_EQ(v, (MotionVector{0, 0}));
}

TEST(EstimateMvTest, SingleFrameIsAllZero) {
  Rng rng(1);
  const auto field = estimate_mv(testing::random_clip(rng, 1, 16, 16, 1));
  EXPECT_EQ(field.frames(), 1u);
  EXPECT_EQ(field.vectors().size(), 4u);
  for (const auto v : field.vectors()) EXPECT_EQ(v, (MotionVector{0, 0}));
}

TEST(EstimateMvTest, FlatFramesTieBreakToZero) {
  // Every candidate has SAD 0; (0,0) must win.
  Clip clip(2, 16, 16, 1);
  for (auto& v : clip.data()) v = 40;
  const auto field = estimate_mv(clip, 3);
  for (const auto v : field.vectors()) EXPECT_EQ(v, (MotionVector{0, 0}));
}

TEST(EstimateMvTest, MatchesBruteForceOnRandomSmallClips) {
  Rng rng(77);
  for (int i = 0; i < 40; ++i) {
    // Low-entropy texture makes SAD ties common, exercising the tie-break order.
    Clip clip = testing::random_clip(rng, 3, 24, 32, 1);
    for (auto& v : clip.data()) v &= 0x3;
    const int r = static_cast<int>(rng.uniform(0, 4));
    ASSERT_EQ(estimate_mv(clip, r), testing::brute_force_mv(clip, r)) << "iteration " << i;
  }
}

TEST(EstimateMvTest, IntensityOffsetLeavesVectorsUnchanged) {
  Rng rng(8);
  Clip clip = testing::circular_shift_pair(rng, 48, 48, -2, 1);
  for (auto& v : clip.data()) v = static_cast<std::uint8_t>(v / 2 + 20);
  Clip brighter = clip;
  for (auto& v : brighter.data()) v = static_cast<std::uint8_t>(v + 60);  // no saturation
  EXPECT_EQ(estimate_mv(clip, 4), estimate_mv(brighter, 4));
}

TEST(EstimateMvTest, Errors) {
  Rng rng(2);
  try {
    estimate_mv(testing::random_clip(rng, 2, 12, 16, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimsNotBlockAligned);
  }
  try {
    estimate_mv(testing::random_clip(rng, 2, 4, 4, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySearchWindow);
  }
  EXPECT_THROW(estimate_mv(testing::random_clip(rng, 2, 8, 8, 3)), Error);
  EXPECT_THROW(estimate_mv(testing::random_clip(rng, 2, 8, 8, 1), -1), Error);
}

TEST(UpsampleTest, SingleBlock) {
  MotionField field(1, 1, 1);
  field.at(0, 0, 0) = {2, -1};
  const auto up = upsample_nearest(field, 8, 8);
  for (const auto v : up.vectors()) EXPECT_EQ(v, (MotionVector{2, -1}));
}

TEST(UpsampleTest, PixelMapsToFloorBlock) {
  MotionField field(1, 2, 2);
  field.at(0, 1, 0) = {5, 6};
  EXPECT_EQ(upsample_nearest(field, 16, 16).at(0, 9, 3), (MotionVector{5, 6}));
}

TEST(UpsampleTest, RandomFieldsMatchBlockLookupAndDownsampleBack) {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto t = static_cast<std::uint32_t>(rng.uniform(1, 3));
    const auto hb = static_cast<std::uint32_t>(rng.uniform(1, 5));
    const auto wb = static_cast<std::uint32_t>(rng.uniform(1, 5));
    const auto field = testing::random_field(rng, t, hb, wb, 100);
    const auto up = upsample_nearest(field, hb * 8, wb * 8);
    MotionField back(t, hb, wb);
    for (std::uint32_t f = 0; f < t; ++f) {
      for (std::uint32_t r = 0; r < hb * 8; ++r) {
        for (std::uint32_t c = 0; c < wb * 8; ++c) {
          ASSERT_EQ(up.at(f, r, c), field.at(f, r / 8, c / 8));
          if (r % 8 == 0 && c % 8 == 0) back.at(f, r / 8, c / 8) = up.at(f, r, c);
        }
      }
    }
    EXPECT_EQ(back, field);
  }
}

TEST(UpsampleTest, DimMismatch) {
  try {
    upsample_nearest(MotionField(1, 2, 2), 16, 24);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
}

TEST(MagnitudeTest, EuclideanNorm) {
  MotionField field(1, 1, 3);
  field.at(0, 0, 0) = {3, 4};
  field.at(0, 0, 2) = {-3, 4};
  const auto m = magnitude(field);
  EXPECT_DOUBLE_EQ(m.at(0, 0, 0), 5.0);
  EXPECT_DOUBLE_EQ(m.at(0, 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(m.at(0, 0, 2), 5.0);
  EXPECT_DOUBLE_EQ(magnitude(upsample_nearest(field, 8, 24)).at(0, 7, 23), 5.0);
  EXPECT_NEAR(mean_magnitude(field), 10.0 / 3.0, 1e-12);
}

TEST(MvfTest, ZeroFieldLayout) {
  const auto bytes = write_mvf(MotionField(1, 1, 1));
  const std::vector<std::uint8_t> expected{'M', 'V', 'F', '1', 1, 0, 0, 0, 1, 0,
                                           0,   0,   1,   0,   0, 0, 0, 0, 0, 0};
  EXPECT_EQ(bytes, expected);
}

TEST(MvfTest, NegativeComponentsAreLittleEndianI16) {
  MotionField field(1, 1, 1);
  field.at(0, 0, 0) = {-2, 300};
  const auto bytes = write_mvf(field);
  EXPECT_EQ(bytes[16], 0xFE);
  EXPECT_EQ(bytes[17], 0xFF);
  EXPECT_EQ(bytes[18], 0x2C);
  EXPECT_EQ(bytes[19], 0x01);
}

TEST(MvfTest, RoundTripRandomFields) {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto field = testing::random_field(
        rng, static_cast<std::uint32_t>(rng.uniform(1, 4)),
        static_cast<std::uint32_t>(rng.uniform(1, 6)),
        static_cast<std::uint32_t>(rng.uniform(1, 6)), 32767);
    EXPECT_EQ(read_mvf(write_mvf(field)), field);
  }
}

TEST(MvfTest, Errors) {
  auto bytes = write_mvf(MotionField(2, 2, 2));
  bytes.resize(bytes.size() - 2);
  try {
    read_mvf(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncatedPayload);
  }
  bytes[0] = 'X';
  try {
    read_mvf(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadMagic);
  }
}

}  // namespace
}  // namespace mgmask
