#include <gtest/gtest.h>

#include <string>

#include "../support/oracles.hpp"
#include "mgmask/clipio.hpp"
#include "mgmask/error.hpp"

namespace mgmask {
namespace {

std::vector<std::uint8_t> rvc_header(std::uint32_t t, std::uint32_t h, std::uint32_t w,
                                     std::uint32_t c) {
  std::vector<std::uint8_t> out{'R', 'V', 'C', '1'};
  for (const auto v : {t, h, w, c}) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  return out;
}

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no mgmask::Error thrown";
  return ErrorCode::kIoError;
}

TEST(RvcTest, SmallestValidClip) {
  auto bytes = rvc_header(1, 8, 8, 1);
  bytes.resize(bytes.size() + 64, 0);
  const Clip clip = parse_rvc(bytes);
  EXPECT_EQ(clip.frames(), 1u);
  EXPECT_EQ(clip.height(), 8u);
  EXPECT_EQ(clip.width(), 8u);
  EXPECT_EQ(clip.channels(), 1u);
  for (const auto v : clip.data()) EXPECT_EQ(v, 0);
}

TEST(RvcTest, StandardInputShape) {
  auto bytes = rvc_header(16, 224, 224, 3);
  bytes.resize(bytes.size() + 2408448, 7);
  const Clip clip = parse_rvc(bytes);
  EXPECT_EQ(clip.data().size(), 2408448u);
}

TEST(RvcTest, TruncatedPayloadReportsBothLengths) {
  auto bytes = rvc_header(2, 8, 8, 1);
  bytes.resize(bytes.size() + 64, 0);
  try {
    parse_rvc(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncatedPayload);
    EXPECT_NE(std::string(e.what()).find("expected 128, got 64"), std::string::npos);
  }
}

TEST(RvcTest, HeaderErrors) {
  EXPECT_EQ(code_of([] { parse_rvc(bytes_of("RVC2aaaaaaaaaaaaaaaa")); }), ErrorCode::kBadMagic);
  EXPECT_EQ(code_of([] { parse_rvc(bytes_of("RV")); }), ErrorCode::kBadMagic);
  EXPECT_EQ(code_of([] { parse_rvc(bytes_of("RVC1abc")); }), ErrorCode::kTruncatedPayload);
  EXPECT_EQ(code_of([] { parse_rvc(rvc_header(0, 8, 8, 1)); }), ErrorCode::kInvalidDims);
  EXPECT_EQ(code_of([] { parse_rvc(rvc_header(1, 8, 8, 2)); }), ErrorCode::kInvalidDims);
  EXPECT_EQ(code_of([] { parse_rvc(rvc_header(1, 0, 8, 3)); }), ErrorCode::kInvalidDims);
}

TEST(RvcTest, WriteLayout) {
  const auto black = write_rvc(Clip(1, 8, 8, 1));
  ASSERT_EQ(black.size(), 16u + 4u + 64u);
  EXPECT_EQ(std::vector<std::uint8_t>(black.begin(), black.begin() + 20), rvc_header(1, 8, 8, 1));

  EXPECT_EQ(write_rvc(Clip(1, 8, 8, 3)).size() - kRvcHeaderSize, 192u);
}

TEST(RvcTest, RoundTripRandomClips) {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto t = static_cast<std::uint32_t>(rng.uniform(1, 4));
    const auto h = static_cast<std::uint32_t>(rng.uniform(1, 24));
    const auto w = static_cast<std::uint32_t>(rng.uniform(1, 24));
    const auto c = rng.below(2) == 0 ? 1u : 3u;
    const Clip clip = testing::random_clip(rng, t, h, w, c);
    const auto bytes = write_rvc(clip);
    EXPECT_EQ(parse_rvc(bytes), clip);
    EXPECT_EQ(write_rvc(parse_rvc(bytes)), bytes);
  }
}

std::string y4m(const std::string& header, int frames, std::size_t frame_bytes, char fill) {
  std::string s = header + "\n";
  for (int f = 0; f < frames; ++f) s += "FRAME\n" + std::string(frame_bytes, fill);
  return s;
}

TEST(Y4mTest, MonoPassthrough) {
  std::string s = "YUV4MPEG2 W16 H16 F25:1 Ip A1:1 Cmono\n";
  for (int f = 0; f < 2; ++f) {
    s += "FRAME\n";
    for (int i = 0; i < 256; ++i) s.push_back(static_cast<char>(f * 100 + i % 50));
  }
  const Clip clip = parse_y4m(bytes_of(s));
  EXPECT_EQ(clip.frames(), 2u);
  EXPECT_EQ(clip.height(), 16u);
  EXPECT_EQ(clip.width(), 16u);
  EXPECT_EQ(clip.channels(), 1u);
  EXPECT_EQ(clip.at(0, 0, 3), 3);
  EXPECT_EQ(clip.at(1, 15, 15), 100 + 255 % 50);
}

TEST(Y4mTest, ChromaIsDiscarded) {
  std::string s = "YUV4MPEG2 W16 H16 F30:1 C420jpeg\nFRAME\n" + std::string(256, char(128));
  for (int i = 0; i < 128; ++i) s.push_back(static_cast<char>(i * 7));
  const Clip clip = parse_y4m(bytes_of(s));
  EXPECT_EQ(clip.frames(), 1u);
  EXPECT_EQ(clip.channels(), 1u);
  for (const auto v : clip.data()) EXPECT_EQ(v, 128);
}

TEST(Y4mTest, DefaultColorSpaceIs420AndOddSizesRoundChromaUp) {
  // 5x3 luma, chroma planes 3x2 each.
  const auto clip = parse_y4m(bytes_of(y4m("YUV4MPEG2 W5 H3", 3, 15 + 12, 9)));
  EXPECT_EQ(clip.frames(), 3u);
  EXPECT_EQ(clip.data().size(), 45u);
}

TEST(Y4mTest, FrameParametersAreTolerated) {
  const std::string s = "YUV4MPEG2 W8 H8 Cmono\nFRAME Ixyz\n" + std::string(64, 'a');
  EXPECT_EQ(parse_y4m(bytes_of(s)).frames(), 1u);
}

TEST(Y4mTest, Errors) {
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of(y4m("YUV4MPEG2 W16 H16 C444", 1, 768, 0))); }),
            ErrorCode::kUnsupportedColorSpace);
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of(y4m("YUV4MPEG2 W16 H16 C420p10", 1, 768, 0))); }),
            ErrorCode::kUnsupportedColorSpace);
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of(y4m("YUV4MPEG W16 H16", 1, 384, 0))); }),
            ErrorCode::kBadMagic);
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of("YUV4MPEG2 W16 H16")); }),
            ErrorCode::kMalformedHeader);
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of(y4m("YUV4MPEG2 H16 Cmono", 1, 256, 0))); }),
            ErrorCode::kMalformedHeader);
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of("YUV4MPEG2 W8 H8 Cmono\nFRAMX\n" + std::string(64, 'a'))); }),
            ErrorCode::kMalformedFrameHeader);
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of("YUV4MPEG2 W8 H8 Cmono\nFRAME")); }),
            ErrorCode::kMalformedFrameHeader);
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of("YUV4MPEG2 W8 H8 Cmono\nFRAME\n" + std::string(63, 'a'))); }),
            ErrorCode::kTruncatedFrame);
  EXPECT_EQ(code_of([] { parse_y4m(bytes_of("YUV4MPEG2 W8 H8 Cmono\n")); }),
            ErrorCode::kInvalidDims);
}

TEST(Y4mTest, CorruptedStreamsNeverEscapeAsForeignExceptions) {
  const std::string good = y4m("YUV4MPEG2 W8 H8 C420", 2, 96, 'z');
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    std::string s = good;
    const auto cut = static_cast<std::size_t>(rng.below(s.size()));
    if (rng.below(2) == 0) {
      s.resize(cut);
    } else {
      s[cut] = static_cast<char>(rng.next() & 0xFF);
    }
    try {
      const Clip clip = parse_y4m(bytes_of(s));
      EXPECT_EQ(clip.data().size(), std::size_t{clip.frames()} * clip.height() * clip.width());
    } catch (const Error&) {
    }
  }
}

TEST(LumaTest, Bt601Weights) {
  Clip white(1, 2, 2, 3);
  for (auto& v : white.data()) v = 255;
  const auto luma_white = to_luma(white);
  for (const auto v : luma_white.data()) EXPECT_EQ(v, 255);

  Clip red(1, 2, 2, 3);
  for (std::size_t i = 0; i < red.data().size(); i += 3) red.data()[i] = 255;
  const auto luma_red = to_luma(red);
  for (const auto v : luma_red.data()) EXPECT_EQ(v, 76);  // round(76.245)
}

TEST(LumaTest, SingleChannelIdentityAndIdempotence) {
  Rng rng(3);
  const Clip mono = testing::random_clip(rng, 2, 8, 8, 1);
  EXPECT_EQ(to_luma(mono), mono);
  const Clip rgb = testing::random_clip(rng, 2, 8, 8, 3);
  const Clip once = to_luma(rgb);
  EXPECT_EQ(once.channels(), 1u);
  EXPECT_EQ(to_luma(once), once);
}

TEST(PpmTest, HeadersAndPayload) {
  const auto pgm = write_ppm_frame(Clip(1, 8, 8, 1), 0);
  const std::string header = "P5\n8 8\n255\n";
  ASSERT_EQ(pgm.size(), header.size() + 64);
  EXPECT_EQ(std::string(pgm.begin(), pgm.begin() + header.size()), header);

  const auto ppm = write_ppm_frame(Clip(2, 8, 8, 3), 1);
  EXPECT_EQ(std::string(ppm.begin(), ppm.begin() + 2), "P6");
  EXPECT_EQ(ppm.size(), header.size() + 192);

  EXPECT_EQ(code_of([] { write_ppm_frame(Clip(2, 8, 8, 1), 2); }), ErrorCode::kIndexOutOfRange);
}

}  // namespace
}  // namespace mgmask
