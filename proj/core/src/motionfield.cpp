#include "mgmask/motionfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "byteio.hpp"
#include "mgmask/error.hpp"

namespace mgmask {
namespace {

// Candidate displacements in tie-break order, so the first strict minimum wins.
std::vector<MotionVector> candidate_order(int radius) {
  std::vector<MotionVector> out;
  out.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      out.push_back({static_cast<std::int16_t>(dx), static_cast<std::int16_t>(dy)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](MotionVector a, MotionVector b) {
    const int la = std::abs(a.dx) + std::abs(a.dy);
    const int lb = std::abs(b.dx) + std::abs(b.dy);
    if (la != lb) return la < lb;
    if (a.dy != b.dy) return a.dy < b.dy;
    return a.dx < b.dx;
  });
  return out;
}

double vector_norm(MotionVector v) noexcept {
  const double dx = v.dx;
  const double dy = v.dy;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

MotionField::MotionField(std::uint32_t frames, std::uint32_t block_rows, std::uint32_t block_cols)
    : frames_(frames), block_rows_(block_rows), block_cols_(block_cols),
      vectors_(static_cast<std::size_t>(frames) * block_rows * block_cols) {}

UpsampledField::UpsampledField(std::uint32_t frames, std::uint32_t height, std::uint32_t width)
    : frames_(frames), height_(height), width_(width),
      vectors_(static_cast<std::size_t>(frames) * height * width) {}

MotionField estimate_mv(const Clip& clip, int search_radius, std::uint32_t block) {
  if (clip.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "motion estimation needs a single-channel clip");
  }
  if (search_radius < 0) throw Error(ErrorCode::kInvalidArgument, "negative search radius");
  if (block == 0 || block > clip.height() || block > clip.width()) {
    throw Error(ErrorCode::kEmptySearchWindow,
                "block " + std::to_string(block) + " does not fit a " +
                    std::to_string(clip.height()) + "x" + std::to_string(clip.width()) + " frame");
  }
  if (clip.height() % block != 0 || clip.width() % block != 0) {
    throw Error(ErrorCode::kDimsNotBlockAligned,
                std::to_string(clip.height()) + "x" + std::to_string(clip.width()) +
                    " is not a multiple of " + std::to_string(block));
  }

  const std::uint32_t rows = clip.height() / block;
  const std::uint32_t cols = clip.width() / block;
  MotionField field(clip.frames(), rows, cols);
  const auto order = candidate_order(search_radius);
  const int height = static_cast<int>(clip.height());
  const int width = static_cast<int>(clip.width());
  const int bs = static_cast<int>(block);

  for (std::uint32_t t = 1; t < clip.frames(); ++t) {
    const std::uint8_t* cur = clip.frame(t).data();
    const std::uint8_t* prev = clip.frame(t - 1).data();
    for (std::uint32_t br = 0; br < rows; ++br) {
      for (std::uint32_t bc = 0; bc < cols; ++bc) {
        const int y0 = static_cast<int>(br) * bs;
        const int x0 = static_cast<int>(bc) * bs;
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        MotionVector best_mv{};
        for (const MotionVector mv : order) {
          const int sy = y0 - mv.dy;
          const int sx = x0 - mv.dx;
          if (sy < 0 || sx < 0 || sy + bs > height || sx + bs > width) continue;
          std::uint64_t sad = 0;
          // Rows are accumulated in full, and a candidate is abandoned once it
          // can no longer be strictly better than the incumbent.
          for (int y = 0; y < bs && sad < best; ++y) {
            const std::uint8_t* a = cur + static_cast<std::ptrdiff_t>(y0 + y) * width + x0;
            const std::uint8_t* b = prev + static_cast<std::ptrdiff_t>(sy + y) * width + sx;
            std::uint32_t row = 0;
            for (int x = 0; x < bs; ++x) row += static_cast<std::uint32_t>(std::abs(a[x] - b[x]));
            sad += row;
          }
          if (sad < best) {
            best = sad;
            best_mv = mv;
            if (best == 0) break;
          }
        }
        field.at(t, br, bc) = best_mv;
      }
    }
  }
  return field;
}

UpsampledField upsample_nearest(const MotionField& field, std::uint32_t height,
                                std::uint32_t width) {
  if (height != field.pixel_height() || width != field.pixel_width()) {
    throw Error(ErrorCode::kDimMismatch,
                "target " + std::to_string(height) + "x" + std::to_string(width) +
                    " vs field " + std::to_string(field.pixel_height()) + "x" +
                    std::to_string(field.pixel_width()));
  }
  UpsampledField out(field.frames(), height, width);
  for (std::uint32_t t = 0; t < field.frames(); ++t) {
    for (std::uint32_t r = 0; r < height; ++r) {
      for (std::uint32_t c = 0; c < width; ++c) {
        out.at(t, r, c) = field.at(t, r / kMotionBlock, c / kMotionBlock);
      }
    }
  }
  return out;
}

MagnitudeField magnitude(const MotionField& field) {
  MagnitudeField out{field.frames(), field.block_rows(), field.block_cols(), {}};
  out.values.reserve(field.vectors().size());
  for (const auto v : field.vectors()) out.values.push_back(vector_norm(v));
  return out;
}

MagnitudeField magnitude(const UpsampledField& field) {
  MagnitudeField out{field.frames(), field.height(), field.width(), {}};
  out.values.reserve(field.vectors().size());
  for (const auto v : field.vectors()) out.values.push_back(vector_norm(v));
  return out;
}

double mean_magnitude(const MotionField& field) {
  if (field.vectors().empty()) return 0.0;
  double sum = 0.0;
  for (const auto v : field.vectors()) sum += vector_norm(v);
  return sum / static_cast<double>(field.vectors().size());
}

MotionField read_mvf(std::span<const std::uint8_t> bytes) {
  if (!detail::has_magic(bytes, "MVF1")) throw Error(ErrorCode::kBadMagic, "not an MVF1 file");
  if (bytes.size() < kMvfHeaderSize) {
    throw Error(ErrorCode::kTruncatedPayload, "header needs " + std::to_string(kMvfHeaderSize) +
                                                  " bytes, got " + std::to_string(bytes.size()));
  }
  const auto t = detail::load_u32le(bytes, 4);
  const auto hb = detail::load_u32le(bytes, 8);
  const auto wb = detail::load_u32le(bytes, 12);
  if (t == 0 || hb == 0 || wb == 0) {
    throw Error(ErrorCode::kInvalidDims, "T=" + std::to_string(t) + " Hb=" + std::to_string(hb) +
                                             " Wb=" + std::to_string(wb));
  }
  const auto payload = bytes.subspan(kMvfHeaderSize);
  const std::size_t expected = static_cast<std::size_t>(t) * hb * wb * 4;
  if (payload.size() != expected) {
    throw Error(ErrorCode::kTruncatedPayload, "expected " + std::to_string(expected) +
                                                  ", got " + std::to_string(payload.size()));
  }
  MotionField field(t, hb, wb);
  auto vectors = field.vectors();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    vectors[i].dx = detail::load_i16le(payload, 4 * i);
    vectors[i].dy = detail::load_i16le(payload, 4 * i + 2);
  }
  return field;
}

std::vector<std::uint8_t> write_mvf(const MotionField& field) {
  std::vector<std::uint8_t> out;
  out.reserve(kMvfHeaderSize + field.vectors().size() * 4);
  detail::put_str(out, "MVF1");
  detail::put_u32le(out, field.frames());
  detail::put_u32le(out, field.block_rows());
  detail::put_u32le(out, field.block_cols());
  for (const auto v : field.vectors()) {
    detail::put_i16le(out, v.dx);
    detail::put_i16le(out, v.dy);
  }
  return out;
}

}  // namespace mgmask
