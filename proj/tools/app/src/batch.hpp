#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgmask/clipio.hpp"
#include "mgmask/motionfield.hpp"
#include "mgmask/tokengrid.hpp"
#include "run_config.hpp"

namespace mgmask::app {

namespace fs = std::filesystem;

std::string_view format_name(InputFormat format) noexcept;
std::optional<InputFormat> parse_format(std::string_view name) noexcept;

// Files named directly are kept as given; directories contribute their regular
// files whose extension is one of `accepted` (non-recursive). The result is
// sorted by path. Throws IoError for a path that does not exist.
std::vector<fs::path> collect_inputs(const std::vector<std::string>& args,
                                     const std::vector<InputFormat>& accepted);

std::vector<std::uint8_t> read_file(const fs::path& path);

// Writes to a sibling temp file and renames it over `path`.
void write_atomic(const fs::path& path, std::span<const std::uint8_t> bytes);
void write_atomic(const fs::path& path, std::string_view text);

// Resolved from `forced`, then the extension, then the magic bytes.
InputFormat detect_format(const fs::path& path, std::span<const std::uint8_t> bytes,
                          InputFormat forced);

struct LoadedInput {
  InputFormat format = InputFormat::kAuto;
  std::optional<Clip> clip;
  std::optional<MotionField> motion;
  std::optional<Mask3D> mask;
};

LoadedInput load_input(const fs::path& path, InputFormat forced, PatchSize patch = {});

// <dir>/<stem>.mvf next to the input, if present.
std::optional<MotionField> colocated_motion(const fs::path& input);

// Runs fn(0..n-1) on up to `jobs` threads. fn must not throw.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace mgmask::app
