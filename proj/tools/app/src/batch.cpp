#include "batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "mgmask/error.hpp"

namespace mgmask::app {
namespace {

std::optional<InputFormat> format_from_extension(const fs::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".rvc") return InputFormat::kRvc;
  if (ext == ".y4m") return InputFormat::kY4m;
  if (ext == ".mvf") return InputFormat::kMvf;
  if (ext == ".msk") return InputFormat::kMsk;
  return std::nullopt;
}

bool starts_with(std::span<const std::uint8_t> bytes, std::string_view magic) {
  return bytes.size() >= magic.size() &&
         std::memcmp(bytes.data(), magic.data(), magic.size()) == 0;
}

std::atomic<std::uint64_t> g_temp_counter{0};

}  // namespace

std::string_view format_name(InputFormat format) noexcept {
  switch (format) {
    case InputFormat::kAuto: return "auto";
    case InputFormat::kRvc: return "rvc";
    case InputFormat::kY4m: return "y4m";
    case InputFormat::kMvf: return "mvf";
    case InputFormat::kMsk: return "msk";
  }
  return "auto";
}

std::optional<InputFormat> parse_format(std::string_view name) noexcept {
  for (auto f : {InputFormat::kAuto, InputFormat::kRvc, InputFormat::kY4m, InputFormat::kMvf,
                 InputFormat::kMsk}) {
    if (format_name(f) == name) return f;
  }
  return std::nullopt;
}

std::vector<fs::path> collect_inputs(const std::vector<std::string>& args,
                                     const std::vector<InputFormat>& accepted) {
  std::vector<fs::path> out;
  for (const auto& arg : args) {
    const fs::path p(arg);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        if (!entry.is_regular_file()) continue;
        const auto f = format_from_extension(entry.path());
        if (f && std::find(accepted.begin(), accepted.end(), *f) != accepted.end()) {
          out.push_back(entry.path());
        }
      }
    } else if (fs::exists(p, ec)) {
      out.push_back(p);
    } else {
      throw Error(ErrorCode::kIoError, "no such file or directory: " + arg);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed: " + path.string());
  return bytes;
}

void write_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ostringstream suffix;
  suffix << ".tmp-" << std::this_thread::get_id() << '-' << g_temp_counter.fetch_add(1);
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::kIoError, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "rename failed: " + path.string());
  }
}

void write_atomic(const fs::path& path, std::string_view text) {
  write_atomic(path, std::span<const std::uint8_t>(
                         reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

InputFormat detect_format(const fs::path& path, std::span<const std::uint8_t> bytes,
                          InputFormat forced) {
  if (forced != InputFormat::kAuto) return forced;
  if (auto f = format_from_extension(path)) return *f;
  if (starts_with(bytes, "RVC1")) return InputFormat::kRvc;
  if (starts_with(bytes, "MVF1")) return InputFormat::kMvf;
  if (starts_with(bytes, "MSK1")) return InputFormat::kMsk;
  if (starts_with(bytes, "YUV4MPEG2")) return InputFormat::kY4m;
  throw Error(ErrorCode::kBadMagic, "unrecognised input format: " + path.string());
}

LoadedInput load_input(const fs::path& path, InputFormat forced, PatchSize patch) {
  const auto bytes = read_file(path);
  LoadedInput in;
  in.format = detect_format(path, bytes, forced);
  switch (in.format) {
    case InputFormat::kRvc: in.clip = parse_rvc(bytes); break;
    case InputFormat::kY4m: in.clip = parse_y4m(bytes); break;
    case InputFormat::kMvf: in.motion = read_mvf(bytes); break;
    case InputFormat::kMsk: in.mask = read_msk(bytes, patch); break;
    case InputFormat::kAuto: break;
  }
  return in;
}

std::optional<MotionField> colocated_motion(const fs::path& input) {
  const fs::path mvf = input.parent_path() / (input.stem().string() + ".mvf");
  if (mvf == input) return std::nullopt;
  std::error_code ec;
  if (!fs::is_regular_file(mvf, ec)) return std::nullopt;
  return read_mvf(read_file(mvf));
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
}

}  // namespace mgmask::app
