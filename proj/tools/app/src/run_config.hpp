#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mgmask/maskgen.hpp"
#include "mgmask/motionfield.hpp"
#include "mgmask/tokengrid.hpp"

namespace mgmask::app {

enum class InputFormat { kAuto, kRvc, kY4m, kMvf, kMsk };

struct Emit {
  bool masks = false;
  bool mvf = false;
  bool boxtrack = false;
  bool ppm = false;
  bool stats = true;
};

struct RunConfig {
  std::vector<std::string> inputs;
  InputFormat format = InputFormat::kAuto;
  std::optional<Generator> generator;
  std::vector<Generator> generators;  // oracle only
  double gamma = 0.75;
  PatchSize patch;
  int search_radius = kDefaultSearchRadius;
  int velocity_cap = 1;
  int jitter_cap = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
  Emit emit;
  bool estimate = false;       // compute motion in-process when no <stem>.mvf exists
  std::optional<std::string> boxes;
  double quantile = 0.9;
  unsigned jobs = 0;           // 0: hardware concurrency
};

}  // namespace mgmask::app
