#pragma once

#include <ostream>

#include "run_config.hpp"

namespace mgmask::app {

inline constexpr int kStatsVersion = 1;
inline constexpr const char* kStatsFile = "stats.json";

int cmd_estimate(const RunConfig& cfg);
int cmd_mask(const RunConfig& cfg);
int cmd_saliency(const RunConfig& cfg);
int cmd_oracle(const RunConfig& cfg);
int cmd_info(const RunConfig& cfg, std::ostream& out);

}  // namespace mgmask::app
