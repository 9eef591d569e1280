#pragma once

#include <string>
#include <vector>

namespace mgmask::app {

// Exit status: 0 success, 1 when any input failed, 2 on a usage error.
int run_cli(int argc, const char* const* argv);

// Same, with `args` excluding the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace mgmask::app
