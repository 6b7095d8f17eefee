#pragma once

#include "config.hpp"

namespace expwave::cli {

// Each returns a process exit code: 0 pass, 1 identity/acceptance failure
// (ConfigError/IoError escape to main for 2/3).
int cmd_solve(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_observe(const RunConfig& cfg);
int cmd_control(const RunConfig& cfg);
int cmd_literature(const RunConfig& cfg);

}  // namespace expwave::cli
