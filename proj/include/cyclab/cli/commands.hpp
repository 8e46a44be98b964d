// Batch experiment commands. Each command reads its config block, runs the
// computation over the parameter grid (bounded worker pool, deterministic
// collection order sorted by parameter tuple) and emits CSV + JSON + a run
// manifest into the output directory.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclab/cli/config.hpp"

namespace cyclab::cli {

struct RunOptions {
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = library default
};

// returns the list of files written (paths relative to out_dir)
std::vector<std::string> cmd_scan(const Config& cfg, const RunOptions& opt);
std::vector<std::string> cmd_cantor(const Config& cfg, const RunOptions& opt);
std::vector<std::string> cmd_capacity(const Config& cfg, const RunOptions& opt);
std::vector<std::string> cmd_verify(const Config& cfg, const RunOptions& opt);

std::vector<std::string> run_command(const Config& cfg, const RunOptions& opt);

}  // namespace cyclab::cli
