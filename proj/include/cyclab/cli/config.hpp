// Experiment configuration: one JSON file whose root holds the block for the
// command being run. Every key is validated against the documented schema;
// unknown keys are hard errors (silent typos corrupt sweeps).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclab/cantor.hpp"

#include <json.hpp>

namespace cyclab::cli {

struct GridPoint {
  double p = 2.0;
  double beta = 0.0;
};

struct ScanConfigFile {
  std::vector<double> p_values;
  std::vector<double> beta_values;
  std::vector<Rational> lambdas;
  std::vector<std::int64_t> degrees{8, 16, 32};
  int level_offset = 1;           // zero set built on E_{N0+offset}
  std::int64_t f_truncation = 512;
  std::int64_t certificate_degree = 32;
  double poly_norm_cap = 100.0;
  double digit_tol = 1e-6;
  double ramp_fraction = 0.25;
};

struct CantorConfigFile {
  std::vector<Rational> lambdas;
  std::vector<int> ks{1};
  int max_level_offset = 3;
  std::vector<double> h_alphas{0.45, 0.55};
  bool emit_intervals = false;
  std::size_t interval_emit_limit = 64;
};

struct CapacityConfigFile {
  Rational lambda{1, 3};
  int k = 1;
  std::vector<double> alphas;
  int level = -1;  // -1: N0 + 2
  std::int64_t freq_cutoff = 4096;
  int max_iters = 400;
  int eidlin_n_max = -1;  // -1: N0 + 10
};

struct VerifyConfigFile {
  std::vector<GridPoint> grid{{4.0 / 3.0, 0.1}, {4.0 / 3.0, 0.2}, {1.5, 0.3}, {1.8, 0.05}};
  int trials = 1000;
  int max_support = 16;
  std::int64_t max_freq = 48;
};

struct Config {
  std::string command;
  nlohmann::json raw;
  ScanConfigFile scan;
  CantorConfigFile cantor;
  CapacityConfigFile capacity;
  VerifyConfigFile verify;
};

// Parses and validates the block for `command`; throws std::runtime_error
// with a key path on any violation.
Config load_config(const std::string& path, const std::string& command);
Config parse_config(const nlohmann::json& j, const std::string& command);

// FNV-1a over the canonical dump of the parsed block.
std::string config_hash(const nlohmann::json& j);

}  // namespace cyclab::cli
