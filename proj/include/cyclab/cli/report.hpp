// Deterministic artifact emission: CSV at full double precision (17
// significant digits, log-domain columns suffixed _log2), JSON reports in a
// common wrapper validated by docs/report.schema.json, and a run manifest
// carrying the config hash. No timestamps anywhere: identical config + seed
// must give identical bytes.

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "cyclab/intervals.hpp"
#include "cyclab/measures.hpp"

#include <json.hpp>

namespace cyclab::cli {

std::string fmt_double(double v);  // %.17g

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::size_t width_;
};

// {"command":..., "config_hash":..., "seed":..., "version":..., "data":...}
nlohmann::json report_wrapper(const std::string& command, const std::string& cfg_hash,
                              std::uint64_t seed, nlohmann::json data);
void write_json(const std::string& path, const nlohmann::json& j);

// manifest: command, config hash, seed, version, emitted file list
void write_manifest(const std::string& path, const std::string& command,
                    const std::string& cfg_hash, std::uint64_t seed,
                    const std::vector<std::string>& outputs);

// exact endpoints (decimal numerator string over 2^exp) plus double mirrors
nlohmann::json interval_union_json(const IntervalUnion& u);

// structured energy / membership reports (partial sums, tails, verdicts)
nlohmann::json energy_report_json(const EnergyReport& rep);
nlohmann::json membership_report_json(const MembershipReport& rep);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cyclab::cli
