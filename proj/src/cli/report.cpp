#include "cyclab/cli/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace cyclab::cli {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), width_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open output file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

void CsvWriter::close() { out_.close(); }

nlohmann::json report_wrapper(const std::string& command, const std::string& cfg_hash,
                              std::uint64_t seed, nlohmann::json data) {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = cfg_hash;
  j["seed"] = seed;
  j["version"] = kVersion;
  j["data"] = std::move(data);
  return j;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::string& cfg_hash, std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = cfg_hash;
  j["seed"] = seed;
  j["version"] = kVersion;
  j["outputs"] = outputs;
  write_json(path, j);
}

nlohmann::json interval_union_json(const IntervalUnion& u) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& a : u.arcs()) {
    nlohmann::json e;
    e["start"] = {{"numerator", a.start.num_decimal_string()}, {"exp2", a.start.exp()},
                  {"approx", a.start_d()}};
    e["length"] = {{"numerator", a.len.base.num_decimal_string()}, {"exp2", a.len.base.exp()},
                   {"approx", a.len_d()}, {"tail_bound", a.len.slack()}};
    arcs.push_back(std::move(e));
  }
  nlohmann::json j;
  j["arcs"] = std::move(arcs);
  j["total_length"] = u.total_length();
  return j;
}

namespace {

const char* verdict_str(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Diverging: return "diverging";
    case SeriesVerdict::Bounded: return "bounded";
    case SeriesVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

nlohmann::json checkpoints_json(const std::vector<SeriesCheckpoint>& cps) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : cps) out.push_back({{"n", c.n}, {"sum", c.sum}, {"err", c.err}});
  return out;
}

}  // namespace

nlohmann::json energy_report_json(const EnergyReport& rep) {
  nlohmann::json j;
  j["alpha"] = rep.alpha;
  j["partial_sums"] = checkpoints_json(rep.partial_sums);
  j["verdict"] = verdict_str(rep.verdict);
  if (rep.tail_bound) j["tail_bound"] = *rep.tail_bound;
  return j;
}

nlohmann::json membership_report_json(const MembershipReport& rep) {
  nlohmann::json j;
  j["q"] = rep.q;
  j["beta"] = rep.beta;
  j["partial_sums"] = checkpoints_json(rep.partial_sums);
  j["verdict"] = verdict_str(rep.verdict);
  if (rep.tail_bound) j["tail_bound"] = *rep.tail_bound;
  j["chain_energy_partial"] = rep.chain_energy_partial;
  j["chain_drop_holds"] = rep.chain_drop_holds;
  return j;
}

}  // namespace cyclab::cli
