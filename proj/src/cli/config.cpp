#include "cyclab/cli/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace cyclab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error("config error at '" + path + "': " + what);
}

void require_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) fail(path + "/" + k, "unknown key");
}

double get_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::int64_t get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

Rational get_rational(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(path, "expected [numerator, denominator]");
  return Rational{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

template <typename F>
void get_list(const json& j, const std::string& path, F&& per_item, bool allow_empty = false) {
  if (!j.is_array() || (j.empty() && !allow_empty)) fail(path, "expected a non-empty array");
  for (std::size_t i = 0; i < j.size(); ++i) per_item(j[i], path + "[" + std::to_string(i) + "]");
}

ScanConfigFile parse_scan(const json& j) {
  require_keys(j, "scan",
               {"p", "beta", "lambda", "degrees", "level_offset", "f_truncation",
                "certificate_degree", "poly_norm_cap", "digit_tol", "ramp_fraction"});
  ScanConfigFile c;
  // an empty grid is legal and yields header-only artifacts
  get_list(j.at("p"), "scan/p", [&](const json& v, const std::string& p) {
    c.p_values.push_back(get_num(v, p));
  }, true);
  get_list(j.at("beta"), "scan/beta", [&](const json& v, const std::string& p) {
    c.beta_values.push_back(get_num(v, p));
  }, true);
  get_list(j.at("lambda"), "scan/lambda", [&](const json& v, const std::string& p) {
    c.lambdas.push_back(get_rational(v, p));
  }, true);
  if (j.count("degrees")) {
    c.degrees.clear();
    get_list(j.at("degrees"), "scan/degrees", [&](const json& v, const std::string& p) {
      c.degrees.push_back(get_int(v, p));
    });
  }
  if (j.count("level_offset")) c.level_offset = static_cast<int>(get_int(j.at("level_offset"), "scan/level_offset"));
  if (j.count("f_truncation")) c.f_truncation = get_int(j.at("f_truncation"), "scan/f_truncation");
  if (j.count("certificate_degree"))
    c.certificate_degree = get_int(j.at("certificate_degree"), "scan/certificate_degree");
  if (j.count("poly_norm_cap")) c.poly_norm_cap = get_num(j.at("poly_norm_cap"), "scan/poly_norm_cap");
  if (j.count("digit_tol")) c.digit_tol = get_num(j.at("digit_tol"), "scan/digit_tol");
  if (j.count("ramp_fraction")) c.ramp_fraction = get_num(j.at("ramp_fraction"), "scan/ramp_fraction");
  return c;
}

CantorConfigFile parse_cantor(const json& j) {
  require_keys(j, "cantor",
               {"lambda", "k", "max_level_offset", "h_alphas", "emit_intervals",
                "interval_emit_limit"});
  CantorConfigFile c;
  get_list(j.at("lambda"), "cantor/lambda", [&](const json& v, const std::string& p) {
    c.lambdas.push_back(get_rational(v, p));
  });
  if (j.count("k")) {
    c.ks.clear();
    get_list(j.at("k"), "cantor/k", [&](const json& v, const std::string& p) {
      c.ks.push_back(static_cast<int>(get_int(v, p)));
    });
  }
  if (j.count("max_level_offset"))
    c.max_level_offset = static_cast<int>(get_int(j.at("max_level_offset"), "cantor/max_level_offset"));
  if (j.count("h_alphas")) {
    c.h_alphas.clear();
    get_list(j.at("h_alphas"), "cantor/h_alphas", [&](const json& v, const std::string& p) {
      c.h_alphas.push_back(get_num(v, p));
    });
  }
  if (j.count("emit_intervals")) {
    if (!j.at("emit_intervals").is_boolean()) fail("cantor/emit_intervals", "expected a boolean");
    c.emit_intervals = j.at("emit_intervals").get<bool>();
  }
  if (j.count("interval_emit_limit"))
    c.interval_emit_limit =
        static_cast<std::size_t>(get_int(j.at("interval_emit_limit"), "cantor/interval_emit_limit"));
  return c;
}

CapacityConfigFile parse_capacity(const json& j) {
  require_keys(j, "capacity",
               {"lambda", "k", "alphas", "level", "freq_cutoff", "max_iters", "eidlin_n_max"});
  CapacityConfigFile c;
  c.lambda = get_rational(j.at("lambda"), "capacity/lambda");
  if (j.count("k")) c.k = static_cast<int>(get_int(j.at("k"), "capacity/k"));
  get_list(j.at("alphas"), "capacity/alphas", [&](const json& v, const std::string& p) {
    c.alphas.push_back(get_num(v, p));
  });
  if (j.count("level")) c.level = static_cast<int>(get_int(j.at("level"), "capacity/level"));
  if (j.count("freq_cutoff")) c.freq_cutoff = get_int(j.at("freq_cutoff"), "capacity/freq_cutoff");
  if (j.count("max_iters")) c.max_iters = static_cast<int>(get_int(j.at("max_iters"), "capacity/max_iters"));
  if (j.count("eidlin_n_max"))
    c.eidlin_n_max = static_cast<int>(get_int(j.at("eidlin_n_max"), "capacity/eidlin_n_max"));
  return c;
}

VerifyConfigFile parse_verify(const json& j) {
  require_keys(j, "verify", {"grid", "trials", "max_support", "max_freq"});
  VerifyConfigFile c;
  if (j.count("grid")) {
    c.grid.clear();
    get_list(j.at("grid"), "verify/grid", [&](const json& v, const std::string& p) {
      require_keys(v, p, {"p", "beta"});
      c.grid.push_back({get_num(v.at("p"), p + "/p"), get_num(v.at("beta"), p + "/beta")});
    });
  }
  if (j.count("trials")) c.trials = static_cast<int>(get_int(j.at("trials"), "verify/trials"));
  if (j.count("max_support"))
    c.max_support = static_cast<int>(get_int(j.at("max_support"), "verify/max_support"));
  if (j.count("max_freq")) c.max_freq = get_int(j.at("max_freq"), "verify/max_freq");
  return c;
}

}  // namespace

Config parse_config(const json& j, const std::string& command) {
  if (!j.is_object()) throw std::runtime_error("config error at '/': expected an object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (k != "scan" && k != "cantor" && k != "capacity" && k != "verify")
      throw std::runtime_error("config error at '/" + k + "': unknown key");
  }
  if (!j.count(command))
    throw std::runtime_error("config error at '/': missing block for command '" + command + "'");
  Config c;
  c.command = command;
  c.raw = j;
  if (command == "scan")
    c.scan = parse_scan(j.at(command));
  else if (command == "cantor")
    c.cantor = parse_cantor(j.at(command));
  else if (command == "capacity")
    c.capacity = parse_capacity(j.at(command));
  else if (command == "verify")
    c.verify = parse_verify(j.at(command));
  else
    throw std::runtime_error("unknown command '" + command + "'");
  return c;
}

Config load_config(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("config parse failure in " + path + ": " + e.what());
  }
  return parse_config(j, command);
}

std::string config_hash(const json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cyclab::cli
