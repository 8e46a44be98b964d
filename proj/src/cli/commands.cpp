#include "cyclab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>

#include "cyclab/cli/report.hpp"
#include "cyclab/cyclicity.hpp"
#include "cyclab/kernels.hpp"
#include "cyclab/rng.hpp"

namespace cyclab::cli {

namespace {

namespace fs = std::filesystem;

std::string verdict_name(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Diverging: return "diverging";
    case SeriesVerdict::Bounded: return "bounded";
    case SeriesVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string trend_name(Trend t) {
  switch (t) {
    case Trend::Decaying: return "decaying";
    case Trend::Plateau: return "plateau";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string lam_str(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace

std::vector<std::string> cmd_scan(const Config& cfg, const RunOptions& opt) {
  const auto& sc = cfg.scan;
  kernels::set_worker_count(opt.workers);
  const std::string hash = config_hash(cfg.raw);

  struct Point {
    double p, beta;
    Rational lambda;
  };
  std::vector<Point> grid;
  for (double p : sc.p_values)
    for (double beta : sc.beta_values)
      for (const auto& lam : sc.lambdas) grid.push_back({p, beta, lam});

  struct PointResult {
    ThresholdReport thr;
    double dim = 0.0;
    Certificate cert;
    ScanReport scan;
    std::string error;  // non-empty when the point failed validation
  };
  std::vector<PointResult> results(grid.size());

  // grid points are independent; collection order is the loop order below,
  // so the worker schedule never shows in the artifacts
#ifdef CYCLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::int64_t gi = 0; gi < static_cast<std::int64_t>(grid.size()); ++gi) {
    const auto& pt = grid[static_cast<std::size_t>(gi)];
    PointResult out;
    try {
      const SpaceParams params(pt.p, pt.beta);
      out.thr = dimension_thresholds(pt.p, pt.beta);
      auto scheme = std::make_shared<const CantorScheme>(pt.lambda, 1);
      out.dim = scheme->dimension();
      const IntervalUnion e = scheme->level_intervals(scheme->n0() + sc.level_offset);
      const GapProfile gaps = gap_profile(e);
      // open only gaps whose ramps the Fourier truncation can resolve; the
      // microscopic structural gaps stay inside the zero plateau
      std::size_t resolvable = 0;
      for (const auto& g : gaps.gaps)
        if (g.len_d() >= 24.0 / static_cast<double>(sc.f_truncation)) ++resolvable;
      const PiecewiseLinear f =
          prescribed_zero_function(gaps, sc.ramp_fraction, std::max<std::size_t>(1, resolvable));
      const FourierSeq fseq = pwl_fourier(f, sc.f_truncation);
      const MeasureCoeffs mu = MeasureCoeffs::digit_product(scheme, sc.digit_tol);
      CertificateConfig cc;
      cc.poly_norm_cap = sc.poly_norm_cap;
      out.cert = noncyclicity_certificate(fseq, mu, params, sc.certificate_degree, cc);
      out.scan = cyclicity_scan(fseq, params, sc.degrees);
    } catch (const std::exception& ex) {
      out.error = ex.what();
    }
    results[static_cast<std::size_t>(gi)] = std::move(out);
  }

  CsvWriter csv(fs::path(opt.out_dir) / "scan.csv",
                {"p", "beta", "lambda", "dim", "cyclic_below", "noncyclic_above", "degree",
                 "error", "certificate", "trend"});
  nlohmann::json data = nlohmann::json::array();
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const auto& pt = grid[gi];
    const auto& r = results[gi];
    nlohmann::json pj;
    pj["p"] = pt.p;
    pj["beta"] = pt.beta;
    pj["lambda"] = {pt.lambda.num, pt.lambda.den};
    if (!r.error.empty()) {
      pj["failure"] = r.error;
      data.push_back(std::move(pj));
      continue;
    }
    pj["dim"] = r.dim;
    pj["cyclic_below"] = r.thr.cyclic_below;
    pj["noncyclic_above"] = r.thr.noncyclic_above;
    pj["certificate"] = r.cert.bound;
    pj["trend"] = trend_name(r.scan.trend);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.scan.rows) {
      csv.row({fmt_double(pt.p), fmt_double(pt.beta), lam_str(pt.lambda), fmt_double(r.dim),
               fmt_double(r.thr.cyclic_below), fmt_double(r.thr.noncyclic_above),
               std::to_string(row.degree), fmt_double(row.error), fmt_double(r.cert.bound),
               trend_name(r.scan.trend)});
      rows.push_back({{"degree", row.degree},
                      {"error", row.error},
                      {"iters", row.solver_iters},
                      {"converged", row.converged}});
    }
    pj["rows"] = std::move(rows);
    data.push_back(std::move(pj));
  }
  csv.close();
  write_json(fs::path(opt.out_dir) / "scan.json",
             report_wrapper("scan", hash, opt.seed, std::move(data)));
  write_manifest(fs::path(opt.out_dir) / "manifest.json", "scan", hash, opt.seed,
                 {"scan.csv", "scan.json"});
  return {"scan.csv", "scan.json", "manifest.json"};
}

std::vector<std::string> cmd_cantor(const Config& cfg, const RunOptions& opt) {
  const auto& cc = cfg.cantor;
  kernels::set_worker_count(opt.workers);
  const std::string hash = config_hash(cfg.raw);

  CsvWriter csv(fs::path(opt.out_dir) / "cantor.csv",
                {"lambda", "k", "N", "nu", "count_log2", "l_log2", "p_log2", "alpha",
                 "hcover_log2"});
  nlohmann::json data = nlohmann::json::array();
  for (const auto& lam : cc.lambdas) {
    for (int k : cc.ks) {
      const CantorScheme s(lam, k);
      nlohmann::json sj;
      sj["lambda"] = {lam.num, lam.den};
      sj["k"] = k;
      sj["n0"] = s.n0();
      sj["dimension"] = s.dimension();
      nlohmann::json levels = nlohmann::json::array();
      for (int N = s.n0(); N <= s.n0() + cc.max_level_offset; ++N) {
        nlohmann::json lj;
        lj["N"] = N;
        lj["nu"] = s.nu(N);
        lj["count_log2"] = s.level_count_log2(N);
        lj["l_log2"] = s.log2_lN(N);
        lj["p_log2"] = s.log2_pN(N);
        for (double a : cc.h_alphas) {
          const double hv = s.h_cover_log2(N, HFunction::power(a));
          csv.row({lam_str(lam), std::to_string(k), std::to_string(N), std::to_string(s.nu(N)),
                   std::to_string(s.level_count_log2(N)), fmt_double(s.log2_lN(N)),
                   std::to_string(s.log2_pN(N)), fmt_double(a), fmt_double(hv)});
          lj["hcover_log2"][fmt_double(a)] = hv;
        }
        if (cc.emit_intervals &&
            s.level_count_log2(N) <= 62 &&
            (std::uint64_t{1} << s.level_count_log2(N)) <= cc.interval_emit_limit) {
          lj["intervals"] = interval_union_json(s.level_intervals(N));
        }
        levels.push_back(std::move(lj));
      }
      sj["levels"] = std::move(levels);
      data.push_back(std::move(sj));
    }
  }
  csv.close();
  write_json(fs::path(opt.out_dir) / "cantor.json",
             report_wrapper("cantor", hash, opt.seed, std::move(data)));
  write_manifest(fs::path(opt.out_dir) / "manifest.json", "cantor", hash, opt.seed,
                 {"cantor.csv", "cantor.json"});
  return {"cantor.csv", "cantor.json", "manifest.json"};
}

std::vector<std::string> cmd_capacity(const Config& cfg, const RunOptions& opt) {
  const auto& cap = cfg.capacity;
  kernels::set_worker_count(opt.workers);
  const std::string hash = config_hash(cfg.raw);

  auto scheme = std::make_shared<const CantorScheme>(cap.lambda, cap.k);
  CsvWriter csv(fs::path(opt.out_dir) / "capacity.csv",
                {"lambda", "k", "alpha", "level", "energy_equal", "energy_opt", "lower_evidence",
                 "solver_converged", "eidlin_verdict", "eidlin_sum_log2"});
  nlohmann::json data = nlohmann::json::array();
  for (double a : cap.alphas) {
    CapacityConfig ccfg;
    ccfg.level = cap.level;
    ccfg.freq_cutoff = cap.freq_cutoff;
    ccfg.max_iters = cap.max_iters;
    ccfg.eidlin_N_max = cap.eidlin_n_max;
    const CapacityReport rep = capacity_bounds(scheme, a, ccfg);
    const double last_sum = rep.upper_evidence.log2_partial_sums.empty()
                                ? kLogZero
                                : rep.upper_evidence.log2_partial_sums.back();
    csv.row({lam_str(cap.lambda), std::to_string(cap.k), fmt_double(a),
             std::to_string(rep.level), fmt_double(rep.truncated_energy_equal_weights),
             fmt_double(rep.truncated_energy_optimized), fmt_double(rep.lower_evidence),
             rep.solver_converged ? "1" : "0", verdict_name(rep.upper_evidence.verdict),
             fmt_double(last_sum)});
    nlohmann::json aj;
    aj["alpha"] = a;
    aj["level"] = rep.level;
    aj["energy_equal"] = rep.truncated_energy_equal_weights;
    aj["energy_opt"] = rep.truncated_energy_optimized;
    aj["lower_evidence"] = rep.lower_evidence;
    aj["solver_converged"] = rep.solver_converged;
    aj["solver_iters"] = rep.solver_iters;
    aj["eidlin_verdict"] = verdict_name(rep.upper_evidence.verdict);
    aj["eidlin_partial_sums_log2"] = rep.upper_evidence.log2_partial_sums;
    data.push_back(std::move(aj));
  }
  csv.close();
  write_json(fs::path(opt.out_dir) / "capacity.json",
             report_wrapper("capacity", hash, opt.seed, std::move(data)));
  write_manifest(fs::path(opt.out_dir) / "manifest.json", "capacity", hash, opt.seed,
                 {"capacity.csv", "capacity.json"});
  return {"capacity.csv", "capacity.json", "manifest.json"};
}

namespace {

FourierSeq random_seq(Rng& rng, int max_support, std::int64_t max_freq) {
  FourierSeq s;
  const int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_support)));
  for (int i = 0; i < count; ++i) {
    const std::int64_t n = rng.integer(-max_freq, max_freq);
    s.add(n, rng.complex_in_disk());
  }
  if (s.empty()) s.set(0, 1.0);
  return s;
}

PiecewiseLinear random_pwl(Rng& rng) {
  const int k = 3 + static_cast<int>(rng.below(6));
  std::vector<double> xs, vs;
  double x = rng.uniform() * 0.1;
  for (int i = 0; i < k; ++i) {
    xs.push_back(x);
    vs.push_back(rng.uniform(-2.0, 2.0));
    x += 0.01 + rng.uniform() * (0.9 / k);
    if (x >= 1.0) break;
  }
  if (xs.size() < 2) {
    xs = {0.0, 0.5};
    vs = {1.0, -1.0};
  }
  return PiecewiseLinear(xs, vs);
}

}  // namespace

std::vector<std::string> cmd_verify(const Config& cfg, const RunOptions& opt) {
  const auto& vc = cfg.verify;
  kernels::set_worker_count(opt.workers);
  const std::string hash = config_hash(cfg.raw);

  CsvWriter csv(fs::path(opt.out_dir) / "verify.csv",
                {"suite", "p", "beta", "trial", "lhs", "rhs", "pass"});
  nlohmann::json summary;
  const std::vector<std::string> suites = {"hoelder", "submult", "interpolation", "supderiv"};
  for (std::size_t si = 0; si < suites.size(); ++si) {
    const std::string& suite = suites[si];
    std::int64_t passes = 0, total = 0;
    for (std::size_t gi = 0; gi < vc.grid.size(); ++gi) {
      const auto& g = vc.grid[gi];
      const SpaceParams params(g.p, g.beta);
      for (int t = 0; t < vc.trials; ++t) {
        Rng rng = Rng::stream(opt.seed, (si * vc.grid.size() + gi) * static_cast<std::uint64_t>(vc.trials) + static_cast<std::uint64_t>(t));
        double lhs = 0.0, rhs = 0.0;
        if (suite == "hoelder") {
          const FourierSeq s = random_seq(rng, vc.max_support, vc.max_freq);
          const FourierSeq u = random_seq(rng, vc.max_support, vc.max_freq);
          lhs = std::abs(pair(s, u));
          rhs = weighted_norm(s, params) * weighted_norm(u, params.conjugate());
        } else if (suite == "submult") {
          const FourierSeq f = random_seq(rng, vc.max_support, vc.max_freq);
          const FourierSeq s = random_seq(rng, vc.max_support, vc.max_freq);
          lhs = weighted_norm(multiply(f, s), params);
          rhs = weighted_norm(f, SpaceParams(1.0, g.beta)) * weighted_norm(s, params);
        } else if (suite == "interpolation") {
          const FourierSeq f = random_seq(rng, vc.max_support, vc.max_freq);
          const auto rep = check_interpolation(f, params);
          lhs = rep.lhs;
          rhs = rep.rhs;
        } else {
          const PiecewiseLinear g2 = random_pwl(rng);
          const double beta2 = rng.uniform(0.0, 0.45);
          const auto rep = sup_derivative_bound(g2, beta2);
          lhs = rep.partial_sums.empty() ? 0.0 : rep.partial_sums.back();
          rhs = rep.bound;
        }
        const bool pass = lhs <= rhs * (1.0 + 1e-9) + 1e-9;
        passes += pass ? 1 : 0;
        ++total;
        csv.row({suite, fmt_double(g.p), fmt_double(g.beta), std::to_string(t), fmt_double(lhs),
                 fmt_double(rhs), pass ? "1" : "0"});
      }
    }
    summary[suite] = {{"passes", passes}, {"total", total}};
  }
  csv.close();
  write_json(fs::path(opt.out_dir) / "verify.json",
             report_wrapper("verify", hash, opt.seed, std::move(summary)));
  write_manifest(fs::path(opt.out_dir) / "manifest.json", "verify", hash, opt.seed,
                 {"verify.csv", "verify.json"});
  return {"verify.csv", "verify.json", "manifest.json"};
}

std::vector<std::string> run_command(const Config& cfg, const RunOptions& opt) {
  std::filesystem::create_directories(opt.out_dir);
  if (cfg.command == "scan") return cmd_scan(cfg, opt);
  if (cfg.command == "cantor") return cmd_cantor(cfg, opt);
  if (cfg.command == "capacity") return cmd_capacity(cfg, opt);
  if (cfg.command == "verify") return cmd_verify(cfg, opt);
  throw std::runtime_error("unknown command: " + cfg.command);
}

}  // namespace cyclab::cli
