#include "cyclab/cyclicity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cyclab/kernels.hpp"

namespace cyclab {

namespace {

struct DenseSeq {
  std::int64_t lo = 0;
  std::vector<cplx> a;  // a[i] = coefficient at lo + i
  cplx at(std::int64_t n) const {
    const std::int64_t i = n - lo;
    if (i < 0 || i >= static_cast<std::int64_t>(a.size())) return {};
    return a[static_cast<std::size_t>(i)];
  }
};

DenseSeq densify(const FourierSeq& f) {
  DenseSeq d;
  if (f.empty()) return d;
  d.lo = f.min_freq();
  d.a.assign(static_cast<std::size_t>(f.max_freq() - f.min_freq() + 1), cplx{});
  for (const auto& [n, v] : f.entries()) d.a[static_cast<std::size_t>(n - d.lo)] = v;
  return d;
}

// residual r(n) = delta_{n0} - (P * f)(n) over the full support window
std::vector<cplx> residual(const DenseSeq& f, const Eigen::VectorXcd& p, std::int64_t N,
                           std::int64_t wlo, std::int64_t whi) {
  std::vector<cplx> r(static_cast<std::size_t>(whi - wlo + 1), cplx{});
  for (std::int64_t n = wlo; n <= whi; ++n) {
    cplx acc = n == 0 ? cplx{1.0} : cplx{};
    for (std::int64_t m = -N; m <= N; ++m) {
      const cplx fv = f.at(n - m);
      if (fv != cplx{}) acc -= p[static_cast<Eigen::Index>(m + N)] * fv;
    }
    r[static_cast<std::size_t>(n - wlo)] = acc;
  }
  return r;
}

double exact_objective(const std::vector<cplx>& r, std::int64_t wlo, const SpaceParams& params) {
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double m = std::abs(r[i]);
    if (m == 0.0) continue;
    acc += std::pow(m * params.weight(wlo + static_cast<std::int64_t>(i)), params.p);
  }
  return std::pow(acc, 1.0 / params.p);
}

// weighted least squares normal equations: (A^H U A) x = A^H U e_0 where
// A[n][m] = f(n-m); assembled in fixed chunks of n so the accumulation order
// is independent of the thread count
void solve_weighted_ls(const DenseSeq& f, const std::vector<double>& u, std::int64_t N,
                       std::int64_t wlo, std::int64_t whi, Eigen::VectorXcd& x) {
  const std::int64_t M = 2 * N + 1;
  const std::int64_t rows = whi - wlo + 1;
  constexpr std::int64_t kGramChunk = 512;
  const std::int64_t chunks = (rows + kGramChunk - 1) / kGramChunk;
  std::vector<Eigen::MatrixXcd> gpart(static_cast<std::size_t>(chunks));
  std::vector<Eigen::VectorXcd> bpart(static_cast<std::size_t>(chunks));
#ifdef CYCLAB_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(M, M);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(M);
    Eigen::VectorXcd row(M);
    const std::int64_t a0 = wlo + c * kGramChunk;
    const std::int64_t b0 = std::min(whi + 1, a0 + kGramChunk);
    for (std::int64_t n = a0; n < b0; ++n) {
      const double un = u[static_cast<std::size_t>(n - wlo)];
      if (un == 0.0) continue;
      bool any = false;
      for (std::int64_t m = -N; m <= N; ++m) {
        const cplx fv = f.at(n - m);
        row[static_cast<Eigen::Index>(m + N)] = fv;
        any = any || fv != cplx{};
      }
      if (!any) continue;
      G.noalias() += un * (row.conjugate() * row.transpose()).eval();
      if (n == 0) b.noalias() += un * row.conjugate();
    }
    gpart[static_cast<std::size_t>(c)] = std::move(G);
    bpart[static_cast<std::size_t>(c)] = std::move(b);
  }
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(M, M);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(M);
  for (std::int64_t c = 0; c < chunks; ++c) {
    G += gpart[static_cast<std::size_t>(c)];
    b += bpart[static_cast<std::size_t>(c)];
  }
  x = G.ldlt().solve(b);
}

}  // namespace

ApproxResult best_approx(const FourierSeq& f, const SpaceParams& params, std::int64_t N,
                         const SolverConfig& cfg, const FourierSeq* warm_start) {
  if (f.empty()) throw std::invalid_argument("best_approx: f must be nonzero");
  if (!(params.p >= 1.0 && params.p <= 2.0)) throw std::invalid_argument("best_approx: 1 <= p <= 2");
  if (N < 0) throw std::invalid_argument("best_approx: N >= 0");

  const DenseSeq fd = densify(f);
  const std::int64_t wlo = std::min<std::int64_t>(0, -N + f.min_freq());
  const std::int64_t whi = std::max<std::int64_t>(0, N + f.max_freq());
  const std::int64_t M = 2 * N + 1;
  const std::size_t W = static_cast<std::size_t>(whi - wlo + 1);

  std::vector<double> wpow(W);  // w(n)^p over the window
  for (std::size_t i = 0; i < W; ++i)
    wpow[i] = std::pow(params.weight(wlo + static_cast<std::int64_t>(i)), params.p);

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(M);
  if (warm_start) {
    for (const auto& [n, v] : warm_start->entries())
      if (n >= -N && n <= N) x[static_cast<Eigen::Index>(n + N)] = v;
  }

  ApproxResult best;
  best.degree = N;
  bool has_best = false;
  auto consider = [&](const Eigen::VectorXcd& cand, int iters, bool conv) {
    const auto r = residual(fd, cand, N, wlo, whi);
    const double obj = exact_objective(r, wlo, params);
    if (!has_best || obj < best.error) {
      has_best = true;
      best.error = obj;
      FourierSeq ps;
      for (std::int64_t m = -N; m <= N; ++m) ps.set(m, cand[static_cast<Eigen::Index>(m + N)]);
      best.coefficients = std::move(ps);
      best.solver_iters = iters;
    }
    best.converged = conv;
  };

  if (params.p == 2.0) {
    std::vector<double> u = wpow;  // u_n = w(n)^2
    Eigen::VectorXcd sol;
    solve_weighted_ls(fd, u, N, wlo, whi, sol);
    consider(sol, 1, true);
    if (warm_start) consider(x, 1, true);
    return best;
  }

  // IRLS: u_n = w^p (|r_n|^2 + eps^2)^{(p-2)/2}, eps on a decade schedule
  if (warm_start) consider(x, 0, false);
  auto r = residual(fd, x, N, wlo, whi);
  double prev_obj = exact_objective(r, wlo, params);
  if (!warm_start) prev_obj = std::numeric_limits<double>::infinity();
  double eps = cfg.smoothing_start;
  bool converged = false;
  int it = 0;
  std::vector<double> u(W);
  for (; it < cfg.max_iters; ++it) {
    for (std::size_t i = 0; i < W; ++i) {
      const double m2 = std::norm(r[i]) + eps * eps;
      u[i] = wpow[i] * std::pow(m2, (params.p - 2.0) / 2.0);
    }
    Eigen::VectorXcd sol;
    solve_weighted_ls(fd, u, N, wlo, whi, sol);
    x = sol;
    r = residual(fd, x, N, wlo, whi);
    const double obj = exact_objective(r, wlo, params);
    consider(x, it + 1, false);
    const bool at_floor = eps <= cfg.smoothing_floor * (1.0 + 1e-12);
    if (at_floor && std::isfinite(prev_obj) &&
        std::abs(prev_obj - obj) <= cfg.rel_tol * std::max(1.0, obj)) {
      converged = true;
      ++it;
      break;
    }
    prev_obj = obj;
    eps = std::max(cfg.smoothing_floor, eps * cfg.smoothing_decay);
  }
  best.converged = converged;
  best.solver_iters = it;
  return best;
}

ScanReport cyclicity_scan(const FourierSeq& f, const SpaceParams& params,
                          const std::vector<std::int64_t>& degrees, const ScanConfig& cfg) {
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] <= degrees[i - 1]) throw std::invalid_argument("cyclicity_scan: degrees increasing");
  ScanReport rep;
  const FourierSeq* warm = nullptr;
  for (std::int64_t N : degrees) {
    ApproxResult res = best_approx(f, params, N, cfg.solver, warm);
    rep.rows.push_back(std::move(res));
    warm = &rep.rows.back().coefficients;
  }
  const std::size_t n = rep.rows.size();
  if (n >= 3) {
    const double e1 = rep.rows[n - 3].error, e2 = rep.rows[n - 2].error, e3 = rep.rows[n - 1].error;
    const double hi = std::max({e1, e2, e3}), lo = std::min({e1, e2, e3});
    if (hi - lo <= cfg.plateau_rel_tol * std::max(hi, 1e-300)) {
      rep.trend = Trend::Plateau;
      rep.plateau_level = (e1 + e2 + e3) / 3.0;
      return rep;
    }
  }
  if (n >= 2 && rep.rows.back().error <= cfg.decay_factor * rep.rows.front().error)
    rep.trend = Trend::Decaying;
  return rep;
}

Certificate noncyclicity_certificate(const FourierSeq& f, const MeasureCoeffs& mu,
                                     const SpaceParams& params, std::int64_t N,
                                     const CertificateConfig& cfg) {
  if (params.q_is_infinite()) throw std::invalid_argument("certificate: needs p > 1");
  if (!mu.errors_certified()) throw std::invalid_argument("certificate: mu lacks certified errors");
  if (N < 0) throw std::invalid_argument("certificate: N >= 0");
  const double q = params.q();
  Certificate cert;
  cert.valid_degree = N;
  cert.poly_norm_cap = cfg.poly_norm_cap;
  const std::int64_t F = f.support_radius();
  cert.window = N + F;

  // rho_m = sum_k f(k) mu^(-m-k), |m| <= N, with propagated coefficient errors
  kernels::KahanAcc rq;
  for (std::int64_t m = -N; m <= N; ++m) {
    cplx val{};
    double err = 0.0;
    for (const auto& [k, fv] : f.entries()) {
      const auto [mv, me] = mu.coeff(-m - k);
      val += fv * mv;
      err += std::abs(fv) * me;
    }
    const double mag = std::abs(val) + err;
    rq.add(std::pow(mag, q) * std::pow(params.weight(m), -q));
  }
  cert.residual_dual_norm = std::pow(rq.sum, 1.0 / q);
  cert.residual_slack = cfg.poly_norm_cap * cert.residual_dual_norm;

  kernels::KahanAcc nq;
  for (std::int64_t n = -cert.window; n <= cert.window; ++n) {
    const auto [mv, me] = mu.coeff(n);
    const double mag = std::abs(mv) + me;
    nq.add(std::pow(mag, q) * std::pow(params.weight(n), -q));
  }
  cert.mu_norm = std::pow(nq.sum, 1.0 / q);

  const auto [m0, e0] = mu.coeff(0);
  const double numer = std::abs(m0) - e0 - cert.residual_slack;
  cert.bound = cert.mu_norm > 0.0 ? std::max(0.0, numer / cert.mu_norm) : 0.0;
  return cert;
}

NewmanPsiReport newman_psi(const GapProfile& gaps, int n, double epsilon, double alpha,
                           const SpaceParams& params, std::int64_t norm_cutoff) {
  if (n < 1 || static_cast<std::size_t>(n) > gaps.gaps.size())
    throw std::invalid_argument("newman_psi: need 1 <= n <= gap count");
  if (!(epsilon > 0.0) || !(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("newman_psi: epsilon > 0, alpha in (0,1]");
  const double nn = static_cast<double>(n);
  const double r_n = gaps.r[static_cast<std::size_t>(n - 1)];
  if (!(r_n < epsilon * std::pow(nn, 1.0 - 1.0 / alpha)))
    throw std::invalid_argument("newman_psi: precondition r_n < eps n^{1-1/alpha} fails");
  if (!(epsilon * std::pow(nn, -1.0 / alpha) < 1.0))
    throw std::invalid_argument("newman_psi: precondition eps n^{-1/alpha} < 1 fails");

  // ramp depth in the T metric and in unit coordinates
  const double depth_t = epsilon * std::pow(nn, -1.0 / alpha);
  const double depth_u = depth_t / (2.0 * M_PI);
  const double slope_t = std::pow(nn, 1.0 / alpha) / epsilon;  // = 1/depth as psi drops 1

  // the first n gaps, ordered by position; breakpoints are rounded one ulp
  // into the gap so psi stays exactly 1 on the complement (and on E)
  std::vector<Arc> sel(gaps.gaps.begin(), gaps.gaps.begin() + n);
  std::sort(sel.begin(), sel.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  std::vector<double> xs, vs;
  auto push = [&](double x, double v) {
    x = std::min(std::max(x, 0.0), std::nextafter(1.0, 0.0));
    if (!xs.empty() && x <= xs.back()) return;  // degenerate corner collapsed
    xs.push_back(x);
    vs.push_back(v);
  };
  for (const auto& g : sel) {
    const double a = std::nextafter(g.start_d(), 2.0);
    const double b_raw = g.start_d() + g.len.to_double();
    if (b_raw > 1.0 + 1e-12)
      throw std::invalid_argument("newman_psi: wrap-around gap unsupported, rotate the set");
    const double b = std::nextafter(std::min(b_raw, 1.0), -1.0);
    const double len = b - a;
    if (len <= 0.0) continue;
    push(a, 1.0);
    if (len >= 2.0 * depth_u) {
      push(a + depth_u, 0.0);
      push(b - depth_u, 0.0);
    } else {
      const double mid_val = std::max(0.0, 1.0 - slope_t * (len / 2.0) * 2.0 * M_PI);
      push(a + len / 2.0, mid_val);
    }
    push(b, 1.0);
  }
  if (xs.size() < 2) throw std::invalid_argument("newman_psi: degenerate gap geometry");
  if (xs[0] > 0.0) {
    // anchor the plateau at 0 unless a gap starts there
    xs.insert(xs.begin(), 0.0);
    vs.insert(vs.begin(), 1.0);
  }
  PiecewiseLinear psi(xs, vs);

  NewmanPsiReport rep{psi, n, epsilon, alpha, r_n, 0, 0, 0, 0, 0, 0, 0, 0, false};
  rep.psi_l2_sq = psi.integral_square();
  rep.dpsi_l2_sq = psi.integral_slope_square() / (4.0 * M_PI * M_PI);

  // ||psi||_{p,beta}: partial sum to the cutoff plus the slope-jump tail
  const double p = params.p;
  const double beta = params.beta;
  const double env = psi.coeff_envelope_constant();  // |psi^(m)| <= env/m^2
  const double partial = std::pow(std::abs(psi.fourier_coeff(0)), p) +
                         kernels::map_sum_parallel(1, norm_cutoff + 1, [&](std::int64_t m) {
                           const double w = std::pow(params.weight(m), p);
                           return (std::pow(std::abs(psi.fourier_coeff(m)), p) +
                                   std::pow(std::abs(psi.fourier_coeff(-m)), p)) *
                                  w;
                         });
  // sum_{|m|>M} (env/m^2)^p (1+m)^{p beta} <= 2 env^p 2^{p beta} M^{p beta - 2p + 1}/(2p - p beta - 1)
  const double Md = static_cast<double>(norm_cutoff);
  const double tail_exp = p * beta - 2.0 * p + 1.0;
  const double tail = 2.0 * std::pow(env, p) * std::pow(2.0, p * beta) * std::pow(Md, tail_exp) /
                      (-tail_exp);
  rep.psi_norm_tail = std::pow(partial + tail, 1.0 / p) - std::pow(partial, 1.0 / p);
  rep.psi_norm_pbeta = std::pow(partial + tail, 1.0 / p);

  rep.bound_l2 = 3.0 * epsilon * std::pow(nn, 1.0 - 1.0 / alpha);
  rep.bound_dl2 = 2.0 * std::pow(nn, 1.0 + 1.0 / alpha) / epsilon;
  const double gamma = 2.0 * p * (1.0 - beta) / (2.0 - p);
  const double C = std::max(std::pow(2.0, beta * p),
                            std::pow(2.0, p) * std::pow(1.0 / (gamma - 1.0), 1.0 - p / 2.0));
  const double ap = 0.75 - 1.0 / (2.0 * p) - beta / 2.0;
  const double bp = 1.0 / (2.0 * p) - 0.25 + beta / 2.0;
  rep.constant_Cprime = std::pow(C, 1.0 / p) * std::pow(3.0, ap) * std::pow(5.0, bp);
  rep.bound_pbeta = std::pow(C, 1.0 / p) * std::pow(rep.bound_l2, ap) *
                    std::pow(5.0 * std::pow(nn, 1.0 + 1.0 / alpha) / epsilon, bp);
  rep.bounds_hold = rep.psi_l2_sq <= rep.bound_l2 && rep.dpsi_l2_sq <= rep.bound_dl2 &&
                    rep.psi_norm_pbeta <= rep.bound_pbeta;
  return rep;
}

FourierSeq mollify(const FourierSeq& s, double h) {
  if (!(h > 0.0 && h < 0.5)) throw std::invalid_argument("mollify: 0 < h < 1/2");
  FourierSeq out;
  for (const auto& [n, v] : s.entries()) {
    double dh;
    if (n == 0) {
      dh = 1.0 / (2.0 * M_PI);
    } else {
      const double x = static_cast<double>(n) * h;
      const double sn = std::sin(x / 2.0);
      dh = 4.0 * sn * sn / (x * x) / (2.0 * M_PI);
    }
    out.set(n, v * dh);
  }
  return out;
}

PiecewiseLinear prescribed_zero_function(const GapProfile& gaps, double ramp_fraction,
                                         std::size_t gap_count) {
  if (!(ramp_fraction > 0.0 && ramp_fraction <= 0.5))
    throw std::invalid_argument("prescribed_zero_function: ramp_fraction in (0, 1/2]");
  std::vector<Arc> sel = gaps.gaps;
  if (gap_count > 0 && gap_count < sel.size()) sel.resize(gap_count);  // profile is length-sorted
  std::sort(sel.begin(), sel.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  std::vector<double> xs, vs;
  auto push = [&](double x, double v) {
    x = std::min(std::max(x, 0.0), std::nextafter(1.0, 0.0));
    if (!xs.empty() && x <= xs.back()) return;
    xs.push_back(x);
    vs.push_back(v);
  };
  for (const auto& g : sel) {
    const double a = std::nextafter(g.start_d(), 2.0);
    const double b_raw = g.start_d() + g.len.to_double();
    if (b_raw > 1.0 + 1e-12)
      throw std::invalid_argument("prescribed_zero_function: wrap-around gap unsupported");
    const double b = std::nextafter(std::min(b_raw, 1.0), -1.0);
    const double len = b - a;
    if (len <= 0.0) continue;
    push(a, 0.0);
    push(a + ramp_fraction * len, 1.0);
    if (ramp_fraction < 0.5) push(b - ramp_fraction * len, 1.0);
    push(b, 0.0);
  }
  if (xs.empty() || xs[0] > 0.0) {
    xs.insert(xs.begin(), 0.0);
    vs.insert(vs.begin(), 0.0);
  }
  return PiecewiseLinear(xs, vs);
}

LipschitzReport lipschitz_approximant_check(const GapProfile& gaps, const SpaceParams& params,
                                            const std::vector<double>& epsilons,
                                            std::int64_t norm_cutoff) {
  if (!(params.beta >= 0.0 && params.beta < 0.5))
    throw std::invalid_argument("lipschitz_approximant_check: 0 <= beta < 1/2");
  LipschitzReport rep;
  rep.exponent = 1.0 - 1.0 / params.p - params.beta;
  rep.exponent_positive = rep.exponent > 0.0;
  const double alpha = (2.0 / params.q()) * (1.0 - params.beta * params.q());
  rep.alpha_used = (alpha > 0.0 && alpha <= 1.0) ? alpha : 0.5;
  const int n = static_cast<int>(gaps.gaps.size());
  for (double eps : epsilons) {
    const auto psi = newman_psi(gaps, n, eps, rep.alpha_used, params, norm_cutoff);
    rep.rows.push_back({eps, psi.psi_norm_pbeta});
  }
  return rep;
}

}  // namespace cyclab
