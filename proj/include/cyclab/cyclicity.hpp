// Two-sided computational cyclicity evidence in A^p_beta(T).
//
// Positive side: the norm criterion — f is cyclic iff ||1 - P_n f|| -> 0 for
// some polynomial sequence — is probed by convex best approximation of 1 by
// P*f over degrees N (exact weighted normal equations at p = 2, iteratively
// reweighted least squares with smoothed weights for 1 <= p < 2).
//
// Negative side: a probability measure mu supported in Z(f) with mu in
// A^q_{-beta} forces, for every polynomial P of degree <= N,
//   ||1 - P f||_{p,beta} >= (|mu^(0)| - slack) / ||mu||_{q,-beta,window},
// a degree-limited lower bound. The slack term dominates the residual
// pairing sum_m P^(m) <mu, e_m f> through Hoelder, which requires an
// explicit cap on ||P||_{p,beta}; the cap is part of the certificate and is
// checked against every approximant the solver produces.

#pragma once

#include "cyclab/measures.hpp"
#include "cyclab/spaces.hpp"

namespace cyclab {

struct SolverConfig {
  int max_iters = 500;
  double rel_tol = 1e-10;
  double smoothing_start = 1e-3;
  double smoothing_decay = 0.1;   // per-iteration factor, decade steps
  double smoothing_floor = 1e-12;
};

struct ApproxResult {
  std::int64_t degree = 0;
  double error = 0.0;  // exact objective ||1 - P f||_{p,beta} at `coefficients`
  FourierSeq coefficients;
  int solver_iters = 0;
  bool converged = false;
};

// Minimizes ||1 - P f||_{A^p_beta} over P supported in [-N, N]; 1 <= p <= 2,
// f nonzero. Non-convergence is reported through the flag, never thrown.
ApproxResult best_approx(const FourierSeq& f, const SpaceParams& params, std::int64_t N,
                         const SolverConfig& cfg = {}, const FourierSeq* warm_start = nullptr);

enum class Trend { Decaying, Plateau, Inconclusive };

struct ScanConfig {
  double decay_factor = 0.75;    // decaying when last error <= factor * first
  double plateau_rel_tol = 0.01; // plateau when the last three errors agree
  SolverConfig solver;
};

struct ScanReport {
  std::vector<ApproxResult> rows;
  Trend trend = Trend::Inconclusive;
  double plateau_level = 0.0;  // mean of the last three errors when plateau
};

// Warm-started best_approx over an increasing degree list; errors are
// monotone non-increasing by construction.
ScanReport cyclicity_scan(const FourierSeq& f, const SpaceParams& params,
                          const std::vector<std::int64_t>& degrees, const ScanConfig& cfg = {});

struct Certificate {
  double bound = 0.0;          // lower bound on inf_P ||1 - P f|| over degree <= N
  double mu_norm = 0.0;        // truncated ||mu||_{A^q_{-beta}} upper estimate
  double residual_slack = 0.0; // cap * dual-norm of the residual vector
  double residual_dual_norm = 0.0;
  std::int64_t valid_degree = 0;
  std::int64_t window = 0;     // coefficient window |n| <= window behind mu_norm
  double poly_norm_cap = 0.0;  // claim holds for ||P||_{p,beta} <= cap
};

struct CertificateConfig {
  double poly_norm_cap = 100.0;
};

// Dual-measure obstruction, Hoelder over the finite degree window. Requires
// certified coefficient errors on mu (refuses otherwise) and p > 1.
Certificate noncyclicity_certificate(const FourierSeq& f, const MeasureCoeffs& mu,
                                     const SpaceParams& params, std::int64_t N,
                                     const CertificateConfig& cfg = {});

struct NewmanPsiReport {
  PiecewiseLinear psi;
  int gaps_used = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double r_n = 0.0;            // 2pi-scaled remainder after the used gaps
  double psi_l2_sq = 0.0;      // ||psi||_{A^2}^2 (exact spatial integral)
  double dpsi_l2_sq = 0.0;     // ||psi'||_{A^2}^2
  double psi_norm_pbeta = 0.0; // partial sum plus certified tail
  double psi_norm_tail = 0.0;
  double bound_l2 = 0.0;       // 3 eps n^{1-1/alpha}
  double bound_dl2 = 0.0;      // 2 n^{1+1/alpha} / eps
  double bound_pbeta = 0.0;    // C^{1/p} (3 eps n^{1-1/a})^{a'} (5 n^{1+1/a}/eps)^{b'}
  double constant_Cprime = 0.0;
  bool bounds_hold = false;
};

// psi(x) = max(1 - (n^{1/alpha}/eps) rho(x), 0) with rho the T-metric
// distance to the complement of the first n gaps. Preconditions
// r_n < eps n^{1-1/alpha} and eps n^{-1/alpha} < 1 are enforced.
NewmanPsiReport newman_psi(const GapProfile& gaps, int n, double epsilon, double alpha,
                           const SpaceParams& params, std::int64_t norm_cutoff = 1 << 20);

// Coefficientwise product with the triangle kernel transform
// Delta_h^(0) = 1/2pi, Delta_h^(n) = (1/2pi) 4 sin^2(nh/2)/(nh)^2.
FourierSeq mollify(const FourierSeq& s, double h);

// Piecewise linear f with f = 0 outside the selected gaps (hence on the set
// E behind the profile) and f = 1 on the middle of each; ramps cover
// `ramp_fraction` of the gap from both sides and are rounded one ulp into
// the gap, so the zero set covers E exactly. Only the `gap_count` largest
// gaps are opened (0 = all): leaving microscopic gaps inside the zero
// plateau keeps the slopes moderate, which the Fourier truncations behind
// the certificates depend on. This is the 1 - psi family used to realize
// prescribed zero sets.
PiecewiseLinear prescribed_zero_function(const GapProfile& gaps, double ramp_fraction = 0.25,
                                         std::size_t gap_count = 0);

struct LipschitzRow {
  double epsilon = 0.0;
  double norm = 0.0;  // ||f - 1||_{p,beta} = ||psi||_{p,beta}
};

struct LipschitzReport {
  std::vector<LipschitzRow> rows;
  double exponent = 0.0;  // 1 - 1/p - beta
  bool exponent_positive = false;  // decay only expected when positive
  // (2/q)(1 - beta q) when that lies in (0,1); a fixed fallback otherwise
  // (beta q >= 1 pushes the canonical exponent out of range, in which case
  // the family is still built but no decay is claimed)
  double alpha_used = 0.0;
};

// Lipschitz approximant family f = 1 - psi over an epsilon list; decaying
// norms witness the cyclicity criterion for sets containing the gap
// complement.
LipschitzReport lipschitz_approximant_check(const GapProfile& gaps, const SpaceParams& params,
                                            const std::vector<double>& epsilons,
                                            std::int64_t norm_cutoff = 1 << 20);

}  // namespace cyclab
