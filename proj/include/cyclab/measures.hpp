// Probability measures on the Cantor-type sets through their Fourier
// coefficients. mu^(n) = int e^{-2 pi i n x} dmu(x) in the unit
// parameterization, so mu^(0) = 1 for probability measures; as an element of
// A^q the distribution has coefficients mu^(n)/(2pi), a factor that cancels
// in every certificate ratio. Each generator returns a value together with a
// certified absolute error bound.
//
// Kinds:
//   digit-product    uniform independent fair bits on the free digits of a
//                    scheme: mu^(n) = prod_{i free} (1 + e^{-2 pi i n/2^{i+1}})/2,
//                    truncated with a certified geometric tail bound
//   level-uniform    uniform density on E_N, equal mass per interval; the sum
//                    over intervals factorizes into the free-digit product
//                    times the uniform tail integral, so it is exact
//   synthetic-envelope  magnitudes (|n|^alpha ln(e|n|)^gamma)^{-1/2}, zero
//                    phases; decay arithmetic only, not an actual measure
//   explicit-list    user-provided table
//
// Generators are pure given n (no memoization state), so a MeasureCoeffs may
// be shared across threads freely.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <ostream>

#include "cyclab/cantor.hpp"
#include "cyclab/fourier_seq.hpp"

namespace cyclab {

struct CoeffValue {
  cplx value;
  double error = 0.0;  // certified |true - value| bound
};

struct Envelope {
  double alpha = 0.0;
  double gamma = 0.0;  // |mu^(n)| <= (|n|^alpha ln(e|n|)^gamma)^{-1/2}, n != 0
  double magnitude(std::int64_t n) const;
};

class MeasureCoeffs {
 public:
  enum class Kind { DigitProduct, LevelUniform, SyntheticEnvelope, ExplicitList };

  static MeasureCoeffs digit_product(std::shared_ptr<const CantorScheme> scheme,
                                     double truncation_tol = 1e-4);
  static MeasureCoeffs level_uniform(std::shared_ptr<const CantorScheme> scheme, int N);
  static MeasureCoeffs synthetic_envelope(double alpha, double gamma);
  static MeasureCoeffs explicit_list(std::map<std::int64_t, CoeffValue> entries,
                                     bool errors_certified);

  CoeffValue coeff(std::int64_t n) const;
  Kind kind() const { return kind_; }
  bool errors_certified() const { return errors_certified_; }
  std::optional<Envelope> envelope() const { return envelope_; }
  const CantorScheme* scheme() const { return scheme_.get(); }

 private:
  MeasureCoeffs() = default;
  Kind kind_ = Kind::ExplicitList;
  bool errors_certified_ = true;
  std::optional<Envelope> envelope_;
  std::shared_ptr<const CantorScheme> scheme_;
  double trunc_tol_ = 1e-4;
  int level_ = 0;
  double level_log2_l_ = kLogZero;
  std::vector<std::int64_t> free_digits_;  // for level-uniform: free digits < 2^N
  std::map<std::int64_t, CoeffValue> table_;
};

// Literal sum over materialized level-N intervals (the brute-force route the
// factorized level_uniform coefficients are validated against in tests).
cplx level_uniform_direct_sum(const CantorScheme& scheme, int N, std::int64_t n,
                              std::size_t interval_budget = std::size_t{1} << 20);

// Coefficient table as CSV rows "n,re,im,error" over |n| <= n_max.
void write_coeff_table_csv(const MeasureCoeffs& mu, std::int64_t n_max, std::ostream& out);

struct SeriesCheckpoint {
  std::int64_t n = 0;
  double sum = 0.0;
  double err = 0.0;  // accumulated certified measurement error
};

struct EnergyReport {
  double alpha = 0.0;
  std::vector<SeriesCheckpoint> partial_sums;
  std::optional<double> tail_bound;  // certified when an envelope exists
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
};

struct SeriesHeuristics {
  double diverge_log2_increment = 3.3219280948873623;  // log2(10) per checkpoint
  double bounded_increment = 1e-6;
  int window = 3;
};

// I_alpha(mu) = sum_{n>=1} |mu^(n)|^2 / (1+n)^{1-alpha}, partial sums with
// measurement error folded in; 0 <= alpha < 1.
EnergyReport alpha_energy(const MeasureCoeffs& mu, double alpha, std::int64_t N_max,
                          const SeriesHeuristics& h = {});

struct MembershipReport {
  double q = 0.0, beta = 0.0;
  std::vector<SeriesCheckpoint> partial_sums;  // sum_{0<|n|<=N} |mu^(n)|^q (1+|n|)^{-beta q}
  std::optional<double> tail_bound;
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  // the sufficient chain I_{1-beta q}(mu) < inf => mu in A^2_{-beta q/2} => mu in A^q_{-beta}
  double chain_energy_partial = 0.0;  // I_{1-beta q} partial sum (= A^2_{-beta q/2} norm^2 sum)
  bool chain_drop_holds = false;      // membership partial <= energy partial (needs |mu^| <= 1)
};

// Partial sums of the A^q_{-beta} membership series; q >= 2, beta >= 0.
MembershipReport membership_Aq(const MeasureCoeffs& mu, double q, double beta, std::int64_t N_max,
                               const SeriesHeuristics& h = {});

struct CapacityConfig {
  int level = -1;               // -1: N0 + 2
  std::int64_t freq_cutoff = 4096;
  int max_iters = 400;
  double rel_tol = 1e-10;
  int eidlin_N_max = -1;        // -1: N0 + 10
  std::size_t interval_budget = std::size_t{1} << 20;
};

struct CapacityReport {
  double alpha = 0.0;
  int level = 0;
  double truncated_energy_equal_weights = 0.0;
  double truncated_energy_optimized = 0.0;
  // 1 / I_alpha^{<=cutoff}(mu*): truncated-energy evidence for a capacity
  // lower bound on E_N (not a certified bound for S_lambda^k itself)
  double lower_evidence = 0.0;
  bool solver_converged = false;
  int solver_iters = 0;
  EidlinReport upper_evidence;  // capacity-zero side
};

// Simplex-constrained quadratic minimization of the truncated energy over
// level-N interval masses (projected gradient), plus the Eidlin verdict.
CapacityReport capacity_bounds(const std::shared_ptr<const CantorScheme>& scheme, double alpha,
                               const CapacityConfig& cfg = {});

}  // namespace cyclab
