// Cantor-type sets S_lambda^k on R/Z ~ [0,1), built from binary digits with
// the index set
//   K_lambda^k = { m : exists j >= 1, m in [2^j, 2^j(1+lambda+1/j) - k + 1] }
// forced to zero. Level N structure (N >= N0):
//   nu_j = [2^j(1+lambda+1/j) - k + 1] + 1,
//   l_N  = sum_{j>=N} 2^-nu_j - 2^-2^{j+1},
//   E_N  = { sum_{i<2^N} x_i 2^-(i+1) : legal digits } + [0, l_N],
//   p_N  = 2^(2^{N+1} - nu_N) children per level-N interval.
// lambda is taken as an exact rational so the integer parts in nu_j are free
// of floating point boundary errors (2^j(1+lambda+1/j) hits integers).
// l_N and the branching products live in the log2 domain: direct-domain
// values underflow doubles from N ~ 5 on.

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "cyclab/intervals.hpp"
#include "cyclab/logdom.hpp"

namespace cyclab {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// h-functions for cover sums: h(t) = t^alpha, or t^alpha / ln(e/t)^gamma.
struct HFunction {
  enum class Kind { Power, LogCorrected };
  Kind kind = Kind::Power;
  double alpha = 1.0;
  double gamma = 0.0;

  static HFunction power(double alpha);
  static HFunction log_corrected(double alpha, double gamma);
  double operator()(double t) const;
  double log2_at(double log2_t) const;  // log2 h(t) for log-domain t
};

class CantorScheme {
 public:
  // lambda in [0,1] (rational), k >= 1. Throws if no N0 <= j_cap exists.
  CantorScheme(Rational lambda, int k, int j_cap = 64);

  Rational lambda() const { return lambda_; }
  int k() const { return k_; }
  int n0() const { return n0_; }
  // (1 - lambda) / (1 + lambda)
  double dimension() const;

  // nu_j, exact; j >= 1.
  std::int64_t nu(int j) const;
  // log2 p_N = 2^{N+1} - nu_N (positive for N >= N0)
  std::int64_t log2_pN(int N) const;
  // log2 l_N with certified series truncation; N >= N0.
  double log2_lN(int N) const;
  // l_N - l_{N+1} = 2^-nu_N - 2^-2^{N+1}, exact (needs 2^{N+1} <= 126).
  Dyadic level_length_drop(int N) const;
  // l_N as dyadic base + certified remainder bound; needs nu_N <= 120.
  ArcLen level_length(int N) const;

  // digit m is forced to zero (m in K_lambda^k)
  bool is_forced(std::int64_t m) const;
  // free digits below `limit`, increasing
  std::vector<std::int64_t> free_digits_below(std::int64_t limit) const;
  // number of free digits below 2^N (= log2 of the level-N interval count)
  std::int64_t level_count_log2(int N) const;

  // Level-N intervals; interval count 2^F must fit the budget. N >= N0.
  IntervalUnion level_intervals(int N, std::size_t interval_budget = std::size_t{1} << 20) const;
  // Streaming enumeration of level-N starts in increasing order (exact, no
  // materialization); fn(start) is called 2^F times.
  template <typename F>
  void for_each_level_start(int N, F&& fn) const;

  // count_N * h(l_N) in the log2 domain: the cover-sum upper bound at scale l_N.
  double h_cover_log2(int N, const HFunction& h) const;

 private:
  void check_level(int N) const;
  Rational lambda_;
  int k_ = 1;
  int n0_ = 1;
  int j_cap_ = 64;
  std::uint64_t id_ = 0;  // distinguishes tail remainders across instances
  mutable std::mutex cache_mutex_;
  mutable std::vector<std::int64_t> nu_cache_;  // nu_[j], idempotent fill
};

// All m <= max_index lying in some [2^j, 2^j(1+lambda+1/j)-k+1].
std::vector<std::int64_t> k_lambda_indices(Rational lambda, int k, std::int64_t max_index);

struct EidlinConfig {
  double diverge_increment = 3.3219280948873623;  // log2(10)
  double bounded_increment = 1e-6;
  int window = 3;
};

enum class SeriesVerdict { Diverging, Bounded, Inconclusive };

struct EidlinReport {
  std::vector<int> levels;
  std::vector<double> log2_terms;
  std::vector<double> log2_partial_sums;
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
};

// Partial sums of the capacity-zero series sum_N 1/((p_N0...p_{N-1}) l_N^alpha)
// in the log2 domain, with a growth-heuristic verdict (never a proof).
EidlinReport eidlin_criterion(const CantorScheme& s, double alpha, int N_max,
                              const EidlinConfig& cfg = {});

struct ThresholdReport {
  double cyclic_below = 0.0;     // (2/q)(1 - beta q)
  double noncyclic_above = 0.0;  // 1 - beta q
  int k = 0;                     // [q/2]
  double mixed_bound = 0.0;      // max((2/q)(1-beta q) k, 1 - 2(k+1) beta)
};

ThresholdReport dimension_thresholds(double p, double beta);

// Exact verification that `summands` x (level-N set of a) is contained in the
// level-N set of b, done blockwise over the digit blocks with carry
// propagation; covers interval counts far beyond enumeration budgets.
// Requires b to have the same lambda and k_b = k_a + summands - 1 ... any
// schemes may be passed; the check itself is exact for the given pair.
bool verify_sumset_containment_blockwise(const CantorScheme& a, const CantorScheme& b, int N,
                                         int summands);

// --- template implementation ---

template <typename F>
void CantorScheme::for_each_level_start(int N, F&& fn) const {
  check_level(N);
  const std::int64_t width = std::int64_t{1} << N;  // digit count
  if (width > 64) throw budget_error("level starts exceed dyadic resolution");
  const auto free = free_digits_below(width);
  const int nf = static_cast<int>(free.size());
  if (nf >= 64) throw budget_error("level start enumeration too large");
  // counter bit b (LSB) drives the least significant free digit so that
  // increasing counters enumerate starts in increasing order
  std::vector<int> shift(nf);
  for (int b = 0; b < nf; ++b)
    shift[b] = static_cast<int>(width - 1 - free[static_cast<std::size_t>(nf - 1 - b)]);
  const std::uint64_t count = std::uint64_t{1} << nf;
  const int exp = static_cast<int>(width);
  for (std::uint64_t c = 0; c < count; ++c) {
    u128 num = 0;
    for (int b = 0; b < nf; ++b)
      if ((c >> b) & 1u) num += static_cast<u128>(1) << shift[b];
    fn(Dyadic(num, exp));
  }
}

}  // namespace cyclab
