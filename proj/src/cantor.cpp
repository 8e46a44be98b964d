#include "cyclab/cantor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cyclab {

namespace {
std::atomic<std::uint64_t> g_scheme_counter{1};
}

HFunction HFunction::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("HFunction::power: alpha in (0,1]");
  return HFunction{Kind::Power, alpha, 0.0};
}

HFunction HFunction::log_corrected(double alpha, double gamma) {
  if (!(alpha > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("HFunction::log_corrected: alpha, gamma > 0");
  return HFunction{Kind::LogCorrected, alpha, gamma};
}

double HFunction::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind) {
    case Kind::Power:
      return std::pow(t, alpha);
    case Kind::LogCorrected:
      return std::pow(t, alpha) / std::pow(std::log(M_E / t), gamma);
  }
  return 0.0;
}

double HFunction::log2_at(double log2_t) const {
  switch (kind) {
    case Kind::Power:
      return alpha * log2_t;
    case Kind::LogCorrected: {
      const double ln_e_over_t = 1.0 - log2_t * M_LN2;
      return alpha * log2_t - gamma * std::log2(ln_e_over_t);
    }
  }
  return kLogZero;
}

CantorScheme::CantorScheme(Rational lambda, int k, int j_cap)
    : lambda_(lambda), k_(k), j_cap_(j_cap), id_(g_scheme_counter.fetch_add(1)) {
  if (lambda.den <= 0 || lambda.num < 0 || lambda.num > lambda.den)
    throw std::invalid_argument("CantorScheme: lambda must be rational in [0,1]");
  if (k < 1) throw std::invalid_argument("CantorScheme: k >= 1");
  if (j_cap_ > 62) j_cap_ = 62;  // nu_j overflows int64 past j = 62
  // N0 = least N with 2^j < nu_j < 2^{j+1} for all j >= N (scanned to the cap,
  // construction fails loudly if no such N exists below it)
  int candidate = -1;
  for (int j = j_cap_; j >= 1; --j) {
    const std::int64_t v = nu(j);
    const std::int64_t lo = std::int64_t{1} << j;
    // v < 2^{j+1} phrased overflow-free at j = 62
    if (lo < v && v - lo < lo) {
      candidate = j;
    } else {
      break;
    }
  }
  if (candidate < 0) throw budget_error("CantorScheme: no N0 found below the j cap");
  n0_ = candidate;
}

double CantorScheme::dimension() const {
  return static_cast<double>(lambda_.den - lambda_.num) / static_cast<double>(lambda_.den + lambda_.num);
}

std::int64_t CantorScheme::nu(int j) const {
  if (j < 1) throw std::invalid_argument("nu: j >= 1");
  if (j > 62) throw budget_error("nu: j beyond int64 range");
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (j < static_cast<int>(nu_cache_.size()) && nu_cache_[j] != 0) return nu_cache_[j];
  }
  // nu_j = floor(2^j (1 + a/b + 1/j) - k + 1) + 1 as one exact fraction
  const __int128 p2 = static_cast<__int128>(1) << j;
  const __int128 a = lambda_.num, b = lambda_.den;
  const __int128 numer = p2 * b * j + p2 * a * j + p2 * b - static_cast<__int128>(k_ - 1) * b * j;
  const __int128 denom = b * j;
  const std::int64_t v = static_cast<std::int64_t>(numer / denom) + 1;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (j >= static_cast<int>(nu_cache_.size())) nu_cache_.resize(j + 1, 0);
    nu_cache_[j] = v;
  }
  return v;
}

std::int64_t CantorScheme::log2_pN(int N) const {
  check_level(N);
  return (std::int64_t{1} << (N + 1)) - nu(N);
}

double CantorScheme::log2_lN(int N) const {
  check_level(N);
  // l_N = 2^-nu_N * ( 1 - 2^(nu_N - 2^{N+1}) + sum_{j>N} 2^(nu_N-nu_j) - 2^(nu_N-2^{j+1}) )
  const double nuN = static_cast<double>(nu(N));
  double s = 1.0 - std::exp2(nuN - std::ldexp(1.0, N + 1));
  for (int j = N + 1; j <= j_cap_; ++j) {
    const double term =
        std::exp2(nuN - static_cast<double>(nu(j))) - std::exp2(nuN - std::ldexp(1.0, j + 1));
    s += term;
    if (term < 1e-30) break;
  }
  return -nuN + std::log2(s);
}

Dyadic CantorScheme::level_length_drop(int N) const {
  check_level(N);
  if (N + 1 > 6) throw budget_error("level_length_drop: 2^{N+1} beyond dyadic resolution");
  const int e2 = 1 << (N + 1);
  const std::int64_t v = nu(N);
  if (v > Dyadic::kMaxExp) throw budget_error("level_length_drop: nu_N beyond dyadic resolution");
  return Dyadic::pow2(static_cast<int>(v)) - Dyadic::pow2(e2);
}

ArcLen CantorScheme::level_length(int N) const {
  check_level(N);
  // complete series pairs (2^-nu_j, -2^-2^{j+1}) up to the resolution cut
  // j*; the positive remainder T = sum_{j >= j*} is shared by every level
  // below j*, so lengths of one scheme compare exactly through (base, mult)
  Dyadic base = Dyadic::zero();
  int jstar = j_cap_ + 1;
  for (int j = N; j <= j_cap_; ++j) {
    const std::int64_t vj = nu(j);
    const std::int64_t e2 = j + 1 <= 6 ? (std::int64_t{1} << (j + 1)) : 128;
    if (vj > 120 || e2 > 120) {
      jstar = j;
      break;
    }
    base = base + Dyadic::pow2(static_cast<int>(vj)) - Dyadic::pow2(static_cast<int>(e2));
  }
  if (jstar > j_cap_) return ArcLen::exact(base);
  const int cut = std::max(N, jstar);
  const double bound = 2.0 * std::exp2(-std::min<double>(1000.0, static_cast<double>(nu(cut))));
  return ArcLen{base, id_ * 256 + static_cast<std::uint64_t>(cut), 1,
                std::max(bound, 1e-307)};
}

bool CantorScheme::is_forced(std::int64_t m) const {
  if (m < 2) return false;
  // with nu increasing, m in [2^j, 2^{j+1}) is forced iff m < nu_j
  int j = 0;
  while ((std::int64_t{1} << (j + 1)) <= m) ++j;
  return m < nu(j);
}

std::vector<std::int64_t> CantorScheme::free_digits_below(std::int64_t limit) const {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 0; d < std::min<std::int64_t>(limit, 2); ++d) out.push_back(d);
  for (int j = 1; j <= j_cap_ && (std::int64_t{1} << j) < limit; ++j) {
    const std::int64_t lo = std::max(nu(j), std::int64_t{1} << j);
    const std::int64_t hi = std::min((std::int64_t{1} << (j + 1)), limit);
    for (std::int64_t d = lo; d < hi; ++d) out.push_back(d);
  }
  return out;
}

std::int64_t CantorScheme::level_count_log2(int N) const {
  check_level(N);
  std::int64_t f = 2;
  for (int j = 1; j < N; ++j) f += std::max<std::int64_t>(0, (std::int64_t{1} << (j + 1)) - nu(j));
  return f;
}

IntervalUnion CantorScheme::level_intervals(int N, std::size_t interval_budget) const {
  check_level(N);
  const std::int64_t f = level_count_log2(N);
  if (f >= 63 || (std::uint64_t{1} << f) > interval_budget)
    throw budget_error("level_intervals: interval budget exceeded");
  const ArcLen len = level_length(N);
  std::vector<Arc> arcs;
  arcs.reserve(std::size_t{1} << f);
  for_each_level_start(N, [&](const Dyadic& s) { arcs.push_back(Arc{s, len}); });
  return IntervalUnion(std::move(arcs));
}

double CantorScheme::h_cover_log2(int N, const HFunction& h) const {
  return static_cast<double>(level_count_log2(N)) + h.log2_at(log2_lN(N));
}

void CantorScheme::check_level(int N) const {
  if (N < n0_) throw std::invalid_argument("level below N0");
  if (N > j_cap_) throw budget_error("level beyond the j cap");
}

std::vector<std::int64_t> k_lambda_indices(Rational lambda, int k, std::int64_t max_index) {
  if (max_index < 1) throw std::invalid_argument("k_lambda_indices: max_index >= 1");
  CantorScheme s(lambda, k);
  std::set<std::int64_t> out;
  for (int j = 1; j <= 62 && (std::int64_t{1} << j) <= max_index; ++j) {
    const std::int64_t hi = std::min(s.nu(j) - 1, max_index);
    for (std::int64_t m = std::int64_t{1} << j; m <= hi; ++m) out.insert(m);
  }
  return {out.begin(), out.end()};
}

EidlinReport eidlin_criterion(const CantorScheme& s, double alpha, int N_max, const EidlinConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("eidlin_criterion: 0 < alpha < 1");
  if (N_max < s.n0() + 2) throw std::invalid_argument("eidlin_criterion: N_max >= N0 + 2");
  EidlinReport rep;
  double log2_p_prod = 0.0;
  double S = kLogZero;
  for (int N = s.n0(); N <= N_max; ++N) {
    const double term = -log2_p_prod - alpha * s.log2_lN(N);
    S = log2_add(S, term);
    rep.levels.push_back(N);
    rep.log2_terms.push_back(term);
    rep.log2_partial_sums.push_back(S);
    log2_p_prod += static_cast<double>(s.log2_pN(N));
  }
  const int n = static_cast<int>(rep.log2_partial_sums.size());
  if (n > cfg.window) {
    bool all_big = true, all_small = true;
    for (int i = n - cfg.window; i < n; ++i) {
      const double inc = rep.log2_partial_sums[i] - rep.log2_partial_sums[i - 1];
      all_big = all_big && inc > cfg.diverge_increment;
      all_small = all_small && inc < cfg.bounded_increment;
    }
    if (all_big)
      rep.verdict = SeriesVerdict::Diverging;
    else if (all_small)
      rep.verdict = SeriesVerdict::Bounded;
  }
  return rep;
}

ThresholdReport dimension_thresholds(double p, double beta) {
  if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("dimension_thresholds: 1 < p < 2");
  if (!(beta >= 0.0)) throw std::invalid_argument("dimension_thresholds: beta >= 0");
  const double q = p / (p - 1.0);
  if (!(beta * q <= 1.0)) throw std::invalid_argument("dimension_thresholds: beta q <= 1");
  ThresholdReport r;
  r.cyclic_below = (2.0 / q) * (1.0 - beta * q);
  r.noncyclic_above = 1.0 - beta * q;
  r.k = static_cast<int>(std::floor(q / 2.0));
  r.mixed_bound = std::max(r.cyclic_below * r.k, 1.0 - 2.0 * (r.k + 1) * beta);
  return r;
}

bool verify_sumset_containment_blockwise(const CantorScheme& a, const CantorScheme& b, int N,
                                         int summands) {
  if (summands < 1) throw std::invalid_argument("summands >= 1");
  const std::int64_t width = std::int64_t{1} << N;
  const int max_carry = summands - 1;  // carries stabilize below the summand count
  // achievable carries entering the block above; bottom block sees none
  std::set<int> carry_in = {0};
  for (int j = N - 1; j >= 1; --j) {
    const std::int64_t lo = std::int64_t{1} << j;
    const std::int64_t hi = std::min(width, std::int64_t{2} << j);
    std::vector<std::int64_t> digits;  // block digits, least significant first
    for (std::int64_t d = hi - 1; d >= lo; --d) digits.push_back(d);
    std::vector<int> is_free_a, forced_b;
    for (std::int64_t d : digits) {
      is_free_a.push_back(a.is_forced(d) ? 0 : 1);
      forced_b.push_back(b.is_forced(d) ? 1 : 0);
    }
    const int nfree = static_cast<int>(std::count(is_free_a.begin(), is_free_a.end(), 1));
    if (nfree > 20) throw budget_error("blockwise sumset check: block too wide");
    std::set<int> carry_out;
    std::vector<int> pattern(static_cast<std::size_t>(nfree), 0);
    bool done_patterns = nfree == 0;
    for (;;) {
      for (int cin : carry_in) {
        int c = cin;
        int pi = 0;
        bool ok = true;
        for (std::size_t t = 0; t < digits.size(); ++t) {
          const int d = is_free_a[t] ? pattern[static_cast<std::size_t>(pi)] : 0;
          if (is_free_a[t]) ++pi;
          const int sum = d + c;
          const int bit = sum & 1;
          c = sum >> 1;
          if (forced_b[t] && bit != 0) {
            ok = false;
            break;
          }
        }
        if (!ok) return false;
        if (c > max_carry) throw std::logic_error("carry exceeded bound");
        carry_out.insert(c);
      }
      if (done_patterns) break;
      // odometer over digits 0..summands
      int idx = 0;
      while (idx < nfree) {
        if (++pattern[static_cast<std::size_t>(idx)] <= summands) break;
        pattern[static_cast<std::size_t>(idx)] = 0;
        ++idx;
      }
      if (idx == nfree) break;
    }
    carry_in = carry_out;
  }
  // the carry leaving block j=1 lands on digit 1; digits 0 and 1 are free in
  // every scheme and the final overflow wraps off the circle
  return true;
}

}  // namespace cyclab
