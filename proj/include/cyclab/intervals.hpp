// Closed arcs and finite interval unions on the circle R/Z with exact dyadic
// endpoint arithmetic. Cantor level intervals have length
//   l_N = sum_{j>=N} (2^-nu_j - 2^-2^{j+1}),
// an infinite series of dyadic terms. A length is carried as
//   base + mult * T(key),
// where base is the exact dyadic partial sum over the complete series pairs
// inside the resolution cap and T(key) > 0 is the common remainder of every
// level of one scheme cut at the same pair index (bounded by tail_bound).
// Lengths sharing a key therefore compare exactly through (base, mult);
// lengths with different keys compare through the dyadic margin. A
// comparison neither route can decide throws instead of rounding.

#pragma once

#include <cstdint>
#include <vector>

#include "cyclab/dyadic.hpp"

namespace cyclab {

struct ArcLen {
  Dyadic base;
  std::uint64_t tail_key = 0;  // 0: exact dyadic length
  int tail_mult = 0;
  double tail_bound = 0.0;  // certified 0 < T(key) <= tail_bound when key != 0

  static ArcLen exact(Dyadic d) { return ArcLen{d, 0, 0, 0.0}; }
  double to_double() const { return base.to_double(); }
  // |true length - base| bound
  double slack() const { return tail_key ? std::abs(tail_mult) * tail_bound : 0.0; }
  ArcLen operator+(const ArcLen& o) const;
};

// -1 / 0 / +1; throws on an undecidable tail tie
int cmp_len(const ArcLen& a, const ArcLen& b);
// d <= base + mult T
bool le_len(const Dyadic& d, const ArcLen& len);

struct Arc {
  Dyadic start;   // in [0, 1)
  ArcLen len;     // in (0, 1]

  double start_d() const { return start.to_double(); }
  double len_d() const { return len.to_double(); }
};

class IntervalUnion {
 public:
  IntervalUnion() = default;
  // Arcs are normalized: reduced mod 1, sorted, overlapping/touching arcs
  // merged (the wrap-around pair included).
  explicit IntervalUnion(std::vector<Arc> arcs);

  // Convenience for exactly representable double endpoints [a, b], 0<=a<b<=1.
  static IntervalUnion from_unit_doubles(const std::vector<std::pair<double, double>>& arcs);
  static IntervalUnion full_circle();

  bool empty() const { return arcs_.empty(); }
  bool is_full_circle() const;
  std::size_t size() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  double total_length() const;

  // Exact point membership for dyadic points (closed arcs).
  bool contains_point(const Dyadic& x) const;
  // Exact containment of every arc of `inner` in some arc of *this.
  bool contains(const IntervalUnion& inner) const;

  IntervalUnion unite(const IntervalUnion& o) const;

 private:
  std::vector<Arc> arcs_;  // sorted by start, pairwise disjoint, non-wrapping
                           // except possibly the last arc
};

// Exact circular Minkowski sum; pair count is bounded by `pair_budget`
// (throws budget_error beyond it).
IntervalUnion minkowski_sum(const IntervalUnion& a, const IntervalUnion& b,
                            std::size_t pair_budget = std::size_t{1} << 26);
IntervalUnion k_fold_sum(const IntervalUnion& a, int k,
                         std::size_t pair_budget = std::size_t{1} << 26);

struct GapProfile {
  // complementary arcs sorted by non-increasing length, ties by increasing
  // start coordinate
  std::vector<Arc> gaps;
  // r_n = 2pi - sum_{k<=n} |gap_k| (T-metric, i.e. unit lengths scaled by 2pi)
  std::vector<double> r;
};

// Complement structure of a proper closed union (throws on the full circle).
GapProfile gap_profile(const IntervalUnion& e);

// Diagnostic sequence r_n * n^{1/alpha - 1}; trend toward 0 witnesses strong
// alpha-measure 0. Entry 0 uses the convention 0^0 = 1.
std::vector<double> strong_measure_trend(const GapProfile& g, double alpha);

}  // namespace cyclab
