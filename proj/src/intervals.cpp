#include "cyclab/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cyclab {

namespace {

const Dyadic kOne = Dyadic(1, 0);

[[noreturn]] void ambiguous() { throw std::logic_error("undecidable tailed-length comparison"); }

int sgn(long long v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

}  // namespace

ArcLen ArcLen::operator+(const ArcLen& o) const {
  ArcLen r;
  r.base = base + o.base;
  if (tail_key == 0) {
    r.tail_key = o.tail_key;
    r.tail_mult = o.tail_mult;
    r.tail_bound = o.tail_bound;
  } else if (o.tail_key == 0 || o.tail_key == tail_key) {
    r.tail_key = tail_key;
    r.tail_mult = tail_mult + (o.tail_key ? o.tail_mult : 0);
    r.tail_bound = std::max(tail_bound, o.tail_bound);
  } else {
    throw std::logic_error("adding lengths with unrelated tails");
  }
  return r;
}

int cmp_len(const ArcLen& a, const ArcLen& b) {
  const int c = a.base.compare(b.base);
  if (c == 0) {
    if (a.tail_key == b.tail_key) return sgn(a.tail_mult - b.tail_mult);
    if (a.tail_key == 0 && b.tail_mult != 0) return -sgn(b.tail_mult);
    if (b.tail_key == 0 && a.tail_mult != 0) return sgn(a.tail_mult);
    if (a.tail_mult == 0 && b.tail_mult == 0) return 0;
    ambiguous();
  }
  const double margin = std::abs(a.base.to_double() - b.base.to_double());
  if (margin > 4.0 * (a.slack() + b.slack())) return c;
  ambiguous();
}

bool le_len(const Dyadic& d, const ArcLen& len) {
  const int c = d.compare(len.base);
  if (c == 0) return len.tail_mult >= 0;
  if (c < 0) {
    if (len.tail_mult >= 0) return true;
    const double margin = len.base.to_double() - d.to_double();
    if (margin > 4.0 * len.slack()) return true;
    ambiguous();
  }
  if (len.tail_mult <= 0) return false;
  const double margin = d.to_double() - len.base.to_double();
  if (margin > 4.0 * len.slack()) return false;
  ambiguous();
}

IntervalUnion::IntervalUnion(std::vector<Arc> arcs) {
  for (auto& a : arcs) {
    if (a.len.base.is_zero() && a.len.tail_mult <= 0)
      throw std::invalid_argument("arc of nonpositive length");
    if (kOne < a.len.base) throw std::invalid_argument("arc longer than the circle");
    a.start = a.start.mod1();
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& x, const Arc& y) { return x.start < y.start; });
  // merge pass: current arc [s, s+len]; next start within reach -> extend
  std::vector<Arc> merged;
  for (const auto& a : arcs) {
    if (!merged.empty()) {
      Arc& prev = merged.back();
      const Dyadic reach_needed = a.start - prev.start;  // >= 0 by sort
      if (le_len(reach_needed, prev.len)) {
        ArcLen cand = ArcLen{reach_needed, 0, 0, 0.0} + a.len;
        if (cmp_len(prev.len, cand) < 0) prev.len = cand;
        continue;
      }
    }
    merged.push_back(a);
  }
  // wrap merge: does the last arc reach the first (through 1)?
  while (merged.size() > 1) {
    const Arc& last = merged.back();
    const Arc& first = merged.front();
    const Dyadic reach_needed = (kOne + first.start) - last.start;
    if (!le_len(reach_needed, last.len)) break;
    ArcLen cand = ArcLen{reach_needed, 0, 0, 0.0} + first.len;
    Arc extended = last;
    if (cmp_len(last.len, cand) < 0) extended.len = cand;
    merged.back() = extended;
    merged.erase(merged.begin());
  }
  if (merged.size() == 1) {
    if (!(merged[0].len.base < kOne)) merged[0] = Arc{Dyadic::zero(), ArcLen::exact(kOne)};
  }
  arcs_ = std::move(merged);
}

IntervalUnion IntervalUnion::from_unit_doubles(const std::vector<std::pair<double, double>>& arcs) {
  std::vector<Arc> v;
  for (const auto& [a, b] : arcs) {
    if (!(b > a)) throw std::invalid_argument("from_unit_doubles: need b > a");
    const Dyadic da = Dyadic::from_double(a);
    const Dyadic db = Dyadic::from_double(b);
    v.push_back(Arc{da, ArcLen::exact(db - da)});
  }
  return IntervalUnion(std::move(v));
}

IntervalUnion IntervalUnion::full_circle() {
  return IntervalUnion({Arc{Dyadic::zero(), ArcLen::exact(kOne)}});
}

bool IntervalUnion::is_full_circle() const {
  return arcs_.size() == 1 && arcs_[0].start.is_zero() && !(arcs_[0].len.base < kOne);
}

double IntervalUnion::total_length() const {
  double s = 0.0;
  for (const auto& a : arcs_) s += a.len.to_double();
  return s;
}

namespace {

// index of the last arc with start <= x (arcs sorted by start); -1 if none
std::ptrdiff_t last_at_or_before(const std::vector<Arc>& arcs, const Dyadic& x) {
  std::ptrdiff_t lo = 0, hi = static_cast<std::ptrdiff_t>(arcs.size()) - 1, ans = -1;
  while (lo <= hi) {
    const std::ptrdiff_t mid = (lo + hi) / 2;
    if (arcs[static_cast<std::size_t>(mid)].start <= x) {
      ans = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return ans;
}

}  // namespace

bool IntervalUnion::contains_point(const Dyadic& xq) const {
  if (arcs_.empty()) return false;
  if (is_full_circle()) return true;
  const Dyadic x = xq.mod1();
  // candidates: the nearest arc starting at or before x, and the last arc
  // reaching x through the wrap
  const std::ptrdiff_t i = last_at_or_before(arcs_, x);
  if (i >= 0 && le_len(x - arcs_[static_cast<std::size_t>(i)].start,
                       arcs_[static_cast<std::size_t>(i)].len))
    return true;
  const Arc& last = arcs_.back();
  return le_len((x + kOne) - last.start, last.len);
}

bool IntervalUnion::contains(const IntervalUnion& inner) const {
  if (inner.empty()) return true;
  if (is_full_circle()) return true;
  for (const auto& ia : inner.arcs_) {
    bool found = false;
    const std::ptrdiff_t idx = last_at_or_before(arcs_, ia.start);
    const std::size_t wrap = arcs_.size() - 1;
    for (const std::size_t oi :
         {idx >= 0 ? static_cast<std::size_t>(idx) : wrap, wrap}) {
      const Arc& oa = arcs_[oi];
      const Dyadic probe = ia.start < oa.start ? ia.start + kOne : ia.start;
      if (probe < oa.start) continue;
      const Dyadic off = probe - oa.start;
      if (!le_len(off, oa.len)) continue;
      // need off + inner length <= outer length
      const ArcLen lhs = ArcLen{off, 0, 0, 0.0} + ia.len;
      if (cmp_len(lhs, oa.len) <= 0) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& o) const {
  std::vector<Arc> all = arcs_;
  all.insert(all.end(), o.arcs_.begin(), o.arcs_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion minkowski_sum(const IntervalUnion& a, const IntervalUnion& b, std::size_t pair_budget) {
  if (a.empty() || b.empty()) throw std::invalid_argument("minkowski_sum: empty operand");
  if (a.size() * b.size() > pair_budget) throw budget_error("minkowski_sum: pair budget exceeded");
  if (a.is_full_circle() || b.is_full_circle()) return IntervalUnion::full_circle();
  std::vector<Arc> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.arcs())
    for (const auto& y : b.arcs()) {
      ArcLen len = x.len + y.len;
      if (kOne < len.base) len = ArcLen::exact(kOne);
      out.push_back(Arc{(x.start + y.start).mod1(), len});
    }
  return IntervalUnion(std::move(out));
}

IntervalUnion k_fold_sum(const IntervalUnion& a, int k, std::size_t pair_budget) {
  if (k < 1) throw std::invalid_argument("k_fold_sum: k >= 1");
  IntervalUnion acc = a;
  for (int i = 1; i < k; ++i) acc = minkowski_sum(acc, a, pair_budget);
  return acc;
}

GapProfile gap_profile(const IntervalUnion& e) {
  if (e.empty()) throw std::invalid_argument("gap_profile: empty set");
  if (e.is_full_circle()) throw std::invalid_argument("gap_profile: full circle has no gaps");
  const auto& arcs = e.arcs();
  GapProfile out;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& cur = arcs[i];
    const Dyadic next_start = i + 1 < arcs.size() ? arcs[i + 1].start : arcs[0].start + kOne;
    const Dyadic base_gap = next_start - (cur.start + cur.len.base);
    Arc gap;
    gap.start = (cur.start + cur.len.base).mod1();
    gap.len = ArcLen{base_gap, cur.len.tail_key, -cur.len.tail_mult, cur.len.tail_bound};
    if (base_gap.is_zero() && gap.len.tail_mult <= 0) continue;  // touching arcs
    out.gaps.push_back(gap);
  }
  std::sort(out.gaps.begin(), out.gaps.end(), [](const Arc& x, const Arc& y) {
    const int c = cmp_len(x.len, y.len);
    if (c != 0) return c > 0;  // non-increasing length
    return x.start < y.start;  // then increasing start
  });
  double covered = 0.0;
  for (const auto& g : out.gaps) {
    covered += g.len.to_double();
    out.r.push_back(2.0 * M_PI * std::max(0.0, 1.0 - covered));
  }
  return out;
}

std::vector<double> strong_measure_trend(const GapProfile& g, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("strong_measure_trend: 0 < alpha <= 1");
  const double e = 1.0 / alpha - 1.0;
  std::vector<double> out;
  for (std::size_t n = 0; n < g.r.size(); ++n) {
    const double scale = (n == 0 && e == 0.0) ? 1.0 : std::pow(static_cast<double>(n), e);
    out.push_back(g.r[n] * (n == 0 && e > 0.0 ? 0.0 : scale));
  }
  return out;
}

}  // namespace cyclab
