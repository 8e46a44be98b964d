#include <doctest.h>

#include <cmath>

#include "cyclab/intervals.hpp"

using namespace cyclab;

namespace {
IntervalUnion U(const std::vector<std::pair<double, double>>& arcs) {
  return IntervalUnion::from_unit_doubles(arcs);
}
}  // namespace

TEST_CASE("normalization sorts, merges and wraps") {
  const IntervalUnion u = U({{0.5, 0.625}, {0.25, 0.5}, {0.0, 0.125}});
  CHECK(u.size() == 2);
  CHECK(u.arcs()[0].start_d() == 0.0);
  CHECK(u.arcs()[0].len_d() == 0.125);
  CHECK(u.arcs()[1].start_d() == 0.25);
  CHECK(u.arcs()[1].len_d() == 0.375);

  // wrap merge: [7/8, 1) + [0, 1/8] is one arc through zero
  const IntervalUnion w = U({{0.875, 0.984375}, {0.984375, 1.0}}).unite(U({{0.0, 0.125}}));
  CHECK(w.size() == 1);
  CHECK(w.arcs()[0].start_d() == 0.875);
  CHECK(w.arcs()[0].len_d() == 0.25);
}

TEST_CASE("containment and membership are exact") {
  const IntervalUnion u = U({{0.25, 0.5}, {0.75, 0.875}});
  CHECK(u.contains_point(Dyadic::from_double(0.25)));
  CHECK(u.contains_point(Dyadic::from_double(0.5)));  // closed arcs
  CHECK_FALSE(u.contains_point(Dyadic::from_double(0.5078125)));
  CHECK(u.contains(U({{0.3125, 0.4375}})));
  CHECK_FALSE(u.contains(U({{0.3125, 0.53125}})));
  CHECK(IntervalUnion::full_circle().contains(u));
}

TEST_CASE("minkowski sums on pinned examples") {
  // [0, 1/8] + [1/4, 3/8] = [1/4, 1/2]
  const IntervalUnion s1 = minkowski_sum(U({{0.0, 0.125}}), U({{0.25, 0.375}}));
  CHECK(s1.size() == 1);
  CHECK(s1.arcs()[0].start_d() == 0.25);
  CHECK(s1.arcs()[0].len_d() == 0.25);

  // wrap: [15/16, 1) + [3/16, 1/4] lands across zero: [1/8, 5/16]
  const IntervalUnion s2 = minkowski_sum(U({{0.9375, 1.0}}), U({{0.1875, 0.25}}));
  CHECK(s2.size() == 1);
  CHECK(s2.arcs()[0].start_d() == 0.125);
  CHECK(s2.arcs()[0].len_d() == 0.125);
}

TEST_CASE("minkowski sum properties") {
  const IntervalUnion a = U({{0.0, 0.0625}, {0.5, 0.59375}});
  const IntervalUnion b = U({{0.125, 0.15625}, {0.75, 0.8125}});
  const IntervalUnion c = U({{0.3125, 0.34375}});
  // commutative, associative
  CHECK(minkowski_sum(a, b).total_length() == minkowski_sum(b, a).total_length());
  const IntervalUnion lhs = minkowski_sum(minkowski_sum(a, b), c);
  const IntervalUnion rhs = minkowski_sum(a, minkowski_sum(b, c));
  REQUIRE(lhs.size() == rhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    CHECK(lhs.arcs()[i].start == rhs.arcs()[i].start);
    CHECK(lhs.arcs()[i].len.base == rhs.arcs()[i].len.base);
  }
  // monotone in the first operand
  const IntervalUnion a2 = a.unite(U({{0.25, 0.28125}}));
  CHECK(minkowski_sum(a2, b).contains(minkowski_sum(a, b)));
  // k-fold
  CHECK(k_fold_sum(U({{0.0, 0.0625}}), 3).arcs()[0].len_d() == doctest::Approx(0.1875));
  CHECK_THROWS_AS(minkowski_sum(a, IntervalUnion()), std::invalid_argument);
}

TEST_CASE("minkowski sums saturate to the full circle") {
  const IntervalUnion half = U({{0.0, 0.59375}});
  CHECK(minkowski_sum(half, U({{0.25, 0.84375}})).is_full_circle());
  // two half-moons plus a quarter tile the whole circle
  const IntervalUnion a = U({{0.0, 0.25}, {0.5, 0.75}});
  CHECK(minkowski_sum(a, U({{0.0, 0.25}})).is_full_circle());
  CHECK(k_fold_sum(half, 2).is_full_circle());
}

TEST_CASE("gap profile of a wrapping arc") {
  const IntervalUnion e(std::vector<Arc>{
      Arc{Dyadic::from_double(0.75), ArcLen::exact(Dyadic::from_double(0.5))}});
  CHECK(e.size() == 1);
  const GapProfile g = gap_profile(e);
  REQUIRE(g.gaps.size() == 1);
  CHECK(g.gaps[0].start_d() == 0.25);
  CHECK(g.gaps[0].len_d() == 0.5);
}

TEST_CASE("gap profile: single-gap set and tie ordering") {
  // complement of one arc of length 3/4: one gap, r_0 = 2 pi / 4
  const IntervalUnion e = U({{0.75, 1.0}});
  const GapProfile g = gap_profile(e);
  REQUIRE(g.gaps.size() == 1);
  CHECK(g.gaps[0].len_d() == 0.75);
  CHECK(g.r[0] == doctest::Approx(2.0 * M_PI * 0.25).epsilon(1e-14));

  // two equal gaps: deterministic tie order by start coordinate
  const IntervalUnion e2 = U({{0.0, 0.25}, {0.5, 0.75}});
  const GapProfile g2 = gap_profile(e2);
  REQUIRE(g2.gaps.size() == 2);
  CHECK(g2.gaps[0].start_d() == 0.25);
  CHECK(g2.gaps[1].start_d() == 0.75);
  CHECK(g2.r[1] == doctest::Approx(2.0 * M_PI * 0.5).epsilon(1e-12));

  CHECK_THROWS_AS(gap_profile(IntervalUnion::full_circle()), std::invalid_argument);
}

TEST_CASE("gap lengths plus set length close up the circle") {
  const IntervalUnion e = U({{0.0, 0.03125}, {0.25, 0.40625}, {0.625, 0.84375}});
  const GapProfile g = gap_profile(e);
  double gaps = 0.0;
  for (const auto& a : g.gaps) gaps += a.len_d();
  CHECK(2.0 * M_PI * gaps + 2.0 * M_PI * e.total_length() ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("strong measure trend diagnostics") {
  const IntervalUnion e = U({{0.0, 0.015625}, {0.5, 0.515625}});
  const GapProfile g = gap_profile(e);
  const auto t1 = strong_measure_trend(g, 0.5);
  CHECK(t1.back() > 0.0);  // remainder is the set measure, not 0
  // alpha = 1: the sequence is r_n itself
  const auto t2 = strong_measure_trend(g, 1.0);
  for (std::size_t i = 0; i < t2.size(); ++i) CHECK(t2[i] == g.r[i]);
  CHECK_THROWS_AS(strong_measure_trend(g, 0.0), std::invalid_argument);
}
