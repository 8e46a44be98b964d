#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "cyclab/cyclicity.hpp"
#include "cyclab/rng.hpp"

using namespace cyclab;

namespace {

// For f = 1 - e_1 the optimum has a closed form: the residual r ranges over
// all sequences on the window W = [-N, N+1] with sum(r) = 1 (telescoping), so
// by duality inf ||r||_{p,beta} = ( sum_{n in W} w(n)^{-q} )^{-1/q}.
double shift_difference_optimum(const SpaceParams& params, std::int64_t N) {
  const double q = params.q();
  double s = 0.0;
  for (std::int64_t n = -N; n <= N + 1; ++n) s += std::pow(params.weight(n), -q);
  return std::pow(s, -1.0 / q);
}

double objective_at(const FourierSeq& f, const SpaceParams& params, const FourierSeq& P) {
  return weighted_norm(FourierSeq::unit() - multiply(P, f), params);
}

}  // namespace

TEST_CASE("best approx solves the trivial inversions exactly") {
  for (double p : {2.0, 4.0 / 3.0}) {
    const SpaceParams params(p, 0.1);
    const auto r1 = best_approx(FourierSeq::unit(), params, 0);
    CHECK(r1.error <= 1e-10);
    CHECK(std::abs(r1.coefficients.at(0) - cplx{1.0}) <= 1e-8);

    const auto r2 = best_approx(FourierSeq::character(5), params, 6);
    CHECK(r2.error <= 1e-10);
    CHECK(std::abs(r2.coefficients.at(-5) - cplx{1.0}) <= 1e-8);
  }
  CHECK_THROWS_AS(best_approx(FourierSeq{}, SpaceParams(2.0, 0.0), 4), std::invalid_argument);
}

TEST_CASE("p = 2 matches an independently assembled dense normal solve") {
  const FourierSeq f{{0, 1.0}, {1, -1.0}};
  const SpaceParams params(2.0, 0.0);
  const std::int64_t N = 1;
  // unknowns P(-1), P(0), P(1); residual window [-1, 2]; rows A[n][m] = f(n-m)
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(4, 3);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(4);
  for (int n = -1; n <= 2; ++n) {
    for (int m = -1; m <= 1; ++m) A(n + 1, m + 1) = f.at(n - m);
    b(n + 1) = n == 0 ? 1.0 : 0.0;
  }
  const Eigen::VectorXcd x = (A.adjoint() * A).ldlt().solve(A.adjoint() * b);
  const double direct = (b - A * x).norm();

  const auto res = best_approx(f, params, N);
  CHECK(res.error == doctest::Approx(direct).epsilon(1e-9));
  for (int m = -1; m <= 1; ++m)
    CHECK(std::abs(res.coefficients.at(m) - x(m + 1)) <= 1e-9);
  // closed form for this window: error = (2N+2)^{-1/2}
  CHECK(res.error == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("IRLS reaches the duality optimum for the shift difference") {
  const FourierSeq f{{0, 1.0}, {1, -1.0}};
  for (const SpaceParams params : {SpaceParams(4.0 / 3.0, 0.1), SpaceParams(1.5, 0.3),
                                   SpaceParams(4.0 / 3.0, 0.0)}) {
    for (std::int64_t N : {4, 16}) {
      const auto res = best_approx(f, params, N);
      const double expect = shift_difference_optimum(params, N);
      CHECK(res.converged);
      CHECK(res.error == doctest::Approx(expect).epsilon(5e-6));
      CHECK(res.error >= expect - 1e-12);  // never below the true optimum
    }
  }
}

TEST_CASE("p = 1 endpoint: the best approximant against 1 - e_1 is zero") {
  // any 1 - P f keeps coefficient sum 1 over the window, and the smallest
  // l^1 weight sits at n = 0, so the optimum is exactly 1 (P = 0)
  const FourierSeq f{{0, 1.0}, {1, -1.0}};
  const auto res = best_approx(f, SpaceParams(1.0, 0.3), 4);
  CHECK(res.error >= 1.0 - 1e-12);
  CHECK(res.error <= 1.0 + 1e-9);
}

TEST_CASE("objective is convex along random segments") {
  Rng rng(1234);
  const FourierSeq f{{0, 1.0}, {1, -0.5}, {2, cplx{0.0, 0.25}}};
  const SpaceParams params(1.5, 0.2);
  for (int t = 0; t < 200; ++t) {
    FourierSeq p1, p2;
    for (std::int64_t m = -3; m <= 3; ++m) {
      p1.set(m, rng.complex_in_disk());
      p2.set(m, rng.complex_in_disk());
    }
    const double tt = rng.uniform();
    const FourierSeq mix = p1 * tt + p2 * (1.0 - tt);
    const double lhs = objective_at(f, params, mix);
    const double rhs = tt * objective_at(f, params, p1) + (1.0 - tt) * objective_at(f, params, p2);
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("scan: warm starts keep errors monotone and label the trend") {
  const FourierSeq f{{0, 1.0}, {1, -1.0}};
  const SpaceParams params(4.0 / 3.0, 0.1);
  const auto rep = cyclicity_scan(f, params, {4, 8, 16, 32});
  REQUIRE(rep.rows.size() == 4);
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].error <= rep.rows[i - 1].error + 1e-12);
  CHECK(rep.trend == Trend::Decaying);

  const auto flat = cyclicity_scan(FourierSeq::unit(), params, {2, 4, 6});
  CHECK(flat.trend == Trend::Plateau);
  CHECK(flat.plateau_level <= 1e-9);

  CHECK_THROWS_AS(cyclicity_scan(f, params, {8, 8}), std::invalid_argument);
}

TEST_CASE("certificate: degenerate f pairs to 1 over the measure norm") {
  auto s = std::make_shared<const CantorScheme>(Rational{3, 7}, 1);
  const MeasureCoeffs mu = MeasureCoeffs::digit_product(s, 1e-6);
  const SpaceParams params(4.0 / 3.0, 0.2);
  const Certificate c = noncyclicity_certificate(FourierSeq{}, mu, params, 16);
  CHECK(c.residual_slack == 0.0);
  CHECK(c.bound == doctest::Approx(1.0 / c.mu_norm));
  CHECK(c.bound > 0.0);
}

TEST_CASE("certificate: point masses are useless in the beta q <= 1 regime") {
  const SpaceParams params(4.0 / 3.0, 0.2);
  // point mass at x0 = 1/4, a zero of f = 1 - e_4; |mu^(n)| = 1 for all n
  auto table = std::map<std::int64_t, CoeffValue>{};
  for (std::int64_t n = -4200; n <= 4200; ++n)
    table[n] = {std::polar(1.0, -2.0 * M_PI * 0.25 * static_cast<double>(n)), 0.0};
  const MeasureCoeffs mu = MeasureCoeffs::explicit_list(table, true);
  const FourierSeq f{{0, 1.0}, {4, -1.0}};
  double prev = 1e9;
  for (std::int64_t N : {16, 64, 256}) {
    const Certificate c = noncyclicity_certificate(f, mu, params, N);
    CHECK(c.mu_norm >= 1.0);
    CHECK(c.bound <= prev + 1e-12);
    prev = c.bound;
  }
  // truncated norm grows without bound, so the certificate decays toward 0
  // (slowly: the window norm grows like W^{(1 - beta q)/q} = W^{0.05})
  const Certificate far = noncyclicity_certificate(f, mu, params, 4096 - 4);
  CHECK(far.bound < 0.4);
  CHECK(far.bound < prev);
}

TEST_CASE("certificate refuses uncertified coefficients") {
  const MeasureCoeffs raw = MeasureCoeffs::explicit_list({{0, {1.0, 0.0}}}, false);
  CHECK_THROWS_AS(noncyclicity_certificate(FourierSeq::unit(), raw, SpaceParams(1.5, 0.1), 4),
                  std::invalid_argument);
  const MeasureCoeffs ok = MeasureCoeffs::explicit_list({{0, {1.0, 0.0}}}, true);
  CHECK_THROWS_AS(noncyclicity_certificate(FourierSeq::unit(), ok, SpaceParams(1.0, 0.0), 4),
                  std::invalid_argument);
}

TEST_CASE("certificate is sound against the approximants it covers") {
  auto s = std::make_shared<const CantorScheme>(Rational{3, 7}, 1);
  const SpaceParams params(4.0 / 3.0, 0.2);
  const IntervalUnion e = s->level_intervals(s->n0() + 1);
  const GapProfile gaps = gap_profile(e);
  const PiecewiseLinear f = prescribed_zero_function(gaps, 0.25, 4);  // the 4 wide gaps
  const FourierSeq fseq = pwl_fourier(f, 512);
  const MeasureCoeffs mu = MeasureCoeffs::digit_product(s, 1e-7);
  const Certificate cert = noncyclicity_certificate(fseq, mu, params, 16);
  CHECK(cert.bound > 0.0);
  const auto scan = cyclicity_scan(fseq, params, {4, 8, 16});
  for (const auto& row : scan.rows) {
    CHECK(weighted_norm(row.coefficients, params) <= cert.poly_norm_cap);
    CHECK(row.error >= cert.bound - 1e-9);
  }
}

TEST_CASE("prescribed zero function vanishes exactly on the set") {
  auto s = std::make_shared<const CantorScheme>(Rational{1, 2}, 1);
  const IntervalUnion e = s->level_intervals(s->n0() + 1);
  const PiecewiseLinear f = prescribed_zero_function(gap_profile(e), 0.25);
  for (const auto& a : e.arcs()) {
    CHECK(f(a.start_d()) == 0.0);
    CHECK(f(a.start_d() + a.len_d()) == 0.0);
    CHECK(f(a.start_d() + 0.5 * a.len_d()) == 0.0);
  }
  // and is 1 in the middle of the largest gap
  const GapProfile gaps = gap_profile(e);
  const Arc& g = gaps.gaps.front();
  CHECK(f(g.start_d() + 0.5 * g.len_d()) == doctest::Approx(1.0));
}

TEST_CASE("newman psi: geometry, paper bounds, halving decay") {
  // five intervals of width 2^-16 anchored at dyadic spots
  const IntervalUnion e = IntervalUnion::from_unit_doubles({{0.0, 0.0000152587890625},
                                                            {0.203125, 0.2031402587890625},
                                                            {0.40625, 0.4062652587890625},
                                                            {0.609375, 0.6093902587890625},
                                                            {0.8125, 0.8125152587890625}});
  const GapProfile gaps = gap_profile(e);
  const SpaceParams params(4.0 / 3.0, 0.1);
  const double alpha = 0.3;  // (2/q)(1 - beta q)
  const int n = 5;

  std::vector<double> norms;
  for (double eps : {1.0, 0.5, 0.25}) {
    const auto rep = newman_psi(gaps, n, eps, alpha, params, 1 << 17);
    CHECK(rep.bounds_hold);
    CHECK(rep.psi_l2_sq <= rep.bound_l2);
    CHECK(rep.dpsi_l2_sq <= rep.bound_dl2);
    CHECK(rep.psi_norm_pbeta <= rep.bound_pbeta);
    // psi = 1 on the set, 0 deep inside the big gaps
    const PiecewiseLinear& psi = rep.psi;
    CHECK(psi(0.0) == doctest::Approx(1.0));
    CHECK(psi(0.1) == 0.0);
    norms.push_back(rep.psi_norm_pbeta);
  }
  // halving ratio tracks 2^{-(1 - 1/p - beta)} = 2^{-0.15}
  const double target = std::pow(2.0, -0.15);
  for (std::size_t i = 1; i < norms.size(); ++i) {
    const double ratio = norms[i] / norms[i - 1];
    CHECK(ratio > target * 0.75);
    CHECK(ratio < target * 1.25);
  }
  CHECK_THROWS_AS(newman_psi(gaps, 5, 1e-9, alpha, params), std::invalid_argument);
  CHECK_THROWS_AS(newman_psi(gaps, 5, 300.0, alpha, params), std::invalid_argument);
}

TEST_CASE("lipschitz approximant norms decay when the exponent is positive") {
  const IntervalUnion e = IntervalUnion::from_unit_doubles({{0.0, 0.0000152587890625},
                                                            {0.25, 0.2500152587890625},
                                                            {0.5, 0.5000152587890625},
                                                            {0.75, 0.7500152587890625}});
  const GapProfile gaps = gap_profile(e);
  const SpaceParams params(4.0 / 3.0, 0.1);
  const auto rep = lipschitz_approximant_check(gaps, params, {1.0, 0.5, 0.25}, 1 << 16);
  CHECK(rep.exponent == doctest::Approx(0.15));
  CHECK(rep.exponent_positive);
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].norm < rep.rows[i - 1].norm);

  const SpaceParams flat(4.0 / 3.0, 0.3);  // 1 - 1/p - beta < 0
  const auto rep2 = lipschitz_approximant_check(gaps, flat, {0.5}, 1 << 14);
  CHECK_FALSE(rep2.exponent_positive);
  CHECK(rep2.alpha_used == 0.5);  // canonical exponent out of range, fallback
  CHECK(rep2.rows.size() == 1);
}

TEST_CASE("mollifier multiplies by the triangle transform") {
  const FourierSeq s{{0, 2.0 * M_PI}};
  const FourierSeq sh = mollify(s, 0.1);
  CHECK(std::abs(sh.at(0) - cplx{1.0}) <= 1e-15);

  Rng rng(77);
  FourierSeq r;
  for (int i = 0; i < 12; ++i) r.add(rng.integer(-40, 40), rng.complex_in_disk());
  const FourierSeq rh = mollify(r, 0.05);
  for (const auto& [nn, v] : rh.entries())
    CHECK(std::abs(v) <= std::abs(r.at(nn)) / (2.0 * M_PI) + 1e-15);

  // Delta_h^(n) -> 1/2pi as h -> 0 at fixed n
  const FourierSeq probe{{7, 1.0}};
  double prev_gap = 1e9;
  for (double h : {0.2, 0.02, 0.002}) {
    const double gap = std::abs(mollify(probe, h).at(7) - cplx{1.0 / (2.0 * M_PI)});
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }

  // consistency with the pwl route: multiplying by Delta_h^ coefficientwise
  const PiecewiseLinear tri = PiecewiseLinear::triangle_kernel(0.05);
  const FourierSeq trif = pwl_fourier(tri, 40);
  for (const auto& [nn, v] : rh.entries())
    CHECK(std::abs(v - r.at(nn) * trif.at(nn)) <= 1e-12);

  CHECK_THROWS_AS(mollify(s, 0.6), std::invalid_argument);
}
