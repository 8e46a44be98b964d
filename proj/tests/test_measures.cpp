#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <cmath>
#include <memory>

#include "cyclab/measures.hpp"

using namespace cyclab;

namespace {
std::shared_ptr<const CantorScheme> scheme(std::int64_t num, std::int64_t den, int k = 1) {
  return std::make_shared<const CantorScheme>(Rational{num, den}, k);
}
}  // namespace

TEST_CASE("digit measure basics: normalization, symmetry, parity zeros") {
  const MeasureCoeffs mu = MeasureCoeffs::digit_product(scheme(1, 2), 1e-6);
  CHECK(mu.coeff(0).value == cplx{1.0});
  CHECK(mu.coeff(0).error == 0.0);
  for (std::int64_t n : {1, 2, 3, 7, 64, 301}) {
    const auto [v, e] = mu.coeff(n);
    const auto [vc, ec] = mu.coeff(-n);
    CHECK(std::abs(vc - std::conj(v)) == 0.0);  // computed by conjugation
    CHECK(ec == e);
    CHECK(std::abs(v) <= 1.0 + e);
    CHECK(e <= 1e-6);
  }
  // digit 0 is free: the factor (1 + e^{-i pi n})/2 kills every odd frequency
  for (std::int64_t n : {1, 3, 5, 7, 9, 1001}) CHECK(std::abs(mu.coeff(n).value) <= 1e-6);
}

TEST_CASE("level-uniform factorized coefficients equal the literal interval sum") {
  for (auto s : {scheme(1, 3), scheme(1, 2), scheme(3, 7)}) {
    const int N = s->n0() + 1;
    const MeasureCoeffs mu = MeasureCoeffs::level_uniform(s, N);
    CHECK(mu.coeff(0).value == cplx{1.0});
    for (std::int64_t n = 1; n <= 64; ++n) {
      const cplx direct = level_uniform_direct_sum(*s, N, n);
      const auto [v, e] = mu.coeff(n);
      CHECK(std::abs(v - direct) <= 1e-13);
    }
  }
}

TEST_CASE("digit and level-uniform coefficients converge together") {
  auto s = scheme(1, 2);
  const MeasureCoeffs digit = MeasureCoeffs::digit_product(s, 1e-8);
  double prev_worst = 1.0;
  for (int N = s->n0(); N <= s->n0() + 2; ++N) {
    const MeasureCoeffs lvl = MeasureCoeffs::level_uniform(s, N);
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 64; ++n)
      worst = std::max(worst, std::abs(digit.coeff(n).value - lvl.coeff(n).value));
    CHECK(worst < prev_worst + 1e-12);
    prev_worst = worst;
  }
  // by level N0+2 the discrepancy sits below truncation + pi n l_N
  const MeasureCoeffs lvl = MeasureCoeffs::level_uniform(s, s->n0() + 2);
  for (std::int64_t n = 1; n <= 64; ++n) {
    const double bound = digit.coeff(n).error +
                         M_PI * static_cast<double>(n) * std::exp2(s->log2_lN(s->n0() + 2));
    CHECK(std::abs(digit.coeff(n).value - lvl.coeff(n).value) <= bound + 1e-15);
  }
}

TEST_CASE("pairing a level-uniform measure matches direct integration") {
  // sum_n P(n) mu^(-n) = int P dmu, evaluated per interval in closed form
  auto s = scheme(1, 3);
  const int N = s->n0() + 1;
  const MeasureCoeffs mu = MeasureCoeffs::level_uniform(s, N);
  const IntervalUnion e = s->level_intervals(N);
  const double l = std::exp2(s->log2_lN(N));

  FourierSeq P;
  P.set(0, 0.7);
  P.set(3, cplx{0.2, -0.4});
  P.set(-5, cplx{-0.1, 0.3});
  P.set(17, 1.1);

  cplx pairing{};
  for (const auto& [n, a] : P.entries()) pairing += a * mu.coeff(-n).value;

  cplx direct{};
  for (const auto& arc : e.arcs()) {
    const double x0 = arc.start_d();
    for (const auto& [n, a] : P.entries()) {
      // (1/l) int_{x0}^{x0+l} e^{2 pi i n x} dx
      if (n == 0) {
        direct += a / static_cast<double>(e.size());
        continue;
      }
      // (e^{iwl} - 1)/(iwl) by series: the direct difference cancels to the
      // last bits when the interval length is ~2^-26
      const cplx iw{0.0, 2.0 * M_PI * static_cast<double>(n)};
      const cplx z = iw * l;
      const cplx ratio = 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
      const cplx seg = std::exp(iw * x0) * ratio;
      direct += a * seg / static_cast<double>(e.size());
    }
  }
  CHECK(std::abs(pairing - direct) <= 1e-10);
}

TEST_CASE("synthetic envelope magnitudes") {
  const MeasureCoeffs mu = MeasureCoeffs::synthetic_envelope(0.3, 0.6);
  CHECK(mu.coeff(1).value == cplx{1.0});  // ln(e) = 1
  CHECK(mu.coeff(0).value == cplx{1.0});
  double prev = 1.0;
  for (std::int64_t n = 1; n <= 4096; n *= 2) {
    const double m = std::abs(mu.coeff(n).value);
    CHECK(m <= prev + 1e-15);
    prev = m;
  }
  CHECK(mu.envelope().has_value());
}

TEST_CASE("explicit lists and certification flags") {
  std::map<std::int64_t, CoeffValue> table{{0, {1.0, 0.0}}, {3, {{0.5, 0.1}, 1e-4}}};
  const MeasureCoeffs mu = MeasureCoeffs::explicit_list(table, true);
  CHECK(mu.coeff(3).value == cplx{0.5, 0.1});
  CHECK(mu.coeff(4).value == cplx{0.0});
  CHECK(mu.errors_certified());
  const MeasureCoeffs raw = MeasureCoeffs::explicit_list(table, false);
  CHECK_FALSE(raw.errors_certified());
}

TEST_CASE("alpha energy: Lebesgue vanishes, point mass grows like the tail sum") {
  const MeasureCoeffs lebesgue = MeasureCoeffs::explicit_list({{0, {1.0, 0.0}}}, true);
  const auto rep = alpha_energy(lebesgue, 0.5, 512);
  CHECK(rep.partial_sums.back().sum == 0.0);
  CHECK(rep.verdict == SeriesVerdict::Bounded);

  std::map<std::int64_t, CoeffValue> dirac;
  for (std::int64_t n = -600; n <= 600; ++n) dirac[n] = {1.0, 0.0};
  const MeasureCoeffs point = MeasureCoeffs::explicit_list(dirac, true);
  const auto rep2 = alpha_energy(point, 0.5, 512);
  double direct = 0.0;
  for (std::int64_t n = 1; n <= 512; ++n) direct += std::pow(1.0 + n, -0.5);
  CHECK(rep2.partial_sums.back().sum == doctest::Approx(direct).epsilon(1e-12));
  CHECK(rep2.partial_sums.back().sum > 0.5 * std::pow(513.0, 0.5));  // ~ n^alpha growth
}

TEST_CASE("alpha energy partial sums are monotone in N and alpha") {
  const MeasureCoeffs mu = MeasureCoeffs::digit_product(scheme(1, 3), 1e-6);
  const auto rep1 = alpha_energy(mu, 0.3, 2048);
  for (std::size_t i = 1; i < rep1.partial_sums.size(); ++i)
    CHECK(rep1.partial_sums[i].sum >= rep1.partial_sums[i - 1].sum);
  const auto rep2 = alpha_energy(mu, 0.5, 2048);
  CHECK(rep2.partial_sums.back().sum >= rep1.partial_sums.back().sum);
  CHECK_THROWS_AS(alpha_energy(mu, 1.0, 64), std::invalid_argument);
}

TEST_CASE("membership series: envelope verdicts follow the integral test") {
  // q = 4, beta = 0.1: gamma q/2 = 1.2 > 1 converges, 0.8 <= 1 diverges
  const auto good = membership_Aq(MeasureCoeffs::synthetic_envelope(0.3, 0.6), 4.0, 0.1, 4096);
  CHECK(good.verdict == SeriesVerdict::Bounded);
  CHECK(good.tail_bound.has_value());
  const auto bad = membership_Aq(MeasureCoeffs::synthetic_envelope(0.3, 0.4), 4.0, 0.1, 4096);
  CHECK(bad.verdict == SeriesVerdict::Diverging);
  CHECK_FALSE(bad.tail_bound.has_value());
  // the sufficient chain: membership partial sums sit below the energy sums
  CHECK(good.chain_drop_holds);
  CHECK(good.partial_sums.back().sum <= good.chain_energy_partial + 1e-12);
}

TEST_CASE("membership of real measures uses the heuristic verdict") {
  const MeasureCoeffs lebesgue = MeasureCoeffs::explicit_list({{0, {1.0, 0.0}}}, true);
  const auto rep = membership_Aq(lebesgue, 4.0, 0.1, 256);
  CHECK(rep.partial_sums.back().sum == 0.0);
  CHECK(rep.verdict == SeriesVerdict::Bounded);
  CHECK_THROWS_AS(membership_Aq(lebesgue, 1.5, 0.1, 64), std::invalid_argument);
}

TEST_CASE("coefficient tables export as CSV") {
  std::ostringstream out;
  write_coeff_table_csv(MeasureCoeffs::digit_product(scheme(1, 2), 1e-6), 4, out);
  const std::string csv = out.str();
  CHECK(csv.rfind("n,re,im,error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header + 9 rows
  CHECK(csv.find("\n0,1,0,0\n") != std::string::npos);    // mu^(0) = 1 exactly
}

TEST_CASE("capacity bounds: optimized energy never exceeds equal weights") {
  auto s = scheme(1, 3);
  CapacityConfig cfg;
  cfg.level = s->n0();       // 4 intervals
  cfg.freq_cutoff = 256;
  cfg.max_iters = 150;
  cfg.eidlin_N_max = s->n0() + 8;
  const auto rep = capacity_bounds(s, 0.45, cfg);
  CHECK(rep.truncated_energy_optimized <= rep.truncated_energy_equal_weights * (1.0 + 1e-12));
  CHECK(rep.lower_evidence > 0.0);
  CHECK(rep.solver_iters >= 1);

  // 1 / I_alpha evidence is non-increasing in alpha for a fixed candidate
  const MeasureCoeffs lvl = MeasureCoeffs::level_uniform(s, s->n0());
  const double e_lo = alpha_energy(lvl, 0.2, 256).partial_sums.back().sum;
  const double e_hi = alpha_energy(lvl, 0.6, 256).partial_sums.back().sum;
  CHECK(1.0 / e_hi <= 1.0 / e_lo * (1.0 + 1e-12));
}

TEST_CASE("capacity evidence across the S_{1/3} threshold") {
  auto s = scheme(1, 3);
  CapacityConfig cfg;
  cfg.level = s->n0() + 1;
  cfg.freq_cutoff = 512;
  cfg.max_iters = 100;
  cfg.eidlin_N_max = s->n0() + 27;  // wide enough to see the true flip
  const auto above = capacity_bounds(s, 0.55, cfg);
  CHECK(above.upper_evidence.verdict == SeriesVerdict::Diverging);  // capacity-zero side
  const auto below = capacity_bounds(s, 0.4, cfg);
  CHECK(below.upper_evidence.verdict == SeriesVerdict::Bounded);
  CHECK(below.lower_evidence > 0.0);  // positive truncated-energy evidence
}
