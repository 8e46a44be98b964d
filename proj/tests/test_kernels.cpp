#include <doctest.h>

#include <atomic>
#include <cmath>
#include <memory>

#include "cyclab/kernels.hpp"
#include "cyclab/measures.hpp"

using namespace cyclab;

TEST_CASE("parallel sums agree with the serial reference") {
  auto term = [](std::int64_t i) {
    const double x = static_cast<double>(i);
    return std::sin(x * 0.001) / (1.0 + x * x * 1e-6);
  };
  for (std::int64_t n : {1, 100, 8192, 8193, 100000}) {
    const double a = kernels::map_sum_serial(0, n, term);
    const double b = kernels::map_sum_parallel(0, n, term);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("parallel reduction is bitwise stable across worker counts") {
  auto term = [](std::int64_t i) {
    const double x = static_cast<double>(i) * 1.7e-4;
    return std::cos(x) * std::exp(-x * 1e-3);
  };
  kernels::set_worker_count(1);
  const double one = kernels::map_sum_parallel(0, 300000, term);
  for (int w : {2, 3, 8}) {
    kernels::set_worker_count(w);
    const double many = kernels::map_sum_parallel(0, 300000, term);
    CHECK(many == one);  // exact: fixed chunking, ordered combine
  }
  kernels::set_worker_count(0);
}

TEST_CASE("parallel fill matches serial fill") {
  std::vector<double> a, b;
  auto f = [](std::int64_t i) { return std::sqrt(static_cast<double>(i) + 0.25); };
  kernels::map_fill_serial(5, 20000, a, f);
  kernels::map_fill_parallel(5, 20000, b, f);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("prefix sums at checkpoints equal direct restarts") {
  auto term = [](std::int64_t i) { return 1.0 / (1.0 + static_cast<double>(i)); };
  const std::vector<std::int64_t> cps{10, 1000, 9000, 9001, 50000};
  const auto sums = kernels::prefix_sums_at(1, cps, term);
  REQUIRE(sums.size() == cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const double direct = kernels::map_sum_serial(1, cps[i], term);
    CHECK(sums[i] == doctest::Approx(direct).epsilon(1e-13));
  }
  // monotone for positive terms
  for (std::size_t i = 1; i < sums.size(); ++i) CHECK(sums[i] >= sums[i - 1]);
}

TEST_CASE("scheme caches are safe under concurrent readers") {
  const CantorScheme s(Rational{1, 3}, 1);
  std::vector<std::int64_t> nu_seq, count_seq;
  for (int j = 1; j <= 40; ++j) nu_seq.push_back(s.nu(j));
  for (int N = s.n0(); N <= 20; ++N) count_seq.push_back(s.level_count_log2(N));

  const CantorScheme fresh(Rational{1, 3}, 1);  // cold cache, hammered in parallel
  std::atomic<int> mismatches{0};
#ifdef CYCLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int t = 0; t < 200; ++t) {
    const int j = 1 + (t * 7) % 40;
    if (fresh.nu(j) != nu_seq[static_cast<std::size_t>(j - 1)]) ++mismatches;
    const int N = fresh.n0() + (t * 3) % 15;
    if (fresh.level_count_log2(N) !=
        count_seq[static_cast<std::size_t>(N - fresh.n0())])
      ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("measure coefficient tables are identical serial vs parallel") {
  auto s = std::make_shared<const CantorScheme>(Rational{1, 3}, 1);
  const MeasureCoeffs mu = MeasureCoeffs::digit_product(s, 1e-6);
  auto gen = [&](std::int64_t n) { return mu.coeff(n).value; };
  std::vector<cplx> a, b;
  kernels::map_fill_serial(1, 2048, a, gen);
  kernels::set_worker_count(4);
  kernels::map_fill_parallel(1, 2048, b, gen);
  kernels::set_worker_count(0);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
