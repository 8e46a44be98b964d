// Serial vs parallel kernel timings on the library's hot loops: measure
// coefficient tables, membership partial sums, and the envelope-weighted
// power sums behind the piecewise-linear norms.

#include <chrono>
#include <cstdio>
#include <memory>

#include "cyclab/cyclicity.hpp"
#include "cyclab/kernels.hpp"

using namespace cyclab;

namespace {

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, double check) {
  std::printf("%-34s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   (checksum %.6g)\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms, check);
}

}  // namespace

int main() {
  std::printf("workers: %d\n", kernels::worker_count());

  {
    auto scheme = std::make_shared<const CantorScheme>(Rational{1, 3}, 1);
    const MeasureCoeffs mu = MeasureCoeffs::digit_product(scheme, 1e-6);
    const std::int64_t M = 1 << 15;
    auto term = [&](std::int64_t n) {
      const auto [v, e] = mu.coeff(n);
      return std::norm(v) * std::pow(1.0 + static_cast<double>(n), -0.55);
    };
    double s1 = 0.0, s2 = 0.0;
    const double t1 = time_ms([&] { s1 = kernels::map_sum_serial(1, M, term); });
    const double t2 = time_ms([&] { s2 = kernels::map_sum_parallel(1, M, term); });
    report("digit-measure energy terms", t1, t2, s1 - s2 + s1);
  }

  {
    const MeasureCoeffs mu = MeasureCoeffs::synthetic_envelope(0.3, 0.6);
    const std::int64_t M = 4'000'000;
    auto term = [&](std::int64_t n) {
      const auto [v, e] = mu.coeff(n);
      return 2.0 * std::pow(std::abs(v), 4.0) * std::pow(1.0 + static_cast<double>(n), -0.4);
    };
    double s1 = 0.0, s2 = 0.0;
    const double t1 = time_ms([&] { s1 = kernels::map_sum_serial(1, M, term); });
    const double t2 = time_ms([&] { s2 = kernels::map_sum_parallel(1, M, term); });
    report("envelope membership partial sum", t1, t2, s1 - s2 + s1);
  }

  {
    // psi-norm style sums: piecewise-linear coefficients over a wide window
    const IntervalUnion e = IntervalUnion::from_unit_doubles(
        {{0.0, 0.03125}, {0.25, 0.28125}, {0.5, 0.53125}, {0.75, 0.78125}});
    const GapProfile gaps = gap_profile(e);
    const PiecewiseLinear f = prescribed_zero_function(gaps);
    const std::int64_t M = 1 << 18;
    auto term = [&](std::int64_t m) {
      const double w = std::pow(1.0 + static_cast<double>(m), 4.0 / 30.0);
      return (std::pow(std::abs(f.fourier_coeff(m)), 4.0 / 3.0) +
              std::pow(std::abs(f.fourier_coeff(-m)), 4.0 / 3.0)) *
             w;
    };
    double s1 = 0.0, s2 = 0.0;
    const double t1 = time_ms([&] { s1 = kernels::map_sum_serial(1, M, term); });
    const double t2 = time_ms([&] { s2 = kernels::map_sum_parallel(1, M, term); });
    report("pwl coefficient power sums", t1, t2, s1 - s2 + s1);
  }

  return 0;
}
