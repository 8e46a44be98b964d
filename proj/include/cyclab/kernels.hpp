// Data-parallel kernels with serial reference implementations. Every
// parallel reduction here is chunked deterministically: the index range is
// cut into fixed chunks, chunk sums are accumulated locally (Kahan), and the
// chunk results are combined in index order. Output bits therefore do not
// depend on the worker count, which the verify/scan commands rely on for
// byte-identical artifacts.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#ifdef CYCLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace cyclab::kernels {

inline constexpr std::int64_t kChunk = 8192;

void set_worker_count(int n);  // 0 = library default
int worker_count();

struct KahanAcc {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Serial reference: left-to-right compensated sum of f(i), i in [lo, hi).
template <typename F>
double map_sum_serial(std::int64_t lo, std::int64_t hi, F&& f) {
  KahanAcc acc;
  for (std::int64_t i = lo; i < hi; ++i) acc.add(f(i));
  return acc.sum;
}

// Parallel chunked sum; bitwise equal to the same chunking run serially.
template <typename F>
double map_sum_parallel(std::int64_t lo, std::int64_t hi, F&& f) {
  if (hi <= lo) return 0.0;
  const std::int64_t n = hi - lo;
  const std::int64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(chunks));
#ifdef CYCLAB_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t a = lo + c * kChunk;
    const std::int64_t b = std::min(hi, a + kChunk);
    KahanAcc acc;
    for (std::int64_t i = a; i < b; ++i) acc.add(f(i));
    partial[static_cast<std::size_t>(c)] = acc.sum;
  }
  KahanAcc total;
  for (double p : partial) total.add(p);
  return total.sum;
}

// Elementwise parallel fill: out[i - lo] = f(i).
template <typename T, typename F>
void map_fill_parallel(std::int64_t lo, std::int64_t hi, std::vector<T>& out, F&& f) {
  out.resize(static_cast<std::size_t>(hi - lo));
#ifdef CYCLAB_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = lo; i < hi; ++i) out[static_cast<std::size_t>(i - lo)] = f(i);
}

template <typename T, typename F>
void map_fill_serial(std::int64_t lo, std::int64_t hi, std::vector<T>& out, F&& f) {
  out.resize(static_cast<std::size_t>(hi - lo));
  for (std::int64_t i = lo; i < hi; ++i) out[static_cast<std::size_t>(i - lo)] = f(i);
}

// Prefix sums at requested checkpoints (sorted, within [lo, hi]): returns
// S(c) = sum_{i in [lo, c)} f(i) for each checkpoint c, chunk-deterministic.
template <typename F>
std::vector<double> prefix_sums_at(std::int64_t lo, const std::vector<std::int64_t>& checkpoints, F&& f) {
  std::vector<double> out;
  out.reserve(checkpoints.size());
  KahanAcc acc;
  std::int64_t pos = lo;
  for (std::int64_t c : checkpoints) {
    // sum [pos, c) in parallel chunks, then fold into the running total
    const double block = map_sum_parallel(pos, c, f);
    acc.add(block);
    pos = c;
    out.push_back(acc.sum);
  }
  return out;
}

}  // namespace cyclab::kernels
