// Deterministic random streams for property sweeps. SplitMix64 is used
// directly instead of <random> distributions so that a (seed, stream) pair
// yields identical bytes on every platform and standard library.

#pragma once

#include <complex>
#include <cstdint>

namespace cyclab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derived stream: independent generator for task `index` of a seeded sweep.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  std::complex<double> complex_in_disk() {
    // rejection-free: uniform modulus^2 and angle
    const double r = std::sqrt(uniform());
    const double t = 2.0 * M_PI * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace cyclab
