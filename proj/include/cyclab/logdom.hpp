// Log2-domain arithmetic for doubly exponential quantities (interval lengths
// l_N, branching products p_N0...p_N) that underflow double precision almost
// immediately. A quantity x > 0 is carried as log2(x); x = 0 is -inf.

#pragma once

#include <cmath>
#include <limits>

namespace cyclab {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log2(2^a + 2^b), stable for wildly different magnitudes.
inline double log2_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

// log2(2^a - 2^b); requires a > b.
inline double log2_sub(double a, double b) {
  if (b == kLogZero) return a;
  return a + std::log2(-std::expm1((b - a) * M_LN2)) ;
}

// log2 of h(t) for t given in the log domain.
inline double log2_pow(double log2_t, double exponent) { return exponent * log2_t; }

}  // namespace cyclab
