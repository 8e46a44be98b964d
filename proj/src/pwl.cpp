#include "cyclab/pwl.hpp"

#include <cmath>
#include <stdexcept>

namespace cyclab {

PiecewiseLinear::PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values)
    : x_(std::move(breakpoints)), v_(std::move(values)) {
  if (x_.size() < 2 || x_.size() != v_.size())
    throw std::invalid_argument("PiecewiseLinear: need >= 2 matching breakpoints/values");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(v_[i]))
      throw std::invalid_argument("PiecewiseLinear: non-finite data");
    if (x_[i] < 0.0 || x_[i] >= 1.0) throw std::invalid_argument("PiecewiseLinear: breakpoint outside [0,1)");
    if (i > 0 && x_[i] <= x_[i - 1]) throw std::invalid_argument("PiecewiseLinear: breakpoints not increasing");
  }
}

PiecewiseLinear PiecewiseLinear::constant(double v) {
  return PiecewiseLinear({0.0, 0.5}, {v, v});
}

PiecewiseLinear PiecewiseLinear::triangle_kernel(double h) {
  if (!(h > 0.0) || !(h < 0.5)) throw std::invalid_argument("triangle_kernel: need 0 < h < 1/2");
  const double w = h / (2.0 * M_PI);  // half-width in unit coordinates
  return PiecewiseLinear({0.0, w, 1.0 - w}, {1.0 / h, 0.0, 0.0});
}

namespace {
// segment i runs from x_i to x_{i+1 mod m} (the last wraps through 1)
struct Seg {
  double x0, len, v0, v1;
};
template <typename F>
void for_each_segment(const std::vector<double>& x, const std::vector<double>& v, F&& f) {
  const std::size_t m = x.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    const double len = (j == 0 ? x[0] + 1.0 : x[j]) - x[i];
    f(Seg{x[i], len, v[i], v[j]});
  }
}
}  // namespace

double PiecewiseLinear::operator()(double xq) const {
  double x = xq - std::floor(xq);
  // find the segment containing x
  const std::size_t m = x_.size();
  std::size_t i = 0;
  if (x < x_[0]) {
    i = m - 1;  // wrap segment
    x += 1.0;
  } else {
    // last breakpoint <= x
    std::size_t lo = 0, hi = m - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (x_[mid] <= x)
        lo = mid;
      else
        hi = mid - 1;
    }
    i = lo;
  }
  const std::size_t j = (i + 1) % m;
  const double xr = (j == 0 ? x_[0] + 1.0 : x_[j]);
  const double t = (x - x_[i]) / (xr - x_[i]);
  return v_[i] + t * (v_[j] - v_[i]);
}

double PiecewiseLinear::sup_norm() const {
  double s = 0.0;
  for (double v : v_) s = std::max(s, std::abs(v));
  return s;
}

double PiecewiseLinear::sup_slope() const {
  double s = 0.0;
  for_each_segment(x_, v_, [&](const Seg& g) {
    s = std::max(s, std::abs(g.v1 - g.v0) / g.len);
  });
  return s / (2.0 * M_PI);  // d/dt = (d/dx) / (2pi)
}

double PiecewiseLinear::slope_jump_total() const {
  double total = 0.0;
  const std::size_t m = x_.size();
  std::vector<double> slope(m);
  for_each_segment(x_, v_, [&, i = std::size_t{0}](const Seg& g) mutable {
    slope[i++] = (g.v1 - g.v0) / g.len;
  });
  for (std::size_t i = 0; i < m; ++i) total += std::abs(slope[i] - slope[(i + m - 1) % m]);
  return total;
}

double PiecewiseLinear::integral() const {
  double s = 0.0;
  for_each_segment(x_, v_, [&](const Seg& g) { s += 0.5 * (g.v0 + g.v1) * g.len; });
  return s;
}

double PiecewiseLinear::integral_square() const {
  double s = 0.0;
  for_each_segment(x_, v_, [&](const Seg& g) {
    s += g.len * (g.v0 * g.v0 + g.v0 * g.v1 + g.v1 * g.v1) / 3.0;
  });
  return s;
}

double PiecewiseLinear::integral_slope_square() const {
  double s = 0.0;
  for_each_segment(x_, v_, [&](const Seg& g) {
    const double sl = (g.v1 - g.v0) / g.len;
    s += sl * sl * g.len;
  });
  return s;
}

namespace {
// n x mod 1 reduced to [-1/2, 1/2]. The 2^26 split keeps n * (high part of x)
// an exact integer product, so the reduced phase carries no error amplified
// by |n x| and large slope jumps stay multiplied by accurate small sines.
double reduced_frac(std::int64_t n, double x) {
  const double xh = std::ldexp(std::nearbyint(std::ldexp(x, 26)), -26);
  const double xl = x - xh;
  const std::int64_t k = std::llround(std::ldexp(xh, 26));
  const __int128 prod = static_cast<__int128>(n) * k;
  const std::int64_t den = std::int64_t{1} << 26;
  std::int64_t r = static_cast<std::int64_t>(prod % den);
  if (r < 0) r += den;
  const double frac = std::ldexp(static_cast<double>(r), -26) + static_cast<double>(n) * xl;
  return frac - std::nearbyint(frac);
}
}  // namespace

cplx PiecewiseLinear::fourier_coeff(std::int64_t n) const {
  if (n == 0) return integral();
  const std::size_t m = x_.size();
  std::vector<double> slope(m);
  for_each_segment(x_, v_, [&, i = std::size_t{0}](const Seg& g) mutable {
    slope[i++] = (g.v1 - g.v0) / g.len;
  });
  // sum_j sigma_j e^{-i phi_j} with sum sigma_j = 0 cancels catastrophically
  // when the jumps are large (steep ramps) and the output is O(1); writing
  // each term as sigma_j (cis(-d_j) - 1) with the stable real part
  // -2 sin^2(d/2) keeps every summand at the scale of its contribution.
  cplx s{};
  for (std::size_t i = 0; i < m; ++i) {
    const double jump = slope[i] - slope[(i + m - 1) % m];
    const double delta = 2.0 * M_PI * reduced_frac(n, x_[i]);
    const double sh = std::sin(delta / 2.0);
    s += jump * cplx{-2.0 * sh * sh, -std::sin(delta)};
  }
  const double nn = static_cast<double>(n);
  return -s / (4.0 * M_PI * M_PI * nn * nn);
}

FourierSeq PiecewiseLinear::fourier(std::int64_t N) const {
  if (N < 0) throw std::invalid_argument("fourier: N >= 0");
  FourierSeq out;
  for (std::int64_t n = -N; n <= N; ++n) out.set(n, fourier_coeff(n));
  return out;
}

double PiecewiseLinear::coeff_envelope_constant() const {
  return slope_jump_total() / (4.0 * M_PI * M_PI);
}

}  // namespace cyclab
