// Continuous piecewise linear functions on the circle, parameterized by the
// canonical coordinate x in [0,1) (the circle T = R/2piZ is reached through
// t = 2pi x). Breakpoints are strictly increasing; the function is linear
// between consecutive breakpoints and wraps around from the last to the
// first. Fourier coefficients follow the convention
//   g^(n) = (1/2pi) int_T g(t) e^{-int} dt = int_0^1 g(x) e^{-2pi i n x} dx,
// computed in closed form from the slope jumps:
//   g^(n) = -(1/(4 pi^2 n^2)) sum_j (slope jump at x_j) e^{-2pi i n x_j}.

#pragma once

#include <vector>

#include "cyclab/fourier_seq.hpp"

namespace cyclab {

class PiecewiseLinear {
 public:
  // breakpoints strictly increasing in [0,1), at least 2; values finite.
  PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values);

  static PiecewiseLinear constant(double v);
  // The triangle mollifier kernel: peak 1/h at t=0, support [-h, h] in the
  // T-metric, h in (0, 1/2).
  static PiecewiseLinear triangle_kernel(double h);

  std::size_t segment_count() const { return x_.size(); }
  const std::vector<double>& breakpoints() const { return x_; }
  const std::vector<double>& values() const { return v_; }

  double operator()(double x) const;  // x taken mod 1

  double sup_norm() const;
  double sup_slope() const;      // max |dg/dt| over segments (T-metric slope)
  double slope_jump_total() const;  // sum_j |slope jump| in d/dx units

  double integral() const;          // int_0^1 g dx  ( = g^(0) )
  double integral_square() const;   // int_0^1 g^2 dx ( = ||g||_{A^2}^2 by Parseval)
  // int_0^1 (dg/dx)^2 dx; divide by (2pi)^2 for the T-metric derivative.
  double integral_slope_square() const;

  // Exact coefficients for |n| <= N.
  FourierSeq fourier(std::int64_t N) const;
  cplx fourier_coeff(std::int64_t n) const;
  // Certified bound: |g^(n)| <= slope_jump_total() / (4 pi^2 n^2) for n != 0.
  double coeff_envelope_constant() const;

 private:
  std::vector<double> x_, v_;
};

}  // namespace cyclab
