// Weighted Fourier sequence space kernel. A^p_beta(T) carries the norm
//   ||S||_{p,beta} = ( sum_n |s(n)|^p w(n)^p )^{1/p},  w(n) = (1+|n|)^beta,
// with the dual space A^q_{-beta} under the pairing <S,T> = sum s(n) t(-n),
// q = p/(p-1). General weights w(n) >= 1 with w(n+k) <= C w(n) w(k) are
// supported through the same interface (power family by default, log family
// ln(e+|n|)^beta as the alternative).

#pragma once

#include <optional>

#include "cyclab/fourier_seq.hpp"
#include "cyclab/pwl.hpp"

namespace cyclab {

struct Weight {
  enum class Kind { Power, Log };
  Kind kind = Kind::Power;
  double beta = 0.0;
  double submult_constant = 1.0;  // C with w(n+k) <= C w(n) w(k)

  static Weight power(double beta);
  static Weight log(double beta);
  double operator()(std::int64_t n) const;
};

struct SpaceParams {
  double p = 2.0;
  double beta = 0.0;
  Weight weight;  // defaults to power(beta)

  SpaceParams(double p, double beta);
  SpaceParams(double p, Weight w);

  bool q_is_infinite() const { return p == 1.0; }
  double q() const;              // Hoelder conjugate, +inf at p = 1
  SpaceParams conjugate() const;  // (q, -beta) with the inverse weight power
};

// ||S||_{A^p_beta}; exact finite sum over the stored support.
double weighted_norm(const FourierSeq& s, const SpaceParams& params);

// Coefficient convolution (f*s)(n) = sum_k f(k) s(n-k).
FourierSeq multiply(const FourierSeq& f, const FourierSeq& s);

// <S,T> = sum_n s(n) t(-n).
cplx pair(const FourierSeq& s, const FourierSeq& t);

// n -> i n s(n); the distributional derivative on T.
FourierSeq derivative(const FourierSeq& s);

// Exact Fourier coefficients of a piecewise linear circle function,
// |n| <= N. Convenience forwarder to PiecewiseLinear::fourier.
FourierSeq pwl_fourier(const PiecewiseLinear& g, std::int64_t N);

struct InterpolationReport {
  double lhs = 0.0;        // ||f||_{p,beta}
  double rhs = 0.0;        // C^{1/p} ||f||_2^{3/2-1/p-beta} (||f||_2+||f'||_2)^{1/p-1/2+beta}
  double constant_C = 0.0; // max(2^{beta p}, 2^p (1/(gamma-1))^{1-p/2}), gamma = 2p(1-beta)/(2-p)
  bool holds = false;
};

// Interpolation inequality between the A^2 pair and A^p_beta; valid for
// 1 <= p < 2, beta >= 0, beta*q <= 1.
InterpolationReport check_interpolation(const FourierSeq& f, const SpaceParams& params);

struct SupDerivativeReport {
  double bound = 0.0;  // ||g||_inf + 2 sqrt((2-2beta)/(1-2beta)) ||g'||_inf
  std::vector<double> partial_sums;  // truncated ||g||_{A^1_beta} at the cutoffs
  std::vector<std::int64_t> cutoffs;
  double margin = 0.0;  // bound - last partial sum
  bool holds = false;   // bound >= every partial sum
};

// Sup-norm control of the A^1_beta norm for Lipschitz g, 0 <= beta < 1/2.
SupDerivativeReport sup_derivative_bound(const PiecewiseLinear& g, double beta,
                                         const std::vector<std::int64_t>& cutoffs = {64, 256, 1024});

// Embedding constant for A^r_beta into A^s_gamma when the inclusion holds;
// std::nullopt when it fails (including the boundary beta-gamma = 1/s-1/r).
std::optional<double> inclusion_constant(double r, double beta, double s, double gamma);

// beta*q > 1 (Banach algebra regime); p = 1 is treated as an algebra for
// every beta >= 0.
bool banach_algebra_check(const SpaceParams& params);

}  // namespace cyclab
