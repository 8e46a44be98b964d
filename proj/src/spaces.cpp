#include "cyclab/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace cyclab {

Weight Weight::power(double beta) { return Weight{Kind::Power, beta, 1.0}; }

Weight Weight::log(double beta) {
  // ln(e+|n+k|) <= 2 ln(e+|n|) ln(e+|k|) since both factors are >= 1,
  // so C = 2^beta works for beta >= 0.
  return Weight{Kind::Log, beta, std::pow(2.0, beta)};
}

double Weight::operator()(std::int64_t n) const {
  const double a = static_cast<double>(n < 0 ? -n : n);
  switch (kind) {
    case Kind::Power:
      return std::pow(1.0 + a, beta);
    case Kind::Log:
      return std::pow(std::log(M_E + a), beta);
  }
  return 1.0;
}

SpaceParams::SpaceParams(double p_, double beta_) : p(p_), beta(beta_), weight(Weight::power(beta_)) {
  if (!(p >= 1.0)) throw std::invalid_argument("SpaceParams: p >= 1 required");
}

SpaceParams::SpaceParams(double p_, Weight w) : p(p_), beta(w.beta), weight(w) {
  if (!(p >= 1.0)) throw std::invalid_argument("SpaceParams: p >= 1 required");
}

double SpaceParams::q() const {
  if (q_is_infinite()) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

SpaceParams SpaceParams::conjugate() const {
  if (q_is_infinite()) throw std::invalid_argument("conjugate: q is infinite at p = 1");
  Weight w = weight;
  w.beta = -w.beta;
  SpaceParams out(q(), w);
  return out;
}

double weighted_norm(const FourierSeq& s, const SpaceParams& params) {
  double acc = 0.0;
  for (const auto& [n, a] : s.entries()) {
    const double term = std::abs(a) * params.weight(n);
    acc += std::pow(term, params.p);
  }
  return std::pow(acc, 1.0 / params.p);
}

FourierSeq multiply(const FourierSeq& f, const FourierSeq& s) {
  FourierSeq r;
  for (const auto& [k, fa] : f.entries())
    for (const auto& [m, sa] : s.entries()) r.add(k + m, fa * sa);
  return r;
}

cplx pair(const FourierSeq& s, const FourierSeq& t) {
  // iterate the smaller support
  const FourierSeq& a = s.size() <= t.size() ? s : t;
  const FourierSeq& b = s.size() <= t.size() ? t : s;
  cplx acc{};
  for (const auto& [n, v] : a.entries()) acc += v * b.at(-n);
  return acc;
}

FourierSeq derivative(const FourierSeq& s) {
  FourierSeq r;
  for (const auto& [n, a] : s.entries()) r.set(n, cplx{0.0, static_cast<double>(n)} * a);
  return r;
}

FourierSeq pwl_fourier(const PiecewiseLinear& g, std::int64_t N) {
  return g.fourier(N);
}

InterpolationReport check_interpolation(const FourierSeq& f, const SpaceParams& params) {
  const double p = params.p, beta = params.beta;
  if (!(p >= 1.0 && p < 2.0)) throw std::invalid_argument("check_interpolation: 1 <= p < 2");
  if (!(beta >= 0.0)) throw std::invalid_argument("check_interpolation: beta >= 0");
  if (p > 1.0 && !(beta * params.q() <= 1.0))
    throw std::invalid_argument("check_interpolation: beta*q <= 1");
  if (p == 1.0 && beta != 0.0) throw std::invalid_argument("check_interpolation: p=1 needs beta=0");

  const double gamma = 2.0 * p * (1.0 - beta) / (2.0 - p);
  const double C = std::max(std::pow(2.0, beta * p),
                            std::pow(2.0, p) * std::pow(1.0 / (gamma - 1.0), 1.0 - p / 2.0));
  const SpaceParams l2(2.0, 0.0);
  const double n2 = weighted_norm(f, l2);
  const double d2 = weighted_norm(derivative(f), l2);
  InterpolationReport rep;
  rep.constant_C = C;
  rep.lhs = weighted_norm(f, params);
  rep.rhs = std::pow(C, 1.0 / p) * std::pow(n2, 1.5 - 1.0 / p - beta) *
            std::pow(n2 + d2, 1.0 / p - 0.5 + beta);
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12) || rep.lhs == 0.0;
  return rep;
}

SupDerivativeReport sup_derivative_bound(const PiecewiseLinear& g, double beta,
                                         const std::vector<std::int64_t>& cutoffs) {
  if (!(beta >= 0.0 && beta < 0.5)) throw std::invalid_argument("sup_derivative_bound: 0 <= beta < 1/2");
  SupDerivativeReport rep;
  rep.bound = g.sup_norm() + 2.0 * std::sqrt((2.0 - 2.0 * beta) / (1.0 - 2.0 * beta)) * g.sup_slope();
  rep.cutoffs = cutoffs;
  double acc = std::abs(g.fourier_coeff(0));
  std::int64_t done = 0;
  for (std::int64_t M : cutoffs) {
    for (std::int64_t n = done + 1; n <= M; ++n) {
      const double w = std::pow(1.0 + static_cast<double>(n), beta);
      acc += (std::abs(g.fourier_coeff(n)) + std::abs(g.fourier_coeff(-n))) * w;
    }
    done = M;
    rep.partial_sums.push_back(acc);
  }
  rep.margin = rep.bound - (rep.partial_sums.empty() ? 0.0 : rep.partial_sums.back());
  rep.holds = true;
  for (double s : rep.partial_sums) rep.holds = rep.holds && s <= rep.bound * (1.0 + 1e-12);
  return rep;
}

std::optional<double> inclusion_constant(double r, double beta, double s, double gamma) {
  if (!(r >= 1.0 && s >= 1.0)) return std::nullopt;
  if (r <= s) {
    return gamma <= beta ? std::optional<double>(1.0) : std::nullopt;
  }
  // r > s: inclusion iff beta - gamma > 1/s - 1/r, with Hoelder constant
  // ( sum (1+|n|)^{rs(gamma-beta)/(r-s)} )^{1/s - 1/r}.
  if (!(beta - gamma > 1.0 / s - 1.0 / r)) return std::nullopt;
  const double e = r * s * (gamma - beta) / (r - s);  // < -1
  double acc = 1.0;  // n = 0 term
  const std::int64_t M = 4096;
  for (std::int64_t n = 1; n <= M; ++n) acc += 2.0 * std::pow(1.0 + static_cast<double>(n), e);
  // integral tail: sum_{|n|>M} (1+|n|)^e <= 2 (1+M)^{e+1} / (-e-1)
  acc += 2.0 * std::pow(1.0 + static_cast<double>(M), e + 1.0) / (-e - 1.0);
  return std::pow(acc, 1.0 / s - 1.0 / r);
}

bool banach_algebra_check(const SpaceParams& params) {
  if (params.q_is_infinite()) return params.beta >= 0.0;
  return params.beta * params.q() > 1.0;
}

}  // namespace cyclab
