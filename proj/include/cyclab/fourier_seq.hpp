// Finitely supported Fourier coefficient sequences. A FourierSeq represents
// a trigonometric polynomial / distribution S = sum_n s(n) e_n through the
// map n -> s(n); zero amplitudes are never stored (canonical form).

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace cyclab {

using cplx = std::complex<double>;

class FourierSeq {
 public:
  // Amplitudes smaller than this are dropped on insertion; keeps repeated
  // convolutions from accumulating dust support.
  static constexpr double kPruneEps = 1e-15;

  FourierSeq() = default;
  FourierSeq(std::initializer_list<std::pair<std::int64_t, cplx>> init);

  static FourierSeq unit() { return FourierSeq({{0, 1.0}}); }
  static FourierSeq character(std::int64_t n) { return FourierSeq({{n, 1.0}}); }

  void set(std::int64_t n, cplx a);
  void add(std::int64_t n, cplx a);
  cplx at(std::int64_t n) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::int64_t min_freq() const;  // requires non-empty
  std::int64_t max_freq() const;
  // max(|min_freq|, |max_freq|), 0 when empty
  std::int64_t support_radius() const;

  const std::map<std::int64_t, cplx>& entries() const { return entries_; }

  FourierSeq operator+(const FourierSeq& o) const;
  FourierSeq operator-(const FourierSeq& o) const;
  FourierSeq operator*(cplx scalar) const;

  bool almost_equal(const FourierSeq& o, double tol) const;

 private:
  std::map<std::int64_t, cplx> entries_;
};

}  // namespace cyclab
