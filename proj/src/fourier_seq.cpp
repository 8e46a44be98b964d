#include "cyclab/fourier_seq.hpp"

#include <cmath>
#include <cstdlib>

namespace cyclab {

FourierSeq::FourierSeq(std::initializer_list<std::pair<std::int64_t, cplx>> init) {
  for (const auto& [n, a] : init) set(n, a);
}

void FourierSeq::set(std::int64_t n, cplx a) {
  if (std::abs(a) < kPruneEps) {
    entries_.erase(n);
  } else {
    entries_[n] = a;
  }
}

void FourierSeq::add(std::int64_t n, cplx a) {
  auto it = entries_.find(n);
  const cplx v = (it == entries_.end() ? cplx{} : it->second) + a;
  set(n, v);
}

cplx FourierSeq::at(std::int64_t n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? cplx{} : it->second;
}

std::int64_t FourierSeq::min_freq() const { return entries_.begin()->first; }
std::int64_t FourierSeq::max_freq() const { return entries_.rbegin()->first; }

std::int64_t FourierSeq::support_radius() const {
  if (entries_.empty()) return 0;
  return std::max(std::llabs(min_freq()), std::llabs(max_freq()));
}

FourierSeq FourierSeq::operator+(const FourierSeq& o) const {
  FourierSeq r = *this;
  for (const auto& [n, a] : o.entries_) r.add(n, a);
  return r;
}

FourierSeq FourierSeq::operator-(const FourierSeq& o) const {
  FourierSeq r = *this;
  for (const auto& [n, a] : o.entries_) r.add(n, -a);
  return r;
}

FourierSeq FourierSeq::operator*(cplx scalar) const {
  FourierSeq r;
  for (const auto& [n, a] : entries_) r.set(n, a * scalar);
  return r;
}

bool FourierSeq::almost_equal(const FourierSeq& o, double tol) const {
  auto le = [&](const FourierSeq& a, const FourierSeq& b) {
    for (const auto& [n, v] : a.entries_)
      if (std::abs(v - b.at(n)) > tol) return false;
    return true;
  };
  return le(*this, o) && le(o, *this);
}

}  // namespace cyclab
