// Exact nonnegative dyadic rationals num / 2^exp on a 128-bit numerator.
// Interval endpoints of the Cantor constructions are dyadic with denominator
// exponents up to 2^N for level N, so exactness is available up to N = 6;
// operations refuse (throw) beyond that rather than round.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyclab {

using u128 = unsigned __int128;

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Dyadic {
 public:
  // Largest representable denominator exponent. Numerators must satisfy
  // num < 2^127, which allows values < 2 at full resolution.
  static constexpr int kMaxExp = 126;

  constexpr Dyadic() = default;
  Dyadic(u128 num, int exp);  // value = num / 2^exp, normalized on entry

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1, 0); }
  // 2^-e
  static Dyadic pow2(int e);
  // Exact conversion; rejects negatives, non-finite values and doubles finer
  // than the resolution cap (d < 2^-70 or so never appears in test data).
  static Dyadic from_double(double d);

  u128 num() const { return num_; }
  int exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const;
  // Exact decimal string (dyadics have terminating decimal expansions).
  std::string to_decimal_string() const;
  // Numerator as a decimal integer string (the denominator is 2^exp()).
  std::string num_decimal_string() const;

  Dyadic operator+(const Dyadic& o) const;
  // Requires *this >= o.
  Dyadic operator-(const Dyadic& o) const;
  // Reduce into [0, 1).
  Dyadic mod1() const;

  int compare(const Dyadic& o) const;  // -1 / 0 / +1
  bool operator==(const Dyadic& o) const { return compare(o) == 0; }
  bool operator!=(const Dyadic& o) const { return compare(o) != 0; }
  bool operator<(const Dyadic& o) const { return compare(o) < 0; }
  bool operator<=(const Dyadic& o) const { return compare(o) <= 0; }
  bool operator>(const Dyadic& o) const { return compare(o) > 0; }
  bool operator>=(const Dyadic& o) const { return compare(o) >= 0; }

 private:
  void normalize();
  // Returns numerator rescaled to exponent e (e >= exp_); throws on overflow.
  u128 at_exp(int e) const;

  u128 num_ = 0;
  int exp_ = 0;
};

}  // namespace cyclab
