#include "cyclab/dyadic.hpp"

#include <cmath>

namespace cyclab {

namespace {
// highest set bit position, num != 0
int bit_width_u128(u128 v) {
  int w = 0;
  while (v) {
    v >>= 1;
    ++w;
  }
  return w;
}
}  // namespace

Dyadic::Dyadic(u128 num, int exp) : num_(num), exp_(exp) {
  if (exp < 0 || exp > kMaxExp) throw budget_error("dyadic exponent out of range");
  normalize();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1u) == 0) {
    num_ >>= 1;
    --exp_;
  }
}

Dyadic Dyadic::pow2(int e) {
  if (e < 0 || e > kMaxExp) throw budget_error("dyadic pow2 exponent out of range");
  return Dyadic(1, e);
}

Dyadic Dyadic::from_double(double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("from_double: need finite d >= 0");
  if (d == 0.0) return Dyadic();
  int e2 = 0;
  double m = std::frexp(d, &e2);  // d = m * 2^e2, m in [0.5, 1)
  std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  if (std::ldexp(static_cast<double>(mant), e2 - 53) != d)
    throw std::invalid_argument("from_double: not exactly representable");
  int exp = 53 - e2;
  u128 num = static_cast<u128>(mant);
  if (exp < 0) {
    if (-exp + bit_width_u128(num) > 126) throw budget_error("from_double overflow");
    num <<= -exp;
    exp = 0;
  }
  if (exp > kMaxExp) throw budget_error("from_double: finer than resolution cap");
  return Dyadic(num, exp);
}

u128 Dyadic::at_exp(int e) const {
  if (e < exp_) throw std::logic_error("at_exp below current exponent");
  const int shift = e - exp_;
  if (num_ != 0 && shift + bit_width_u128(num_) > 127) throw budget_error("dyadic rescale overflow");
  return num_ << shift;
}

double Dyadic::to_double() const {
  return std::ldexp(static_cast<double>(num_), -exp_);
}

namespace {
std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}
}  // namespace

std::string Dyadic::num_decimal_string() const { return u128_to_string(num_); }

std::string Dyadic::to_decimal_string() const {
  if (num_ == 0) return "0";
  const u128 ip = num_ >> exp_;
  const u128 frac = exp_ ? (num_ - (ip << exp_)) : 0;
  std::string out = u128_to_string(ip);
  if (frac != 0) {
    // Horner over the bits, LSB first: acc <- (acc + b_i) / 2. The decimal
    // accumulator is exact since dividing by 2 terminates in base 10.
    std::string acc = "0";  // digits after the point, most significant first
    auto halve = [](const std::string& s, int carry_in) {
      std::string r;
      int carry = carry_in;  // value carried is carry * 10^0 at current digit
      for (char c : s) {
        const int v = carry * 10 + (c - '0');
        r += static_cast<char>('0' + v / 2);
        carry = v % 2;
      }
      if (carry) r += '5';
      return r;
    };
    for (int i = 0; i < exp_; ++i) {
      const int bit = static_cast<int>((frac >> i) & 1u);
      acc = halve(acc, bit);
    }
    while (!acc.empty() && acc.back() == '0') acc.pop_back();
    out += '.';
    out += acc;
  }
  return out;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  const int e = exp_ > o.exp_ ? exp_ : o.exp_;
  return Dyadic(at_exp(e) + o.at_exp(e), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  const int e = exp_ > o.exp_ ? exp_ : o.exp_;
  const u128 a = at_exp(e), b = o.at_exp(e);
  if (a < b) throw std::invalid_argument("dyadic subtraction would be negative");
  return Dyadic(a - b, e);
}

Dyadic Dyadic::mod1() const {
  const u128 ip = num_ >> exp_;
  if (ip == 0) return *this;
  return Dyadic(num_ - (ip << exp_), exp_);
}

int Dyadic::compare(const Dyadic& o) const {
  const int e = exp_ > o.exp_ ? exp_ : o.exp_;
  const u128 a = at_exp(e), b = o.at_exp(e);
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

}  // namespace cyclab
