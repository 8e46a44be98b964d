#include <doctest.h>

#include "cyclab/dyadic.hpp"

using namespace cyclab;

TEST_CASE("construction normalizes and round-trips") {
  const Dyadic a(6, 4);  // 6/16 = 3/8
  CHECK(a.num() == 3);
  CHECK(a.exp() == 3);
  CHECK(a.to_double() == 0.375);
  CHECK(Dyadic::from_double(0.375) == a);
  CHECK(Dyadic::from_double(0.0).is_zero());
  CHECK(Dyadic::from_double(1.0) == Dyadic(1, 0));
}

TEST_CASE("from_double accepts every normal double in range") {
  // 0.1 is not a "nice" fraction but is an exact dyadic as a double
  const Dyadic d = Dyadic::from_double(0.1);
  CHECK(d.to_double() == 0.1);
  CHECK_THROWS_AS(Dyadic::from_double(-0.5), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
  const Dyadic a(1, 3), b(1, 5);  // 1/8, 1/32
  CHECK((a + b).to_double() == 0.15625);
  CHECK((a - b) == Dyadic(3, 5));
  CHECK_THROWS_AS(b - a, std::invalid_argument);
  const Dyadic big = Dyadic(7, 2) + Dyadic(3, 1);  // 7/4 + 3/2 = 13/4
  CHECK(big.mod1() == Dyadic(1, 2));
  CHECK(Dyadic(8, 2).mod1().is_zero());  // 2 mod 1
}

TEST_CASE("comparisons at mixed exponents") {
  CHECK(Dyadic(1, 1) < Dyadic(3, 2));
  CHECK(Dyadic(1, 120) < Dyadic(1, 119));
  CHECK(Dyadic(1, 64) == Dyadic(1, 64));
  CHECK(Dyadic::pow2(64) > Dyadic::pow2(65));
}

TEST_CASE("exponent budget is enforced, never rounded") {
  CHECK_THROWS_AS(Dyadic(1, 127), budget_error);
  CHECK_THROWS_AS(Dyadic::pow2(127), budget_error);
  // rescaling a value >= 2 to full resolution overflows the 128-bit numerator
  CHECK_THROWS_AS(Dyadic(5, 1) + Dyadic(1, 126), budget_error);
}

TEST_CASE("decimal strings are exact") {
  CHECK(Dyadic(1, 1).to_decimal_string() == "0.5");
  CHECK(Dyadic(3, 3).to_decimal_string() == "0.375");
  CHECK(Dyadic(5, 2).to_decimal_string() == "1.25");
  CHECK(Dyadic(1, 10).to_decimal_string() == "0.0009765625");
  CHECK(Dyadic(1, 10).num_decimal_string() == "1");
  CHECK(Dyadic(25, 3).num_decimal_string() == "25");
  // 2^-64 has a 64-digit decimal expansion; spot check prefix and length
  const std::string s = Dyadic::pow2(64).to_decimal_string();
  CHECK(s.substr(0, 6) == "0.0000");
  CHECK(s.size() == 2 + 64);
}
