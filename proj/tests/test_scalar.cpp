#include <doctest.h>

#include "aza/scalar.hpp"

using namespace aza;

TEST_CASE("mod_floor lands in [0, m)") {
  CHECK(mod_floor(Int(7), Int(5)) == 2);
  CHECK(mod_floor(Int(-7), Int(5)) == 3);
  CHECK(mod_floor(Int(-10), Int(5)) == 0);
  CHECK(mod_floor(Int(0), Int(9)) == 0);
}

TEST_CASE("is_prime on small inputs") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int(3)));
  CHECK(is_prime(Int(97)));
  CHECK_FALSE(is_prime(Int(1)));
  CHECK_FALSE(is_prime(Int(0)));
  CHECK_FALSE(is_prime(Int(-3)));
  CHECK_FALSE(is_prime(Int(91)));  // 7 * 13
}

TEST_CASE("strip_factors removes exactly the primes shared with u") {
  CHECK(strip_factors(Int(12), Int(6)) == 1);   // both 2 and 3 stripped
  CHECK(strip_factors(Int(12), Int(2)) == 3);
  CHECK(strip_factors(Int(45), Int(6)) == 5);
  CHECK(strip_factors(Int(7), Int(6)) == 7);
  CHECK(strip_factors(Int(-8), Int(2)) == 1);
  CHECK(strip_factors(Int(1), Int(10)) == 1);
}

TEST_CASE("division_exponent finds the least power") {
  CHECK(division_exponent(Int(8), Int(2)) == 3);
  CHECK(division_exponent(Int(12), Int(6)) == 2);  // 6^2 = 36 = 12*3
  CHECK(division_exponent(Int(1), Int(5)) == 0);
  CHECK(division_exponent(Int(9), Int(6)) == 2);
}

TEST_CASE("mod_inverse") {
  Int out;
  REQUIRE(mod_inverse(Int(7), Int(25), out));
  CHECK(mod_floor(out * 7, Int(25)) == 1);
  CHECK_FALSE(mod_inverse(Int(5), Int(25), out));
  REQUIRE(mod_inverse(Int(-3), Int(7), out));
  CHECK(mod_floor(out * -3, Int(7)) == 1);
}
