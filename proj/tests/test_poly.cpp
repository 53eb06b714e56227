#include <doctest.h>

#include "aza/poly.hpp"
#include "support.hpp"

using namespace aza;
using aza::test::random_element;
using aza::test::random_monic;
using aza::test::thrown_code;

namespace {

Poly make(const RingPtr& r, std::initializer_list<long> coeffs) {
  std::vector<Elem> c;
  for (long v : coeffs) c.push_back(r->from_int(v));
  return Poly::from_coeffs(r, c);
}

}  // namespace

TEST_CASE("degree bookkeeping strips trailing zeros") {
  RingPtr z9 = Ring::zmod(3, 2);
  CHECK(make(z9, {}).degree() == -1);
  CHECK(make(z9, {0, 0, 9}).degree() == -1);  // 9 = 0 mod 9
  CHECK(make(z9, {1, 0, 9}).degree() == 0);
  CHECK(make(z9, {1, 2, 3}).degree() == 2);
  CHECK(Poly::x(z9).degree() == 1);
  CHECK(Poly::one(z9).is_monic());
  CHECK_FALSE(Poly::zero(z9).is_monic());
}

TEST_CASE("divmod against multiplication") {
  RingPtr z9 = Ring::zmod(3, 2);
  Rng rng(5);
  for (int it = 0; it < 40; ++it) {
    Poly d = random_monic(z9, rng, 1 + rng.below(3));
    Poly q = random_monic(z9, rng, rng.below(3));
    Poly extra = Poly::from_coeffs(z9, {random_element(z9, rng)});
    Poly r = extra;  // degree < deg d not guaranteed; reduce first
    r = r.divmod_monic(d).second;
    Poly f = q * d + r;
    auto [q2, r2] = f.divmod_monic(d);
    CHECK(q2 == q);
    CHECK(r2 == r);
  }
  Poly nm = make(z9, {1, 2});  // 2x + 1 is not monic
  CHECK(thrown_code([&] { make(z9, {1, 1, 1}).divmod_monic(nm); }) ==
        errc::non_monic_divisor);
}

TEST_CASE("derivative and evaluation") {
  RingPtr z = Ring::integers();
  Poly f = make(z, {1, -3, 0, 2});  // 2x^3 - 3x + 1
  CHECK(f.evaluate(z->from_int(2)) == z->from_int(11));
  Poly df = f.derivative();
  CHECK(df == make(z, {-3, 0, 6}));
  CHECK(make(z, {7}).derivative().is_zero());
}

TEST_CASE("gcd and xgcd over prime fields") {
  RingPtr f7 = Ring::prime_field(7);
  Rng rng(9);
  for (int it = 0; it < 30; ++it) {
    Poly a = random_monic(f7, rng, 1 + rng.below(4));
    Poly b = random_monic(f7, rng, 1 + rng.below(4));
    Poly g = poly_gcd(a, b);
    CHECK(a.divmod_monic(g).second.is_zero());
    CHECK(b.divmod_monic(g).second.is_zero());
    auto x = poly_xgcd(a, b);
    CHECK(x.g == g);
    CHECK(x.s * a + x.t * b == g);
  }
  // common factor is found
  Poly a = make(f7, {2, 1});           // x + 2
  Poly f = a * make(f7, {3, 1});       // (x+2)(x+3)
  Poly g = a * make(f7, {5, 1});       // (x+2)(x+5)
  CHECK(poly_gcd(f, g) == a);
}

TEST_CASE("factorization over F_5 splits x^2 + 1") {
  RingPtr f5 = Ring::prime_field(5);
  auto fs = factor_over_finite_field(make(f5, {1, 0, 1}));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].first == make(f5, {2, 1}));
  CHECK(fs[0].second == 1);
  CHECK(fs[1].first == make(f5, {3, 1}));
  CHECK(fs[1].second == 1);
}

TEST_CASE("factorization keeps irreducibles whole") {
  RingPtr f7 = Ring::prime_field(7);
  auto fs = factor_over_finite_field(make(f7, {1, 0, 1}));  // x^2+1 irred mod 7
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].first.degree() == 2);
  CHECK(fs[0].second == 1);
}

TEST_CASE("factorization tracks multiplicities in characteristic p") {
  RingPtr f3 = Ring::prime_field(3);
  // (x+1)^3 (x+2) has derivative (x+1)^3, exercising the p-th power path
  Poly f = make(f3, {1, 1}) * make(f3, {1, 1}) * make(f3, {1, 1}) * make(f3, {2, 1});
  auto fs = factor_over_finite_field(f);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].first == make(f3, {1, 1}));
  CHECK(fs[0].second == 3);
  CHECK(fs[1].first == make(f3, {2, 1}));
  CHECK(fs[1].second == 1);

  RingPtr f2 = Ring::prime_field(2);
  auto gs = factor_over_finite_field(make(f2, {1, 0, 1}));  // x^2+1 = (x+1)^2
  REQUIRE(gs.size() == 1);
  CHECK(gs[0].first == make(f2, {1, 1}));
  CHECK(gs[0].second == 2);
}

TEST_CASE("factorization over an extension field uses the trace map") {
  RingPtr f2 = Ring::prime_field(2);
  RingPtr f4 = f2->quotient("t", {f2->one(), f2->one(), f2->one()});
  Elem t = f4->generator(0);
  // x^2 + x + 1 = (x + t)(x + t + 1) over F_4
  auto fs = factor_over_finite_field(make(f4, {1, 1, 1}));
  REQUIRE(fs.size() == 2);
  for (const auto& [q, m] : fs) {
    CHECK(q.degree() == 1);
    CHECK(m == 1);
  }
  Elem r0 = -fs[0].first.coeff(0);
  Elem r1 = -fs[1].first.coeff(0);
  CHECK(((r0 == t && r1 == t + f4->one()) || (r0 == t + f4->one() && r1 == t)));
}

TEST_CASE("factorization validates its input") {
  RingPtr z9 = Ring::zmod(3, 2);
  CHECK(thrown_code([&] { factor_over_finite_field(make(z9, {1, 0, 1})); }) ==
        errc::not_finite_field);
  RingPtr f5 = Ring::prime_field(5);
  CHECK(thrown_code([&] { factor_over_finite_field(make(f5, {1, 2})); }) ==
        errc::non_monic);
}

TEST_CASE("random factorization round trips over several fields") {
  std::vector<RingPtr> fields = {Ring::prime_field(2), Ring::prime_field(3),
                                 Ring::prime_field(7), Ring::prime_field(13)};
  RingPtr f2 = Ring::prime_field(2);
  fields.push_back(f2->quotient("t", {f2->one(), f2->one(), f2->one()}));
  RingPtr f3 = Ring::prime_field(3);
  fields.push_back(f3->quotient("t", {f3->one(), f3->from_int(2), f3->zero(), f3->one()}));
  Rng rng(17);
  for (const auto& F : fields) {
    CAPTURE(F->describe());
    for (int it = 0; it < 12; ++it) {
      Poly f = random_monic(F, rng, 1 + rng.below(5));
      auto fs = factor_over_finite_field(f);
      Poly prod = Poly::one(F);
      long degsum = 0;
      for (const auto& [q, m] : fs) {
        CHECK(q.is_monic());
        CHECK(q.degree() >= 1);
        for (unsigned i = 0; i < m; ++i) prod = prod * q;
        degsum += q.degree() * m;
        // irreducibility spot check: no roots for degree <= 3 over small F
        if (q.degree() >= 2 && F->cardinality(30).has_value()) {
          for (const Value& v : F->enumerate(30))
            CHECK_FALSE(q.evaluate(Elem(F, v)).is_zero());
        }
      }
      CHECK(prod == f);
      CHECK(degsum == f.degree());
    }
  }
}

TEST_CASE("is_finite_field distinguishes towers") {
  RingPtr f2 = Ring::prime_field(2);
  RingPtr f4 = f2->quotient("t", {f2->one(), f2->one(), f2->one()});
  CHECK(is_finite_field(f4));
  CHECK(finite_field_cardinality(f4) == 4);
  Elem t = f4->generator(0);
  RingPtr f16 = f4->quotient("s", {t, f4->one(), f4->one()});  // s^2+s+t
  CHECK(is_finite_field(f16));
  CHECK(finite_field_cardinality(f16) == 16);
  // t^2 factors, so this is not a field
  RingPtr nf = f2->quotient("t", {f2->zero(), f2->zero(), f2->one()});
  CHECK_FALSE(is_finite_field(nf));
  CHECK_FALSE(is_finite_field(Ring::zmod(3, 2)));
  CHECK_FALSE(is_finite_field(Ring::integers()));
  CHECK(is_finite_field(Ring::prime_field(11)));
}

TEST_CASE("finite field towers of depth two factor correctly") {
  RingPtr f2 = Ring::prime_field(2);
  RingPtr f4 = f2->quotient("t", {f2->one(), f2->one(), f2->one()});
  Elem t = f4->generator(0);
  RingPtr f16 = f4->quotient("s", {t, f4->one(), f4->one()});
  Elem s = f16->generator(0);
  // minimal check: (x - s)(x - s^2) should multiply and refactor
  Poly f = (Poly::x(f16) - Poly::constant(s)) *
           (Poly::x(f16) - Poly::constant(s * s));
  auto fs = factor_over_finite_field(f);
  Poly prod = Poly::one(f16);
  for (const auto& [q, m] : fs)
    for (unsigned i = 0; i < m; ++i) prod = prod * q;
  CHECK(prod == f);
}
