#include <doctest.h>

#include "aza/ring.hpp"
#include "support.hpp"

using namespace aza;
using aza::test::random_element;
using aza::test::thrown_code;

namespace {

RingPtr f4() {
  RingPtr f2 = Ring::prime_field(2);
  return f2->quotient("t", {f2->one(), f2->one(), f2->one()});  // t^2+t+1
}

RingPtr z9x() {
  RingPtr z9 = Ring::zmod(3, 2);
  return z9->quotient("x", {z9->one(), z9->zero(), z9->one()});  // x^2+1
}

}  // namespace

TEST_CASE("base construction and validation") {
  CHECK(Ring::integers()->describe() == "Z");
  CHECK(Ring::rationals()->describe() == "Q");
  CHECK(Ring::prime_field(5)->describe() == "F_5");
  CHECK(Ring::zmod(5, 2)->describe() == "Z/5^2");
  CHECK(thrown_code([] { Ring::prime_field(6); }) == errc::non_prime_modulus);
  CHECK(thrown_code([] { Ring::zmod(4, 2); }) == errc::non_prime_modulus);
  CHECK(thrown_code([] { Ring::zmod(5, 0); }) == errc::bad_input);
}

TEST_CASE("quotient step validation") {
  RingPtr z = Ring::integers();
  CHECK(thrown_code([&] { z->quotient("x", {z->one()}); }) == errc::bad_input);
  CHECK(thrown_code([&] {
          z->quotient("x", {z->one(), z->from_int(2)});
        }) == errc::non_monic_modulus);
  RingPtr q = Ring::rationals();
  CHECK(thrown_code([&] {
          z->quotient("x", {q->one(), z->one().embed_into(z)});
        }) == errc::base_ring_mismatch);
  // monic of degree 1 is allowed
  RingPtr r = z->quotient("x", {z->from_int(-3), z->one()});
  CHECK(r->generator(0) == z->from_int(3).embed_into(r));
}

TEST_CASE("localization rejects zero and nilpotents") {
  RingPtr z25 = Ring::zmod(5, 2);
  CHECK(thrown_code([&] { z25->localized(z25->zero()); }) ==
        errc::zero_localization);
  CHECK(thrown_code([&] { z25->localized(z25->from_int(5)); }) ==
        errc::zero_localization);
  CHECK(thrown_code([&] { z25->localized(z25->from_int(10)); }) ==
        errc::zero_localization);
  RingPtr ok = z25->localized(z25->from_int(7));
  CHECK(ok->depth() == 1);
  RingPtr z = Ring::integers();
  CHECK(thrown_code([&] { z->localized(z->zero()); }) == errc::zero_localization);
  CHECK(z->localized(z->from_int(6))->describe() == "Z[1/6]");
}

TEST_CASE("ring axioms hold on random samples") {
  std::vector<RingPtr> rings = {
      Ring::rationals(),
      Ring::prime_field(5),
      f4(),
      Ring::zmod(5, 2),
      Ring::zmod(3, 3),
      Ring::integers()->localized(Ring::integers()->from_int(6)),
      z9x(),
  };
  Rng rng(7);
  for (const auto& r : rings) {
    CAPTURE(r->describe());
    Elem zero = r->zero(), one = r->one();
    for (int it = 0; it < 60; ++it) {
      Elem a = random_element(r, rng);
      Elem b = random_element(r, rng);
      Elem c = random_element(r, rng);
      CHECK(a + b == b + a);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a + zero == a);
      CHECK(a + (-a) == zero);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * one == a);
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("quotient arithmetic reduces by the modulus") {
  RingPtr r = z9x();
  Elem x = r->generator(0);
  CHECK(x * x == -r->one());
  CHECK(x.pow(4) == r->one());
  // (x + 1)^2 = x^2 + 2x + 1 = 2x
  Elem s = x + r->one();
  CHECK(s * s == r->from_int(2) * x);
}

TEST_CASE("localized equality uses cross multiplication") {
  RingPtr z = Ring::integers();
  RingPtr r = z->localized(z->from_int(6));
  Elem six = z->from_int(6).embed_into(r);
  Elem inv6 = six.inverse();
  CHECK(six * inv6 == r->one());
  // 6/6 == 1 even though the pair representation differs from (1, 0)
  CHECK((six * inv6).is_zero() == false);
  CHECK(six * inv6 - r->one() == r->zero());
  Elem inv4 = r->from_int(4).inverse();
  CHECK(r->from_int(4) * inv4 == r->one());
  CHECK_FALSE(r->from_int(5).invertible());
  CHECK(thrown_code([&] { r->from_int(5).inverse(); }) == errc::not_invertible);
}

TEST_CASE("enumerate lists every element exactly once") {
  RingPtr f = f4();
  auto all = f->enumerate(100);
  REQUIRE(all.size() == 4);
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      CHECK(f->v_cmp(all[i], all[j], f->depth()) != 0);

  RingPtr r = z9x();
  CHECK(r->enumerate(100).size() == 81);
  CHECK(r->cardinality(80) == std::nullopt);
  CHECK(Ring::integers()->cardinality(1000) == std::nullopt);
  CHECK(thrown_code([&] { Ring::rationals()->enumerate(10); }) ==
        errc::unsupported_ring);
}

TEST_CASE("embedding respects arithmetic") {
  RingPtr z = Ring::integers();
  RingPtr r = z->quotient("x", {z->from_int(-2), z->zero(), z->one()});  // x^2-2
  Elem g = r->generator(0);
  CHECK(g * g == z->from_int(2).embed_into(r));
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    Int a = rng.range(-30, 30), b = rng.range(-30, 30);
    CHECK(z->from_int(a * b).embed_into(r) ==
          z->from_int(a).embed_into(r) * z->from_int(b).embed_into(r));
  }
}

TEST_CASE("solve_linear over the rationals and integers") {
  RingPtr q = Ring::rationals();
  auto sol = solve_linear(q, {q->from_int(2)}, 1, 1, {q->from_int(3)});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == q->from_rat(Rat(3, 2)));

  RingPtr z = Ring::integers();
  CHECK_FALSE(solve_linear(z, {z->from_int(2)}, 1, 1, {z->from_int(3)}).has_value());
  auto sol2 = solve_linear(z, {z->from_int(2)}, 1, 1, {z->from_int(4)});
  REQUIRE(sol2.has_value());
  CHECK((*sol2)[0] == z->from_int(2));

  // 2x2 system over Z: x + 2y = 5, 3x + 4y = 11 -> x = 1, y = 2
  std::vector<Elem> A = {z->from_int(1), z->from_int(2), z->from_int(3),
                         z->from_int(4)};
  auto sol3 = solve_linear(z, A, 2, 2, {z->from_int(5), z->from_int(11)});
  REQUIRE(sol3.has_value());
  CHECK((*sol3)[0] == z->from_int(1));
  CHECK((*sol3)[1] == z->from_int(2));
}

TEST_CASE("solve_linear saturates denominators over a localization") {
  RingPtr z = Ring::integers();
  RingPtr r = z->localized(z->from_int(2));
  auto sol = solve_linear(r, {r->from_int(2)}, 1, 1, {r->from_int(3)});
  REQUIRE(sol.has_value());
  CHECK(r->from_int(2) * (*sol)[0] == r->from_int(3));
  // Still no solution when the needed prime is not inverted.
  CHECK_FALSE(
      solve_linear(r, {r->from_int(5)}, 1, 1, {r->from_int(3)}).has_value());
  auto sol2 = solve_linear(r, {r->from_int(12)}, 1, 1, {r->from_int(9)});
  REQUIRE(sol2.has_value());  // 9/12 = 3/4 needs only 2 inverted
  CHECK(r->from_int(12) * (*sol2)[0] == r->from_int(9));
}

TEST_CASE("solve_linear over quotient towers flattens") {
  RingPtr r = z9x();
  Elem x = r->generator(0);
  // x * y = 1 -> y = -x
  auto sol = solve_linear(r, {x}, 1, 1, {r->one()});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == -x);
  CHECK(x.inverse() == -x);

  RingPtr z = Ring::integers();
  RingPtr s = z->quotient("x", {z->from_int(-2), z->zero(), z->one()});
  Elem g = s->generator(0);
  // g is not invertible over Z[x]/(x^2-2) since norm(g) = -2
  CHECK_FALSE(g.invertible());
  auto sol2 = solve_linear(s, {g}, 1, 1, {s->from_int(2)});
  REQUIRE(sol2.has_value());  // g * g = 2
  CHECK((*sol2)[0] == g);
}

TEST_CASE("mixed localize-over-quotient rejects linear algebra only") {
  RingPtr z = Ring::integers();
  RingPtr quot = z->quotient("x", {z->from_int(-2), z->zero(), z->one()});
  RingPtr mixed = quot->localized(quot->generator(0));
  Elem g = quot->generator(0).embed_into(mixed);
  CHECK((g * g) == mixed->from_int(2));  // arithmetic still fine
  CHECK_FALSE(mixed->flatten_supported());
  CHECK(thrown_code([&] { mixed->is_invertible(g); }) == errc::unsupported_ring);
}

TEST_CASE("unit ideal witnesses multiply back to one") {
  RingPtr z = Ring::integers();
  auto w = unit_ideal_test({z->from_int(4), z->from_int(7)});
  REQUIRE(w.is_unit_ideal);
  CHECK(w.cofactors[0] * z->from_int(4) + w.cofactors[1] * z->from_int(7) ==
        z->one());
  CHECK_FALSE(unit_ideal_test({z->from_int(4), z->from_int(6)}).is_unit_ideal);
  CHECK_FALSE(unit_ideal_test({}).is_unit_ideal);

  RingPtr z25 = Ring::zmod(5, 2);
  auto w2 = unit_ideal_test({z25->from_int(10), z25->from_int(7)});
  REQUIRE(w2.is_unit_ideal);
  CHECK(w2.cofactors[0] * z25->from_int(10) + w2.cofactors[1] * z25->from_int(7) ==
        z25->one());
  CHECK_FALSE(unit_ideal_test({z25->from_int(5), z25->from_int(10)}).is_unit_ideal);
}

TEST_CASE("ideal membership produces exact coefficients") {
  RingPtr z = Ring::integers();
  auto c = ideal_membership(z->from_int(6), {z->from_int(10), z->from_int(14)});
  REQUIRE(c.has_value());
  CHECK((*c)[0] * z->from_int(10) + (*c)[1] * z->from_int(14) == z->from_int(6));
  CHECK_FALSE(ideal_membership(z->from_int(3), {z->from_int(10), z->from_int(14)})
                  .has_value());
}

TEST_CASE("kernel generators annihilate the matrix") {
  RingPtr z = Ring::integers();
  std::vector<Elem> A = {z->from_int(2), z->from_int(4)};
  auto ker = kernel_generators(z, A, 1, 2);
  REQUIRE(ker.size() == 1);
  CHECK(A[0] * ker[0][0] + A[1] * ker[0][1] == z->zero());
  CHECK_FALSE((ker[0][0].is_zero() && ker[0][1].is_zero()));

  RingPtr z9 = Ring::zmod(3, 2);
  std::vector<Elem> B = {z9->from_int(3)};
  auto ker2 = kernel_generators(z9, B, 1, 1);
  REQUIRE(ker2.size() >= 1);
  bool found = false;
  for (const auto& g : ker2) {
    CHECK(B[0] * g[0] == z9->zero());
    if (g[0] == z9->from_int(3) || g[0] == z9->from_int(6)) found = true;
  }
  CHECK(found);
}

TEST_CASE("determinants over scalar cores") {
  RingPtr z = Ring::integers();
  std::vector<Elem> A = {z->from_int(1), z->from_int(2), z->from_int(3),
                         z->from_int(4)};
  CHECK(det(z, A, 2) == z->from_int(-2));

  RingPtr q = Ring::rationals();
  std::vector<Elem> B = {q->from_rat(Rat(1, 2)), q->from_int(1), q->from_int(1),
                         q->from_int(4)};
  CHECK(det(q, B, 2) == q->from_int(1));

  RingPtr z25 = Ring::zmod(5, 2);
  std::vector<Elem> C = {z25->from_int(23), z25->from_int(4), z25->from_int(11),
                         z25->from_int(17)};
  // 23*17 - 4*11 = 391 - 44 = 347 = 22 mod 25
  CHECK(det(z25, C, 2) == z25->from_int(22));
  CHECK(det(z, {}, 0) == z->one());
}

TEST_CASE("determinant over quotient towers matches the cofactor formula") {
  RingPtr r = z9x();
  Rng rng(23);
  for (int it = 0; it < 15; ++it) {
    std::vector<Elem> A;
    for (int i = 0; i < 4; ++i) A.push_back(random_element(r, rng));
    CHECK(det(r, A, 2) == A[0] * A[3] - A[1] * A[2]);
  }
  // 3x3 Leibniz comparison
  for (int it = 0; it < 8; ++it) {
    std::vector<Elem> A;
    for (int i = 0; i < 9; ++i) A.push_back(random_element(r, rng));
    Elem lz = A[0] * (A[4] * A[8] - A[5] * A[7]) -
              A[1] * (A[3] * A[8] - A[5] * A[6]) +
              A[2] * (A[3] * A[7] - A[4] * A[6]);
    CHECK(det(r, A, 3) == lz);
  }
}

TEST_CASE("determinant over a localized core tracks unit factors") {
  RingPtr z = Ring::integers();
  RingPtr r = z->localized(z->from_int(6));
  Elem inv6 = r->from_int(6).inverse();
  // [[1/6, 1], [1, 12]] -> det = 2 - 1 = 1
  std::vector<Elem> A = {inv6, r->one(), r->one(), r->from_int(12)};
  CHECK(det(r, A, 2) == r->one());
  std::vector<Elem> B = {inv6, r->zero(), r->zero(), inv6};
  CHECK(det(r, B, 2) == inv6 * inv6);
}

TEST_CASE("local certificate for Z/9") {
  RingPtr z9 = Ring::zmod(3, 2);
  auto cert = check_local(z9);
  CHECK(cert.residue_field()->describe() == "F_3");
  CHECK(cert.p() == 3);
  CHECK(cert.k() == 2);
  REQUIRE(cert.maximal_ideal_generators().size() == 1);
  CHECK(cert.maximal_ideal_generators()[0] == z9->from_int(3));
  // section then residue is the identity on the residue field
  RingPtr f3 = cert.residue_field();
  for (const Value& v : f3->enumerate(10)) {
    Elem y(f3, v);
    CHECK(cert.residue(cert.section(y)) == y);
  }
  // residual discreteness: invertible iff nonzero residue
  for (const Value& v : z9->enumerate(10)) {
    Elem x(z9, v);
    CHECK(z9->is_invertible(x) == !cert.residue(x).is_zero());
  }
}

TEST_CASE("local certificate handles unramified extension steps") {
  RingPtr z25 = Ring::zmod(5, 2);
  // x^2+x+1 is irreducible mod 5
  RingPtr r = z25->quotient("x", {z25->one(), z25->one(), z25->one()});
  auto cert = check_local(r);
  CHECK(cert.residue_field()->depth() == 1);
  CHECK(cert.maximal_ideal_generators().size() == 1);  // just p
  Rng rng(3);
  for (int i = 0; i < 25; ++i) {
    Elem a = random_element(r, rng), b = random_element(r, rng);
    CHECK(cert.residue(a * b) == cert.residue(a) * cert.residue(b));
    CHECK(cert.residue(a + b) == cert.residue(a) + cert.residue(b));
  }
  for (const Value& v : r->enumerate(700)) {
    Elem x(r, v);
    CHECK(r->is_invertible(x) == !cert.residue(x).is_zero());
  }
}

TEST_CASE("local certificate handles ramified steps") {
  RingPtr z9 = Ring::zmod(3, 2);
  // x^2 is residually x^2: single irreducible with multiplicity 2
  RingPtr r = z9->quotient("x", {z9->zero(), z9->zero(), z9->one()});
  auto cert = check_local(r);
  CHECK(cert.residue_field()->describe() == "F_3");
  // maximal ideal needs both 3 and x
  REQUIRE(cert.maximal_ideal_generators().size() == 2);
  CHECK(cert.maximal_ideal_generators()[0] == z9->from_int(3).embed_into(r));
  CHECK(cert.maximal_ideal_generators()[1] == r->generator(0));
  for (const Value& v : r->enumerate(100)) {
    Elem x(r, v);
    CHECK(r->is_invertible(x) == !cert.residue(x).is_zero());
  }
}

TEST_CASE("check_local rejects non-local shapes") {
  RingPtr z25 = Ring::zmod(5, 2);
  // x^2 - x splits residually as x(x-1)
  RingPtr split = z25->quotient("x", {z25->zero(), z25->from_int(24), z25->one()});
  CHECK(thrown_code([&] { check_local(split); }) == errc::not_local);
  CHECK(thrown_code([&] { check_local(Ring::integers()); }) ==
        errc::unsupported_base);
  CHECK(thrown_code([&] { check_local(Ring::rationals()); }) ==
        errc::unsupported_base);
  RingPtr loc = z25->localized(z25->from_int(2));
  CHECK(thrown_code([&] { check_local(loc); }) == errc::unsupported_base);
}

TEST_CASE("residue field of a linear residual factor stays at ground level") {
  RingPtr z9 = Ring::zmod(3, 2);
  // x^2 + 3x + 2 = (x+1)(x+2) mod 3... splits, so not local.
  // Use (x+1)^2 = x^2+2x+1 mod 3: residually a power of the linear x+1.
  RingPtr r = z9->quotient("x", {z9->one(), z9->from_int(2), z9->one()});
  auto cert = check_local(r);
  CHECK(cert.residue_field()->describe() == "F_3");
  // x maps to -1 = 2 in F_3
  Elem x = r->generator(0);
  CHECK(cert.residue(x) == cert.residue_field()->from_int(2));
  REQUIRE(cert.maximal_ideal_generators().size() == 2);
  for (const Value& v : r->enumerate(100)) {
    Elem e(r, v);
    CHECK(r->is_invertible(e) == !cert.residue(e).is_zero());
  }
}
