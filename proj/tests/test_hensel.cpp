#include <doctest.h>

#include <cstdint>
#include <vector>

#include "aza/decomp.hpp"
#include "aza/hensel.hpp"
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

Poly rpoly(const LocalCertificate& cert, const Poly& f) {
  return f.map_coeffs(cert.residue_field(),
                      [&](const Elem& c) { return cert.residue(c); });
}

Poly spoly(const LocalCertificate& cert, const Poly& fbar) {
  return fbar.map_coeffs(cert.ring(),
                         [&](const Elem& c) { return cert.section(c); });
}

bool same_mod(const Poly& a, const Poly& b, const Poly& P) {
  return (a - b).divmod_monic(P).second.is_zero();
}

bool residue_matches(const LocalCertificate& cert, const Poly& u, const Poly& e,
                     const Poly& P) {
  Poly d = (u - e).divmod_monic(P).second;
  for (long j = 0; j <= d.degree(); ++j)
    if (!cert.residue(d.coeff(j)).is_zero()) return false;
  return true;
}

/// Residually idempotent input: a CRT idempotent of a random split of the
/// residual factorization, sectioned up and fuzzed by a maximal-ideal term.
Poly random_split_idempotent(const LocalCertificate& cert, const Poly& P,
                             Rng& rng) {
  Poly Pbar = rpoly(cert, P);
  const RingPtr& F = cert.residue_field();
  Poly fpart = Poly::one(F);
  for (const auto& [q, mult] : factor_over_finite_field(Pbar))
    if (rng.below(2))
      for (unsigned i = 0; i < mult; ++i) fpart = fpart * q;
  Poly ebar;
  if (fpart.degree() == 0) {
    ebar = Poly::one(F);
  } else if (fpart.degree() == Pbar.degree()) {
    ebar = Poly::zero(F);
  } else {
    Poly gpart = Pbar.divmod_monic(fpart).first;
    PolyXgcd xg = poly_xgcd(fpart, gpart);
    REQUIRE(xg.g.degree() == 0);
    ebar = (xg.s * fpart).divmod_monic(Pbar).second;
  }
  Poly e = spoly(cert, ebar);
  std::vector<Elem> fuzz;
  Elem p = cert.ring()->from_int(cert.p());
  for (long j = 0; j < P.degree(); ++j)
    fuzz.push_back(p * random_element(cert.ring(), rng));
  return e + Poly::from_coeffs(cert.ring(), fuzz);
}

/// Independent factor-lifting oracle: linear Bezout-correction iteration.
/// Coefficients of the F correction above its degree are one ideal power
/// smaller than the current defect, so dropping them is exact in the limit.
HenselFactors bezout_lift(const LocalCertificate& cert, const Poly& P,
                          const Poly& fbar, const Poly& gbar) {
  const RingPtr& R = cert.ring();
  PolyXgcd xg = poly_xgcd(fbar, gbar);
  REQUIRE(xg.g.degree() == 0);
  Poly F = spoly(cert, fbar);
  Poly G = spoly(cert, gbar);
  Poly s0 = spoly(cert, xg.s);
  Poly t0 = spoly(cert, xg.t);
  long l = fbar.degree();
  for (std::uint64_t i = 0; i < cert.nilpotency_index_bound(); ++i) {
    Poly e = P - F * G;
    if (e.is_zero()) break;
    auto [q, r] = (s0 * e).divmod_monic(G);
    Poly fcorr = t0 * e + q * F;
    std::vector<Elem> low;
    for (long j = 0; j < l; ++j) low.push_back(fcorr.coeff(j));
    F = F + Poly::from_coeffs(R, low);
    G = G + r;
  }
  REQUIRE(F * G == P);
  return {F, G};
}

}  // namespace

TEST_CASE("simple root lifting over small local rings") {
  RingPtr z25 = Ring::zmod(5, 2);
  LocalCertificate c25 = check_local(z25);
  const RingPtr& f5 = c25.residue_field();

  SUBCASE("square root of -1 modulo 25") {
    Poly P = make(z25, {1, 0, 1});
    CHECK(lift_simple_root(c25, P, f5->from_int(2)) == z25->from_int(7));
    CHECK(lift_simple_root(c25, P, f5->from_int(3)) == z25->from_int(18));
  }

  SUBCASE("cubic with a unique unit-derivative root") {
    Poly P = make(z25, {0, 5, -1, 1});
    CHECK(lift_simple_root(c25, P, f5->from_int(1)) == z25->from_int(21));
  }

  SUBCASE("linear polynomials lift to their own root") {
    RingPtr z27 = Ring::zmod(3, 3);
    LocalCertificate c27 = check_local(z27);
    Poly P = Poly::x(z27) - Poly::constant(z27->from_int(12));
    Elem a = lift_simple_root(c27, P, c27.residue_field()->zero());
    CHECK(a == z27->from_int(12));
  }

  SUBCASE("over a field the section is already the root") {
    RingPtr f7 = Ring::prime_field(7);
    LocalCertificate c7 = check_local(f7);
    Poly P = make(f7, {-2, 0, 1});
    CHECK(lift_simple_root(c7, P, c7.residue_field()->from_int(3)) ==
          f7->from_int(3));
  }

  SUBCASE("ramified quadratic extension tower") {
    RingPtr z9 = Ring::zmod(3, 2);
    RingPtr R = z9->quotient(
        "y", {z9->from_int(-3), z9->zero(), z9->one()});
    LocalCertificate cert = check_local(R);
    Elem y = R->generator(0);
    Poly P = make(R, {0, 0, 1}) - Poly::constant(R->one() + y);
    Elem a = lift_simple_root(cert, P, cert.residue_field()->one());
    CHECK(P.evaluate(a).is_zero());
    CHECK(cert.residue(a) == cert.residue_field()->one());
  }

  SUBCASE("rejections") {
    Poly P = make(z25, {1, 0, 1});
    CHECK(thrown_code([&] { lift_simple_root(c25, P, f5->from_int(1)); }) ==
          errc::not_simple_root);
    Poly sq = make(z25, {0, 0, 1});
    CHECK(thrown_code([&] { lift_simple_root(c25, sq, f5->zero()); }) ==
          errc::not_simple_root);
    Poly nm = make(z25, {1, 0, 2});
    CHECK(thrown_code([&] { lift_simple_root(c25, nm, f5->zero()); }) ==
          errc::non_monic);
    CHECK(thrown_code([&] { lift_simple_root(c25, P, z25->from_int(2)); }) ==
          errc::base_ring_mismatch);
    RingPtr z9 = Ring::zmod(3, 2);
    CHECK(thrown_code([&] {
            lift_simple_root(c25, make(z9, {1, 0, 1}), f5->from_int(2));
          }) == errc::base_ring_mismatch);
  }
}

TEST_CASE("root lifting agrees with exhaustive search") {
  struct Case {
    unsigned long p;
    unsigned k;
  };
  for (Case pk : {Case{2, 3}, Case{3, 2}, Case{5, 2}, Case{3, 3}, Case{7, 2}}) {
    RingPtr R = Ring::zmod(pk.p, pk.k);
    LocalCertificate cert = check_local(R);
    Rng rng(kDefaultSeed + pk.p * 10 + pk.k);
    for (int it = 0; it < 40; ++it) {
      Poly f = random_monic(R, rng, 2 + rng.below(3));
      for (const auto& [q, mult] : factor_over_finite_field(rpoly(cert, f))) {
        if (q.degree() != 1 || mult != 1) continue;
        Elem r = -q.coeff(0);
        Elem a = lift_simple_root(cert, f, r);
        CHECK(f.evaluate(a).is_zero());
        CHECK(cert.residue(a) == r);
        int hits = 0;
        for (const Value& v : R->enumerate(1000)) {
          Elem b = R->element(v);
          if (f.evaluate(b).is_zero() && cert.residue(b) == r) {
            ++hits;
            CHECK(b == a);
          }
        }
        CHECK(hits == 1);
      }
    }
  }
}

TEST_CASE("root lifting on residually threshold-shaped inputs") {
  // residue X^l (X - 1): the root at 1 stays simple however deep the ideal is
  RingPtr z16 = Ring::zmod(2, 4);
  LocalCertificate cert = check_local(z16);
  Rng rng(kDefaultSeed);
  for (unsigned l = 1; l <= 3; ++l) {
    for (int it = 0; it < 10; ++it) {
      Poly base = Poly::x(z16) - Poly::one(z16);
      for (unsigned i = 0; i < l; ++i) base = base * Poly::x(z16);
      std::vector<Elem> pert;
      for (unsigned j = 0; j <= l; ++j)
        pert.push_back(z16->from_int(2) * random_element(z16, rng));
      Poly P = base + Poly::from_coeffs(z16, pert);
      Elem a = lift_simple_root(cert, P, cert.residue_field()->one());
      CHECK(P.evaluate(a).is_zero());
      CHECK(cert.residue(a) == cert.residue_field()->one());
      if (l >= 2 && cert.residue(P.coeff(0)).is_zero() &&
          cert.residue(P.coeff(1)).is_zero())
        CHECK(thrown_code([&] {
                lift_simple_root(cert, P, cert.residue_field()->zero());
              }) == errc::not_simple_root);
    }
  }
}

TEST_CASE("searching for a unit-derivative root") {
  SUBCASE("skips the doubled root and returns the clean one") {
    RingPtr f5 = Ring::prime_field(5);
    LocalCertificate cert = check_local(f5);
    Poly f = make(f5, {-2, 5, -4, 1});  // (x-1)^2 (x-2)
    CHECK(find_simple_root(cert, f) == f5->from_int(2));

    RingPtr z25 = Ring::zmod(5, 2);
    LocalCertificate c25 = check_local(z25);
    Poly g = make(z25, {-2, 5, -4, 1});
    CHECK(find_simple_root(c25, g) == z25->from_int(2));
  }

  SUBCASE("picks the unramified branch of a residually multiple picture") {
    RingPtr z25 = Ring::zmod(5, 2);
    LocalCertificate cert = check_local(z25);
    CHECK(find_simple_root(cert, make(z25, {0, 0, -1, 1})) == z25->one());
  }

  SUBCASE("linear input returns its root") {
    RingPtr z27 = Ring::zmod(3, 3);
    LocalCertificate cert = check_local(z27);
    Poly f = Poly::x(z27) - Poly::constant(z27->from_int(5));
    CHECK(find_simple_root(cert, f) == z27->from_int(5));
  }

  SUBCASE("ramified everywhere is rejected") {
    RingPtr f5 = Ring::prime_field(5);
    LocalCertificate cert = check_local(f5);
    Poly f = make(f5, {1, -2, 1});  // (x-1)^2
    CHECK(thrown_code([&] { find_simple_root(cert, f); }) ==
          errc::not_unramifiable);
  }

  SUBCASE("unramifiable but rootless residue is reported") {
    RingPtr z9 = Ring::zmod(3, 2);
    LocalCertificate cert = check_local(z9);
    Poly f = make(z9, {2, 1, 1});  // irreducible mod 3
    CHECK(thrown_code([&] { find_simple_root(cert, f); }) ==
          errc::no_residual_root);
    // exact roots exist below x^2 (x^2+x+2) but none has a unit derivative
    Poly g = make(z9, {0, 0, 2, 1, 1});
    CHECK(thrown_code([&] { find_simple_root(cert, g); }) ==
          errc::no_residual_root);
    // and the same shape with the double class emptied of exact roots
    Poly h = make(z9, {3, 0, 2, 1, 1});
    CHECK(thrown_code([&] { find_simple_root(cert, h); }) ==
          errc::no_residual_root);
  }

  SUBCASE("found roots always pass the derivative test") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
      RingPtr R = Ring::zmod(p, 2);
      LocalCertificate cert = check_local(R);
      Rng rng(kDefaultSeed + p);
      for (int it = 0; it < 25; ++it) {
        Poly f = random_monic(R, rng, 1 + rng.below(3));
        try {
          Elem a = find_simple_root(cert, f);
          CHECK(f.evaluate(a).is_zero());
          CHECK(f.derivative().evaluate(a).invertible());
        } catch (const error& e) {
          bool expected = e.code == errc::not_unramifiable ||
                          e.code == errc::no_residual_root;
          CHECK(expected);
        }
      }
    }
  }
}

TEST_CASE("idempotent lifting in a monic quotient") {
  RingPtr z9 = Ring::zmod(3, 2);
  LocalCertificate c9 = check_local(z9);
  Poly P = make(z9, {2, -3, 1});  // x^2 - 3x + 2

  SUBCASE("pinned quadratic lift") {
    Poly e = make(z9, {2, 2});
    Poly expected = make(z9, {2, 8});
    CHECK(lift_idempotent_monic_quotient(c9, P, e) == expected);
    CHECK(lift_idempotent_monic_quotient(c9, P, e,
                                         IdempotentMethod::universal_roots) ==
          expected);
  }

  SUBCASE("explicit construction exposes an exact orthogonal family") {
    Poly e = make(z9, {2, 2});
    OrthogonalIdempotentFamily fam;
    lift_idempotent_monic_quotient(c9, P, e, IdempotentMethod::universal_roots,
                                   &fam);
    REQUIRE(fam.elements.size() == 2);
    Elem sum = fam.ring->zero();
    for (size_t i = 0; i < fam.elements.size(); ++i) {
      const Elem& v = fam.elements[i];
      CHECK(v * v == v);
      for (size_t j = i + 1; j < fam.elements.size(); ++j)
        CHECK((v * fam.elements[j]).is_zero());
      sum = sum + v;
    }
    CHECK(sum == fam.ring->one());
  }

  SUBCASE("exact idempotents come back unchanged") {
    Poly Q = make(z9, {0, -1, 1});  // x^2 - x
    for (const Poly& e : {Poly::x(z9), Poly::one(z9) - Poly::x(z9),
                          Poly::one(z9), Poly::zero(z9)}) {
      Poly u = lift_idempotent_monic_quotient(c9, Q, e);
      CHECK(u == e.divmod_monic(Q).second);
      CHECK(lift_idempotent_monic_quotient(
                c9, Q, e, IdempotentMethod::universal_roots) == u);
    }
  }

  SUBCASE("input is reduced modulo the quotient first") {
    Poly e = make(z9, {2, 2});
    Poly padded = e + P * make(z9, {1, 1});
    CHECK(lift_idempotent_monic_quotient(c9, P, padded) == make(z9, {2, 8}));
  }

  SUBCASE("degree one quotient collapses to the scalar case") {
    RingPtr z25 = Ring::zmod(5, 2);
    LocalCertificate c25 = check_local(z25);
    Poly L = Poly::x(z25) - Poly::constant(z25->from_int(5));
    Poly u = lift_idempotent_monic_quotient(c25, L, Poly::x(z25));
    CHECK(u.is_zero());
    CHECK(lift_idempotent_monic_quotient(
              c25, L, Poly::x(z25), IdempotentMethod::universal_roots) == u);
  }

  SUBCASE("rejections") {
    CHECK(thrown_code([&] {
            lift_idempotent_monic_quotient(c9, P, Poly::x(z9));
          }) == errc::not_residually_idempotent);
    CHECK(thrown_code([&] {
            lift_idempotent_monic_quotient(c9, make(z9, {1, 0, 2}),
                                           Poly::zero(z9));
          }) == errc::non_monic);
    CHECK(thrown_code([&] {
            lift_idempotent_monic_quotient(c9, Poly::one(z9), Poly::zero(z9));
          }) == errc::bad_input);
    RingPtr z25 = Ring::zmod(5, 2);
    CHECK(thrown_code([&] {
            lift_idempotent_monic_quotient(c9, P, Poly::x(z25));
          }) == errc::base_ring_mismatch);
    Poly big = make(z9, {0, -1, 0, 0, 0, 0, 1});  // degree 6
    CHECK(thrown_code([&] {
            lift_idempotent_monic_quotient(c9, big, Poly::zero(z9),
                                           IdempotentMethod::universal_roots);
          }) == errc::rank_cap_exceeded);
    CHECK(lift_idempotent_monic_quotient(c9, big, Poly::zero(z9)).is_zero());
  }

  SUBCASE("both methods agree on random residually idempotent inputs") {
    struct Case {
      unsigned long p;
      unsigned k;
    };
    for (Case pk : {Case{3, 2}, Case{5, 2}, Case{3, 3}}) {
      RingPtr R = Ring::zmod(pk.p, pk.k);
      LocalCertificate cert = check_local(R);
      Rng rng(kDefaultSeed + pk.p + pk.k);
      for (int it = 0; it < 25; ++it) {
        Poly Q = random_monic(R, rng, 2 + rng.below(3));
        Poly e = random_split_idempotent(cert, Q, rng);
        Poly u = lift_idempotent_monic_quotient(cert, Q, e);
        CHECK(same_mod(u * u, u, Q));
        CHECK(residue_matches(cert, u, e, Q));
        Poly u2 = lift_idempotent_monic_quotient(
            cert, Q, e, IdempotentMethod::universal_roots);
        CHECK(u == u2);
      }
    }
  }
}

TEST_CASE("coprime factor lifting") {
  RingPtr z25 = Ring::zmod(5, 2);
  LocalCertificate c25 = check_local(z25);
  const RingPtr& f5 = c25.residue_field();

  SUBCASE("pinned quadratic split") {
    HenselFactors hf = hensel_factor(c25, make(z25, {1, 0, 1}),
                                     make(f5, {-2, 1}), make(f5, {-3, 1}));
    CHECK(hf.F == make(z25, {-7, 1}));
    CHECK(hf.G == make(z25, {-18, 1}));
  }

  SUBCASE("already split inputs are returned as they are") {
    RingPtr z9 = Ring::zmod(3, 2);
    LocalCertificate c9 = check_local(z9);
    const RingPtr& f3 = c9.residue_field();
    HenselFactors hf = hensel_factor(c9, make(z9, {0, -1, 1}),
                                     Poly::x(f3), make(f3, {-1, 1}));
    CHECK(hf.F == Poly::x(z9));
    CHECK(hf.G == make(z9, {-1, 1}));
  }

  SUBCASE("degenerate splits") {
    Poly P = make(z25, {1, 0, 1});
    Poly Pbar = rpoly(c25, P);
    HenselFactors a = hensel_factor(c25, P, Poly::one(f5), Pbar);
    CHECK(a.F == Poly::one(z25));
    CHECK(a.G == P);
    HenselFactors b = hensel_factor(c25, P, Pbar, Poly::one(f5));
    CHECK(b.F == P);
    CHECK(b.G == Poly::one(z25));
  }

  SUBCASE("rejections") {
    RingPtr z9 = Ring::zmod(3, 2);
    LocalCertificate c9 = check_local(z9);
    const RingPtr& f3 = c9.residue_field();
    // x^2 + 1 stays irreducible mod 3, so no residual split can match
    CHECK(thrown_code([&] {
            hensel_factor(c9, make(z9, {1, 0, 1}), make(f3, {1, 1}),
                          make(f3, {2, 1}));
          }) == errc::residue_mismatch);
    CHECK(thrown_code([&] {
            hensel_factor(c9, make(z9, {0, 0, 1}), Poly::x(f3), Poly::x(f3));
          }) == errc::not_coprime);
    CHECK(thrown_code([&] {
            hensel_factor(c9, make(z9, {0, 0, 1}), make(f3, {0, 2}),
                          Poly::x(f3));
          }) == errc::non_monic);
    CHECK(thrown_code([&] {
            hensel_factor(c9, make(z9, {0, 0, 1}), Poly::x(f5), Poly::x(f3));
          }) == errc::base_ring_mismatch);
  }

  SUBCASE("agrees with the Bezout-correction oracle") {
    struct Case {
      unsigned long p;
      unsigned k;
    };
    for (Case pk : {Case{2, 4}, Case{3, 3}, Case{5, 2}, Case{5, 1}}) {
      RingPtr R = Ring::zmod(pk.p, pk.k);
      LocalCertificate cert = check_local(R);
      const RingPtr& F = cert.residue_field();
      Rng rng(kDefaultSeed + 100 * pk.p + pk.k);
      for (int it = 0; it < 12; ++it) {
        Poly fbar, gbar;
        do {
          fbar = random_monic(F, rng, 1 + rng.below(2));
          gbar = random_monic(F, rng, 1 + rng.below(2));
        } while (poly_gcd(fbar, gbar).degree() != 0);
        std::vector<Elem> fuzz;
        for (long j = 0; j < fbar.degree() + gbar.degree(); ++j)
          fuzz.push_back(R->from_int(pk.p) * random_element(R, rng));
        Poly P = spoly(cert, fbar * gbar) + Poly::from_coeffs(R, fuzz);
        HenselFactors hf = hensel_factor(cert, P, fbar, gbar);
        CHECK(hf.F * hf.G == P);
        CHECK(rpoly(cert, hf.F) == fbar);
        CHECK(rpoly(cert, hf.G) == gbar);
        HenselFactors oracle = bezout_lift(cert, P, fbar, gbar);
        CHECK(hf.F == oracle.F);
        CHECK(hf.G == oracle.G);
      }
    }
  }
}

TEST_CASE("factored polynomials keep a unit-derivative root visible") {
  // If (x - a) g is unramifiable then either a itself has unit derivative
  // value or the cofactor is unramifiable in its own right.
  struct Case {
    unsigned long p;
    unsigned k;
  };
  for (Case pk : {Case{3, 2}, Case{5, 2}, Case{2, 3}, Case{5, 1}}) {
    RingPtr R = Ring::zmod(pk.p, pk.k);
    Rng rng(kDefaultSeed + 7 * pk.p + pk.k);
    for (int it = 0; it < 25; ++it) {
      Elem a = random_element(R, rng);
      Poly g = random_monic(R, rng, 1 + rng.below(3));
      Poly f = (Poly::x(R) - Poly::constant(a)) * g;
      if (!test_unramifiable(R, f).unramifiable) continue;
      bool unit_deriv = f.derivative().evaluate(a).invertible();
      CHECK((unit_deriv || test_unramifiable(R, g).unramifiable));
    }
  }
}
