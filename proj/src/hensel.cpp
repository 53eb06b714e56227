#include "aza/hensel.hpp"

#include <bit>
#include <cstdint>
#include <utility>

#include "aza/algebra.hpp"
#include "aza/decomp.hpp"
#include "aza/error.hpp"

namespace aza {

namespace {

Poly residue_poly(const LocalCertificate& cert, const Poly& P) {
  return P.map_coeffs(cert.residue_field(),
                      [&](const Elem& c) { return cert.residue(c); });
}

Poly section_poly(const LocalCertificate& cert, const Poly& Pbar) {
  return Pbar.map_coeffs(cert.ring(),
                         [&](const Elem& c) { return cert.section(c); });
}

/// Smallest t with 2^t >= K, plus one spare step for the stability check.
std::uint64_t newton_cap(std::uint64_t K) {
  std::uint64_t t = 0;
  while (t < 63 && (std::uint64_t{1} << t) < K) ++t;
  return t + 1;
}

/// Newton refinement of an exact-residue starting point: the derivative at
/// `a` stays invertible and the defect square-shrinks along the nilpotent
/// maximal ideal.
Elem newton_root(const Poly& Q, Elem a, std::uint64_t K) {
  Poly Qp = Q.derivative();
  std::uint64_t cap = newton_cap(K);
  for (std::uint64_t t = 0; t <= cap; ++t) {
    Elem v = Q.evaluate(a);
    if (v.is_zero()) return a;
    auto inv = a.ring()->try_inverse(Qp.evaluate(a));
    if (!inv) fail(errc::internal, "derivative lost invertibility during Newton refinement");
    a = a - v * *inv;
  }
  fail(errc::internal, "Newton iteration did not stabilize within its bound");
}

void collect_coords(const RingPtr& A, size_t down_level, const Value& v,
                    size_t level, std::vector<Value>& out) {
  if (level == down_level) {
    out.push_back(v);
    return;
  }
  const ValueVec& vv = v.as_vec();
  for (const Value& c : vv) collect_coords(A, down_level, c, level - 1, out);
}

/// Coordinates of an element of A over the prefix R along quotient steps.
std::vector<Elem> coords_over(const RingPtr& A, const RingPtr& R, const Elem& x) {
  std::vector<Value> raw;
  collect_coords(A, R->depth(), x.value(), A->depth(), raw);
  std::vector<Elem> out;
  out.reserve(raw.size());
  for (Value& v : raw) out.push_back(R->element(std::move(v)));
  return out;
}

bool residually_zero(const LocalCertificate& cert, const RingPtr& A, const Elem& x) {
  for (const Elem& c : coords_over(A, cert.ring(), x))
    if (!cert.residue(c).is_zero()) return false;
  return true;
}

/// Element of S = R[x]/(P) named by a representative polynomial over R.
Elem quotient_elem(const RingPtr& S, const Poly& p) {
  Elem x = S->generator(S->depth() - 1);
  Elem acc = S->zero();
  for (long j = p.degree(); j >= 0; --j)
    acc = acc * x + p.coeff(j).embed_into(S);
  return acc;
}

/// Representative polynomial (degree < deg P) of an element of R[x]/(P).
Poly quotient_rep(const RingPtr& R, const Elem& u) {
  const ValueVec& vv = u.value().as_vec();
  std::vector<Elem> coeffs;
  coeffs.reserve(vv.size());
  for (const Value& v : vv) coeffs.push_back(R->element(v));
  return Poly::from_coeffs(R, coeffs);
}

std::vector<Elem> modulus_of(const Poly& P) {
  std::vector<Elem> mod;
  mod.reserve(static_cast<size_t>(P.degree()) + 1);
  for (long j = 0; j <= P.degree(); ++j) mod.push_back(P.coeff(j));
  return mod;
}

}  // namespace

Elem lift_simple_root(const LocalCertificate& cert, const Poly& P,
                      const Elem& residual_root) {
  const RingPtr& R = cert.ring();
  if (!P.ring() || !P.ring()->same_as(*R))
    fail(errc::base_ring_mismatch, "polynomial is not over the certified ring");
  if (!P.is_monic()) fail(errc::non_monic, "root lifting needs a monic polynomial");
  if (!residual_root.ring() || !residual_root.ring()->same_as(*cert.residue_field()))
    fail(errc::base_ring_mismatch, "residual root is not in the residue field");

  Poly Pbar = residue_poly(cert, P);
  if (!Pbar.evaluate(residual_root).is_zero())
    fail(errc::not_simple_root, "value is not a residual root");
  if (Pbar.derivative().evaluate(residual_root).is_zero())
    fail(errc::not_simple_root, "residual derivative vanishes at the root");

  Elem a = newton_root(P, cert.section(residual_root), cert.nilpotency_index_bound());
  if (!(cert.residue(a) == residual_root))
    fail(errc::internal, "lifted root drifted to another residue");
  return a;
}

Elem find_simple_root(const LocalCertificate& cert, const Poly& f,
                      unsigned max_degree) {
  const RingPtr& R = cert.ring();
  if (!f.ring() || !f.ring()->same_as(*R))
    fail(errc::base_ring_mismatch, "polynomial is not over the certified ring");
  if (!f.is_monic()) fail(errc::non_monic, "root search needs a monic polynomial");

  constexpr std::uint64_t kDeskScale = 200000;
  Poly fprime = f.derivative();
  Poly g = f;
  for (;;) {
    if (!test_unramifiable(R, g, max_degree).unramifiable)
      fail(errc::not_unramifiable, "cofactor is ramified everywhere");
    Poly gbar = residue_poly(cert, g);
    bool any_residual_root = false;
    Elem simple_residual = cert.residue_field()->zero();
    bool have_simple = false;
    for (const auto& [q, mult] : factor_over_finite_field(gbar)) {
      if (q.degree() != 1) continue;
      any_residual_root = true;
      if (mult == 1 && !have_simple) {
        simple_residual = -q.coeff(0);
        have_simple = true;
      }
    }
    if (!any_residual_root)
      fail(errc::no_residual_root, "no residual root in the residue field");

    Elem a = R->zero();
    bool have_exact = false;
    if (have_simple) {
      a = lift_simple_root(cert, g, simple_residual);
      have_exact = true;
    } else {
      // all residual roots are multiple: search the finite ring directly
      for (const Value& v : R->enumerate(kDeskScale)) {
        Elem candidate = R->element(v);
        if (g.evaluate(candidate).is_zero()) {
          a = candidate;
          have_exact = true;
          break;
        }
      }
      if (!have_exact)
        fail(errc::no_residual_root, "residual roots do not lift to exact roots");
    }

    if (R->is_invertible(fprime.evaluate(a))) return a;
    auto [quot, rem] = g.divmod_monic(Poly::x(R) - Poly::constant(a));
    if (!rem.is_zero()) fail(errc::internal, "exact root does not divide the cofactor");
    g = std::move(quot);
  }
}

namespace {

Poly lift_idempotent_by_roots(const LocalCertificate& cert, const Poly& P,
                              const Poly& e, const RingPtr& S, const Elem& e_S,
                              OrthogonalIdempotentFamily* family) {
  const RingPtr& R = cert.ring();
  if (P.degree() > 5)
    fail(errc::rank_cap_exceeded,
         "explicit idempotent construction is capped at degree 5");
  auto da = build_decomposition_algebra(R, P, 6);
  const RingPtr& A = da.ring;
  unsigned n = static_cast<unsigned>(P.degree());

  Poly eA = e.embed_into(A);
  std::vector<Elem> eps;
  eps.reserve(n);
  for (const Elem& x : da.roots) eps.push_back(eA.evaluate(x));

  // products over subsets of roots, subset encoded as a bit mask
  std::vector<Elem> prod(size_t{1} << n, A->one());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t low = mask & (~mask + 1);
    prod[mask] = prod[mask ^ low] * eps[static_cast<unsigned>(std::countr_zero(low))];
  }

  unsigned k = 0;
  for (unsigned size = n;; --size) {
    bool any = false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
      if (std::popcount(mask) == static_cast<int>(size) &&
          !residually_zero(cert, A, prod[mask])) {
        any = true;
        break;
      }
    if (any) {
      k = size;
      break;
    }
    if (size == 0) break;
  }

  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) == static_cast<int>(k)) masks.push_back(mask);
  size_t N = masks.size();

  Poly Q = Poly::one(A);
  for (std::uint32_t mask : masks)
    Q = Q * (Poly::x(A) - Poly::constant(prod[mask]));

  // the residual shape X^(N-1)(X-1) is what makes 1 a simple residual root
  if (!residually_zero(cert, A, Q.coeff(static_cast<long>(N) - 1) + A->one()))
    fail(errc::internal, "subset products violate the expected residual shape");
  for (size_t j = 0; j + 1 < N; ++j)
    if (!residually_zero(cert, A, Q.coeff(static_cast<long>(j))))
      fail(errc::internal, "subset products violate the expected residual shape");

  Elem alpha = newton_root(Q, A->one(), cert.nilpotency_index_bound());
  auto lambda_inv = A->try_inverse(Q.derivative().evaluate(alpha));
  if (!lambda_inv) fail(errc::internal, "derivative at the split point is not a unit");

  std::vector<Elem> v;
  v.reserve(N);
  for (size_t i = 0; i < N; ++i) {
    Elem w = *lambda_inv;
    for (size_t j = 0; j < N; ++j)
      if (j != i) w = w * (alpha - prod[masks[j]]);
    v.push_back(w);
  }
  if (family) *family = OrthogonalIdempotentFamily{A, v};

  Elem uA = A->zero();
  for (size_t i = 0; i < N; ++i)
    if (masks[i] & 1u) uA = uA + v[i];

  // the sum is symmetric in the other roots, so it lives in R[x_1]
  Poly u;
  if (A->depth() == R->depth()) {
    u = Poly::constant(uA);
  } else {
    Value cur = uA.value();
    for (size_t level = A->depth(); level > R->depth() + 1; --level) {
      ValueVec vv = std::get<ValueVec>(std::move(cur.rep));
      for (size_t i = 1; i < vv.size(); ++i)
        if (!A->v_is_zero(vv[i], level - 1))
          fail(errc::internal, "idempotent escaped the first adjunction level");
      cur = std::move(vv[0]);
    }
    RingPtr S1 = A->prefix(R->depth() + 1);
    u = quotient_rep(R, S1->element(std::move(cur)));
  }

  Elem u_S = quotient_elem(S, u);
  if (!(u_S * u_S == u_S)) fail(errc::internal, "constructed lift is not idempotent");
  if (!residually_zero(cert, S, u_S - e_S))
    fail(errc::internal, "constructed lift has the wrong residue");
  return u;
}

}  // namespace

Poly lift_idempotent_monic_quotient(const LocalCertificate& cert, const Poly& P,
                                    const Poly& e, IdempotentMethod method,
                                    OrthogonalIdempotentFamily* family) {
  const RingPtr& R = cert.ring();
  if (!P.ring() || !P.ring()->same_as(*R) || !e.ring() || !e.ring()->same_as(*R))
    fail(errc::base_ring_mismatch, "inputs are not over the certified ring");
  if (!P.is_monic()) fail(errc::non_monic, "quotient modulus must be monic");
  if (P.degree() < 1) fail(errc::bad_input, "quotient modulus must have positive degree");

  Poly e_red = e.divmod_monic(P).second;
  RingPtr S = R->quotient("x", modulus_of(P));
  Elem e_S = quotient_elem(S, e_red);
  if (!residually_zero(cert, S, e_S * e_S - e_S))
    fail(errc::not_residually_idempotent, "input is not idempotent modulo the maximal ideal");

  if (method == IdempotentMethod::universal_roots)
    return lift_idempotent_by_roots(cert, P, e_red, S, e_S, family);

  Elem u = e_S;
  std::uint64_t cap = newton_cap(cert.nilpotency_index_bound());
  for (std::uint64_t t = 0; t <= cap; ++t) {
    Elem uu = u * u;
    if (uu == u) break;
    u = uu * (S->from_int(3) - S->from_int(2) * u);
  }
  if (!(u * u == u)) fail(errc::internal, "Newton idempotent refinement did not stabilize");
  if (!residually_zero(cert, S, u - e_S))
    fail(errc::internal, "refined idempotent has the wrong residue");
  return quotient_rep(R, u);
}

HenselFactors hensel_factor(const LocalCertificate& cert, const Poly& P,
                            const Poly& fbar, const Poly& gbar) {
  const RingPtr& R = cert.ring();
  const RingPtr& F = cert.residue_field();
  if (!P.ring() || !P.ring()->same_as(*R))
    fail(errc::base_ring_mismatch, "polynomial is not over the certified ring");
  if (!fbar.ring() || !fbar.ring()->same_as(*F) || !gbar.ring() ||
      !gbar.ring()->same_as(*F))
    fail(errc::base_ring_mismatch, "residual factors are not over the residue field");
  if (!P.is_monic() || !fbar.is_monic() || !gbar.is_monic())
    fail(errc::non_monic, "factor lifting needs monic polynomials");

  Poly Pbar = residue_poly(cert, P);
  if (!(Pbar == fbar * gbar))
    fail(errc::residue_mismatch, "residual factors do not multiply to the residue of P");

  long l = fbar.degree();
  long m = gbar.degree();
  if (l == 0) return {Poly::one(R), P};
  if (m == 0) return {P, Poly::one(R)};

  PolyXgcd xg = poly_xgcd(fbar, gbar);
  if (xg.g.degree() != 0)
    fail(errc::not_coprime, "residual factors share a common divisor");

  // idempotent cutting out the G-side component of F[x]/(Pbar)
  Poly ebar = (xg.s * fbar).divmod_monic(Pbar).second;
  Poly E = lift_idempotent_monic_quotient(cert, P, section_poly(cert, ebar),
                                          IdempotentMethod::newton);

  RingPtr S = R->quotient("x", modulus_of(P));
  Elem x = S->generator(S->depth() - 1);
  long n = P.degree();

  auto companion = [&](const Elem& idem, long deg) {
    // monic annihilator of x on the free summand idem*S, via the coordinates
    // of idem, idem*x, ..., idem*x^deg over R
    std::vector<std::vector<Elem>> cols;
    Elem pw = idem;
    for (long j = 0; j <= deg; ++j) {
      cols.push_back(coords_over(S, R, pw));
      pw = pw * x;
    }
    std::vector<Elem> mat;
    mat.reserve(static_cast<size_t>(n) * static_cast<size_t>(deg));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < deg; ++j) mat.push_back(cols[j][i]);
    auto sol = solve_linear(R, mat, static_cast<size_t>(n),
                            static_cast<size_t>(deg), cols[deg]);
    if (!sol) fail(errc::internal, "summand annihilator system is unsolvable");
    std::vector<Elem> coeffs = *sol;
    for (Elem& c : coeffs) c = -c;
    coeffs.push_back(R->one());
    return Poly::from_coeffs(R, coeffs);
  };

  Elem E_S = quotient_elem(S, E);
  Poly G = companion(E_S, m);
  Poly Fq = companion(S->one() - E_S, l);

  if (!(Fq * G == P)) fail(errc::internal, "lifted factors do not multiply back to P");
  if (!(residue_poly(cert, Fq) == fbar) || !(residue_poly(cert, G) == gbar))
    fail(errc::internal, "lifted factors have the wrong residues");
  return {Fq, G};
}

namespace {

AlgebraElement evaluate_in_algebra(const Poly& f, const AlgebraElement& a) {
  AlgebraElement acc = a.algebra()->zero();
  for (long j = f.degree(); j >= 0; --j)
    acc = acc * a + a.algebra()->from_base(f.coeff(j));
  return acc;
}

}  // namespace

std::vector<Elem> lift_idempotent_algebra(const LocalCertificate& cert,
                                          const AlgebraPtr& A,
                                          const std::vector<Elem>& a_coords) {
  const RingPtr& R = cert.ring();
  if (!A || !A->ring()->same_as(*R))
    fail(errc::base_ring_mismatch, "algebra is not over the certified ring");
  size_t r = A->rank();
  if (a_coords.size() != r)
    fail(errc::bad_input, "coordinate vector has the wrong length");
  if (r == 0) return {};

  AlgebraElement a = A->element(a_coords);
  AlgebraElement defect = a * a - a;
  for (const Elem& c : defect.coords())
    if (!cert.residue(c).is_zero())
      fail(errc::not_residually_idempotent,
           "element is not idempotent modulo the maximal ideal");

  // minimal monic annihilator by incremental dependence of 1, a, a^2, ...
  std::vector<std::vector<Elem>> pows = {A->one().coords()};
  AlgebraElement ap = A->one();
  Poly F = Poly::zero(R);
  for (size_t d = 1; d <= r; ++d) {
    ap = ap * a;
    std::vector<Elem> mat;
    mat.reserve(r * d);
    for (size_t row = 0; row < r; ++row)
      for (size_t j = 0; j < d; ++j) mat.push_back(pows[j][row]);
    auto sol = solve_linear(R, mat, r, d, ap.coords());
    if (sol) {
      std::vector<Elem> coeffs = std::move(*sol);
      for (Elem& c : coeffs) c = -c;
      coeffs.push_back(R->one());
      F = Poly::from_coeffs(R, coeffs);
      break;
    }
    pows.push_back(ap.coords());
  }
  if (F.degree() < 1)
    fail(errc::internal, "no monic annihilator within the rank bound");

  Poly Fbar = residue_poly(cert, F);
  const RingPtr& K = cert.residue_field();
  unsigned n = 0, m = 0;
  for (const auto& [q, mult] : factor_over_finite_field(Fbar)) {
    if (q == Poly::x(K)) n = mult;
    if (q == Poly::x(K) - Poly::one(K)) m = mult;
  }
  // the residual spectrum of a sits inside {0, 1}: no X part means a is
  // residually 1, no X-1 part means it is residually 0
  if (n == 0) return A->one().coords();
  if (m == 0) return A->zero().coords();

  Poly xpart = Poly::one(K);
  for (unsigned t = 0; t < n; ++t) xpart = xpart * Poly::x(K);
  auto [rest_bar, xrem] = Fbar.divmod_monic(xpart);
  if (!xrem.is_zero()) fail(errc::internal, "annihilator lost its X part");
  HenselFactors first = hensel_factor(cert, F, xpart, rest_bar);

  Poly onepart = Poly::one(K);
  for (unsigned t = 0; t < m; ++t)
    onepart = onepart * (Poly::x(K) - Poly::one(K));
  auto [hbar, orem] = rest_bar.divmod_monic(onepart);
  if (!orem.is_zero()) fail(errc::internal, "annihilator lost its X-1 part");
  HenselFactors second = hensel_factor(cert, first.G, onepart, hbar);

  AlgebraElement p = evaluate_in_algebra(first.F, a);
  AlgebraElement q = evaluate_in_algebra(second.F, a);
  auto mu = (p + q).try_inverse();
  if (!mu) fail(errc::internal, "idempotent splitting sum is not invertible");
  AlgebraElement e = *mu * p;

  if (!(e * e == e)) fail(errc::internal, "constructed element is not idempotent");
  AlgebraElement diff = e - a;
  for (const Elem& c : diff.coords())
    if (!cert.residue(c).is_zero())
      fail(errc::internal, "constructed idempotent has the wrong residue");
  return e.coords();
}

}  // namespace aza
