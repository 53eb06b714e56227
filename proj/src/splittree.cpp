#include "aza/splittree.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aza/decomp.hpp"
#include "aza/error.hpp"
#include "aza/hensel.hpp"

namespace aza {
namespace {

std::vector<Elem> apply_map(const RingPtr& r, const AutomorphismMatrix& m,
                            const std::vector<Elem>& x) {
  std::vector<Elem> out(m.dim, r->zero());
  for (size_t col = 0; col < m.dim; ++col) {
    if (x[col].is_zero()) continue;
    for (size_t row = 0; row < m.dim; ++row) {
      const Elem& c = m.entries[row * m.dim + col];
      if (c.is_zero()) continue;
      out[row] = out[row] + c * x[col];
    }
  }
  return out;
}

/// Indices of a maximal linearly independent subset of the given vectors,
/// scanned left to right. Pivot arithmetic needs a field.
std::vector<size_t> independent_columns(const std::vector<std::vector<Elem>>& cols) {
  std::vector<std::vector<Elem>> rows;
  std::vector<size_t> pivots;
  std::vector<size_t> chosen;
  for (size_t c = 0; c < cols.size(); ++c) {
    std::vector<Elem> v = cols[c];
    for (size_t t = 0; t < rows.size(); ++t) {
      Elem lead = v[pivots[t]];
      if (lead.is_zero()) continue;
      for (size_t idx = 0; idx < v.size(); ++idx)
        v[idx] = v[idx] - lead * rows[t][idx];
    }
    size_t piv = v.size();
    for (size_t idx = 0; idx < v.size(); ++idx)
      if (!v[idx].is_zero()) { piv = idx; break; }
    if (piv == v.size()) continue;
    Elem inv = v[piv].inverse();
    for (auto& x : v) x = x * inv;
    // Keep the stored rows reduced at the new pivot so one elimination pass
    // stays sound for later vectors.
    for (size_t t = 0; t < rows.size(); ++t) {
      Elem lead = rows[t][piv];
      if (lead.is_zero()) continue;
      for (size_t idx = 0; idx < v.size(); ++idx)
        rows[t][idx] = rows[t][idx] - lead * v[idx];
    }
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    chosen.push_back(c);
  }
  return chosen;
}

Elem random_field_element(const RingPtr& f, Rng& rng) {
  const Int& p = f->base().p;
  RingPtr core = f->core_ring();
  size_t m = f->flatten_rank();
  ValueVec coords;
  coords.reserve(m);
  for (size_t i = 0; i < m; ++i)
    coords.push_back(core->v_from_int(rng.int_below(p), 0));
  return f->element(f->from_coords(coords));
}

AlgebraElement random_in_algebra(const AlgebraPtr& a, Rng& rng) {
  std::vector<Elem> c;
  c.reserve(a->rank());
  for (size_t i = 0; i < a->rank(); ++i)
    c.push_back(random_field_element(a->ring(), rng));
  return a->element(c);
}

/// Dimension of the corner e A e, as the span of the e x_i e.
size_t corner_rank(const AlgebraPtr& a, const AlgebraElement& e) {
  std::vector<std::vector<Elem>> cols;
  for (size_t i = 0; i < a->rank(); ++i)
    cols.push_back((e * a->basis_element(i) * e).coords());
  return independent_columns(cols).size();
}

/// Minimal monic polynomial of z inside the corner with unit e.
Poly minimal_poly_in_corner(const AlgebraPtr& a, const AlgebraElement& e,
                            const AlgebraElement& z) {
  const RingPtr& r = a->ring();
  size_t rank = a->rank();
  std::vector<AlgebraElement> powers{e};
  while (true) {
    AlgebraElement next = powers.back() * z;
    size_t d = powers.size();
    std::vector<Elem> m(rank * d, r->zero());
    for (size_t row = 0; row < rank; ++row)
      for (size_t col = 0; col < d; ++col) m[row * d + col] = powers[col].coords()[row];
    if (auto c = solve_linear(r, m, rank, d, next.coords())) {
      std::vector<Elem> coeffs(d + 1, r->zero());
      for (size_t j = 0; j < d; ++j) coeffs[j] = -(*c)[j];
      coeffs[d] = r->one();
      return Poly::from_coeffs(r, coeffs);
    }
    if (d > rank) fail(errc::internal, "no linear relation among element powers");
    powers.push_back(std::move(next));
  }
}

AlgebraElement eval_poly_at(const Poly& f, const AlgebraElement& z,
                            const AlgebraElement& unit) {
  AlgebraElement acc = z.algebra()->zero();
  for (long i = f.degree(); i >= 0; --i) acc = acc * z + unit.scaled(f.coeff(i));
  return acc;
}

/// Empty string when the witness satisfies every invariant against `a`;
/// otherwise a description of the first violation.
std::string witness_violation(const AlgebraPtr& a, const MatrixUnitWitness& w) {
  size_t n = w.n;
  size_t r = a->rank();
  if (w.units.size() != n * n) return "witness does not carry n^2 units";
  if (n * n != r)
    return "matrix units cannot form a basis: n^2 differs from the algebra rank";
  for (const auto& u : w.units) {
    if (!u.algebra()) return "witness unit carries no algebra";
    if (!u.algebra()->same_as(*a)) return "witness unit lives in a different algebra";
  }
  if (r == 0) return "";
  auto at = [&](size_t i, size_t j) -> const AlgebraElement& {
    return w.units[i * n + j];
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          AlgebraElement prod = at(i, j) * at(k, l);
          AlgebraElement expect = (j == k) ? at(i, l) : a->zero();
          if (prod != expect)
            return "matrix unit relation failed at e(" + std::to_string(i) + "," +
                   std::to_string(j) + ")e(" + std::to_string(k) + "," +
                   std::to_string(l) + ")";
        }
  AlgebraElement diag = a->zero();
  for (size_t i = 0; i < n; ++i) diag = diag + at(i, i);
  if (diag != a->one()) return "matrix units do not sum to 1";
  const RingPtr& ring = a->ring();
  std::vector<Elem> m(r * r, ring->zero());
  for (size_t row = 0; row < r; ++row)
    for (size_t col = 0; col < r; ++col) m[row * r + col] = w.units[col].coords()[row];
  if (!det(ring, m, r).invertible()) return "matrix units are not a module basis";
  return "";
}

/// Pulls matrix units back through A = End(V) for the column module V with
/// the given basis.
MatrixUnitWitness transport_matrix_units(const AlgebraPtr& a,
                                         const std::vector<AlgebraElement>& vb) {
  const RingPtr& r = a->ring();
  size_t n = vb.size();
  size_t rank = a->rank();
  if (n * n != rank)
    fail(errc::internal, "corner module rank does not square to the algebra rank");
  std::vector<Elem> bmat(rank * n, r->zero());
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < n; ++j) bmat[i * n + j] = vb[j].coords()[i];
  auto express = [&](const AlgebraElement& y) {
    auto sol = solve_linear(r, bmat, rank, n, y.coords());
    if (!sol) fail(errc::internal, "element escapes the corner module");
    return *sol;
  };
  std::vector<Elem> action(rank * rank, r->zero());
  for (size_t t = 0; t < rank; ++t)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Elem> c = express(a->basis_element(t) * vb[j]);
      for (size_t i = 0; i < n; ++i) action[(j * n + i) * rank + t] = c[i];
    }
  if (!det(r, action, rank).invertible())
    fail(errc::internal, "the algebra does not act as the full endomorphism ring");
  MatrixUnitWitness w;
  w.n = n;
  w.units.reserve(rank);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Elem> rhs(rank, r->zero());
      rhs[j * n + i] = r->one();
      auto sol = solve_linear(r, action, rank, rank, rhs);
      if (!sol) fail(errc::internal, "matrix unit solve failed");
      w.units.push_back(a->element(*sol));
    }
  return w;
}

struct WalkCtx {
  RingPtr ring;
  AlgebraPtr algebra;
  size_t adjoin_count = 0;
};

VerifyReport walk(const SplitNodePtr& node, const WalkCtx& ctx,
                  const std::string& path, TreeMode mode) {
  if (!node) return {false, path, "missing node"};

  if (const auto* leaf = std::get_if<LeafNode>(&node->v)) {
    try {
      std::string viol = witness_violation(ctx.algebra, leaf->witness);
      if (!viol.empty()) return {false, path, viol};
    } catch (const error& err) {
      return {false, path, std::string("leaf check raised: ") + err.what()};
    }
    return {};
  }

  if (const auto* cover = std::get_if<CoverNode>(&node->v)) {
    std::vector<WalkCtx> kids;
    try {
      if (cover->units.empty())
        return {false, path, "localization cover has no units"};
      if (cover->units.size() != cover->children.size())
        return {false, path, "cover unit and child counts differ"};
      for (const Elem& u : cover->units)
        if (!u.ring() || !u.ring()->same_as(*ctx.ring))
          return {false, path, "cover unit lives in the wrong ring"};
      if (!unit_ideal_test(cover->units).is_unit_ideal)
        return {false, path, "cover units do not generate the unit ideal"};
      for (const Elem& u : cover->units) {
        RingPtr s = cover_child_ring(ctx.ring, u);
        kids.push_back({s, base_change(ctx.algebra, s), ctx.adjoin_count});
      }
    } catch (const error& err) {
      return {false, path, std::string("cover check raised: ") + err.what()};
    }
    for (size_t i = 0; i < kids.size(); ++i) {
      VerifyReport rep = walk(cover->children[i], kids[i],
                              path + ".child[" + std::to_string(i) + "]", mode);
      if (!rep.ok) return rep;
    }
    return {};
  }

  const auto& adj = std::get<AdjoinNode>(node->v);
  WalkCtx kid;
  try {
    const Poly& p = adj.modulus;
    if (!p.ring() || !p.ring()->same_as(*ctx.ring))
      return {false, path, "adjoined polynomial lives over the wrong ring"};
    if (p.degree() < 1) return {false, path, "adjoined polynomial is constant"};
    if (p.coeff(p.degree()) != ctx.ring->one())
      return {false, path, "adjoined polynomial is not monic"};
    if (mode == TreeMode::etale) {
      UnramifiabilityResult u = test_unramifiable(ctx.ring, p);
      if (!u.unramifiable)
        return {false, path, "adjoined polynomial is ramified"};
    }
    RingPtr s = adjoin_child_ring(ctx.ring, p, ctx.adjoin_count);
    kid = {s, base_change(ctx.algebra, s), ctx.adjoin_count + 1};
  } catch (const error& err) {
    return {false, path, std::string("adjunction check raised: ") + err.what()};
  }
  return walk(adj.child, kid, path + ".child", mode);
}

}  // namespace

RingPtr adjoin_child_ring(const RingPtr& s, const Poly& modulus, size_t index) {
  std::vector<Elem> coeffs;
  for (long i = 0; i <= modulus.degree(); ++i) coeffs.push_back(modulus.coeff(i));
  return s->quotient("w" + std::to_string(index + 1), coeffs);
}

RingPtr cover_child_ring(const RingPtr& s, const Elem& u) {
  return s->localized(u);
}

VerifyReport verify_tree(const SplitTree& t) {
  if (!t.ring || !t.algebra) return {false, "root", "tree carries no ring or algebra"};
  try {
    if (!t.algebra->ring()->same_as(*t.ring))
      return {false, "root", "root algebra is not over the root ring"};
  } catch (const error& err) {
    return {false, "root", std::string("root check raised: ") + err.what()};
  }
  return walk(t.root, {t.ring, t.algebra, 0}, "root", t.mode);
}

MatrixUnitWitness split_over_finite_field(const AlgebraPtr& A, std::uint64_t seed,
                                          unsigned budget) {
  if (!A) fail(errc::bad_input, "no algebra to split");
  const RingPtr& r = A->ring();
  if (!is_finite_field(r))
    fail(errc::not_finite_field, "splitting needs a finite field base");
  if (!is_azumaya(A)) fail(errc::not_azumaya, "only azumaya algebras split");
  size_t rank = A->rank();
  if (rank == 0) return {};

  Rng rng(seed);
  unsigned draws = 0;
  AlgebraElement e = A->one();
  while (corner_rank(A, e) > 1) {
    if (draws >= budget)
      fail(errc::randomness_exhausted, "idempotent search budget exhausted");
    ++draws;
    AlgebraElement z = e * random_in_algebra(A, rng) * e;
    Poly mu = minimal_poly_in_corner(A, e, z);
    auto factors = factor_over_finite_field(mu);
    if (factors.size() < 2) continue;
    // Split off the first irreducible power: mu = g h with g, h coprime, so
    // (s g)(z) is an idempotent strictly between 0 and e.
    Poly g = Poly::one(r);
    for (unsigned m = 0; m < factors[0].second; ++m) g = g * factors[0].first;
    Poly h = Poly::one(r);
    for (size_t i = 1; i < factors.size(); ++i)
      for (unsigned m = 0; m < factors[i].second; ++m) h = h * factors[i].first;
    PolyXgcd bez = poly_xgcd(g, h);
    AlgebraElement u = eval_poly_at(bez.s * g, z, e);
    if (u.is_zero() || u == e) fail(errc::internal, "degenerate idempotent split");
    e = u;
  }

  std::vector<AlgebraElement> cand;
  std::vector<std::vector<Elem>> cols;
  for (size_t i = 0; i < rank; ++i) {
    cand.push_back(A->basis_element(i) * e);
    cols.push_back(cand.back().coords());
  }
  std::vector<size_t> idx = independent_columns(cols);
  std::vector<AlgebraElement> vb;
  for (size_t i : idx) vb.push_back(cand[i]);
  MatrixUnitWitness w = transport_matrix_units(A, vb);
  std::string viol = witness_violation(A, w);
  if (!viol.empty()) fail(errc::internal, viol);
  return w;
}

MatrixUnitWitness split_over_finite_local(const AlgebraPtr& A, std::uint64_t seed,
                                          unsigned budget) {
  if (!A) fail(errc::bad_input, "no algebra to split");
  LocalCertificate cert = check_local(A->ring());
  if (!is_azumaya(A)) fail(errc::not_azumaya, "only azumaya algebras split");
  size_t rank = A->rank();
  if (rank == 0) return {};

  const RingPtr& f = cert.residue_field();
  std::vector<Elem> scbar, unitbar;
  scbar.reserve(A->structure_constants().size());
  for (const Elem& c : A->structure_constants()) scbar.push_back(cert.residue(c));
  for (const Elem& c : A->unit_coords()) unitbar.push_back(cert.residue(c));
  AlgebraPtr abar = FiniteAlgebra::trusted(f, rank, scbar, unitbar);
  MatrixUnitWitness wbar = split_over_finite_field(abar, seed, budget);
  size_t n = wbar.n;

  std::vector<Elem> corner;
  for (const Elem& c : wbar.units[0].coords()) corner.push_back(cert.section(c));
  AlgebraElement e = A->element(lift_idempotent_algebra(cert, A, corner));

  std::vector<AlgebraElement> cand;
  std::vector<std::vector<Elem>> res_cols;
  for (size_t i = 0; i < rank; ++i) {
    cand.push_back(A->basis_element(i) * e);
    std::vector<Elem> rc;
    for (const Elem& c : cand.back().coords()) rc.push_back(cert.residue(c));
    res_cols.push_back(std::move(rc));
  }
  std::vector<size_t> idx = independent_columns(res_cols);
  if (idx.size() != n) fail(errc::internal, "lifted corner has the wrong rank");
  std::vector<AlgebraElement> vb;
  for (size_t i : idx) vb.push_back(cand[i]);
  MatrixUnitWitness w = transport_matrix_units(A, vb);
  std::string viol = witness_violation(A, w);
  if (!viol.empty()) fail(errc::internal, viol);
  return w;
}

SplitTree build_tree(const AlgebraPtr& A, TreeFamily family, std::uint64_t seed) {
  if (!A) fail(errc::bad_input, "no algebra");
  const RingPtr& r = A->ring();

  switch (family) {
    case TreeFamily::matrix: {
      size_t rank = A->rank();
      size_t n = 0;
      while (n * n < rank) ++n;
      if (n * n != rank)
        fail(errc::unsupported_family, "algebra rank is not a square");
      AlgebraPtr model = FiniteAlgebra::matrix_algebra(r, n);
      if (!A->same_as(*model))
        fail(errc::unsupported_family,
             "structure constants are not the standard matrix units");
      MatrixUnitWitness w;
      w.n = n;
      for (size_t i = 0; i < rank; ++i) w.units.push_back(A->basis_element(i));
      auto leaf = std::make_shared<SplitNode>(SplitNode{LeafNode{std::move(w)}});
      return {r, A, TreeMode::etale, leaf};
    }

    case TreeFamily::finite_local: {
      MatrixUnitWitness w = split_over_finite_local(A, seed);
      auto leaf = std::make_shared<SplitNode>(SplitNode{LeafNode{std::move(w)}});
      return {r, A, TreeMode::etale, leaf};
    }

    case TreeFamily::quaternion: {
      if (A->rank() != 4)
        fail(errc::unsupported_family, "quaternion algebras have rank 4");
      Elem a = A->sc(1, 1, 0);
      Elem b = A->sc(2, 2, 0);
      AlgebraPtr model = FiniteAlgebra::quaternion(r, a, b);
      if (!A->same_as(*model))
        fail(errc::unsupported_family,
             "structure constants do not match a quaternion table");
      if (!(r->from_int(2) * a * b).invertible())
        fail(errc::unsupported_family,
             "2ab must be invertible to split a quaternion algebra");

      // Adjoin a square root x of a; X^2 - a is unramifiable since its
      // ramification invariants are (0, -4a) and 4a is a unit.
      Poly p = Poly::from_coeffs(r, {-a, r->zero(), r->one()});
      RingPtr s = adjoin_child_ring(r, p, 0);
      AlgebraPtr hs = base_change(A, s);
      Elem x = s->generator(r->depth());
      Elem u = x * a.embed_into(s).inverse();  // u = x/a = 1/x
      Elem half = s->from_int(2).inverse();
      Elem binv = b.embed_into(s).inverse();

      AlgebraElement one = hs->one();
      AlgebraElement i = hs->basis_element(1);
      AlgebraElement j = hs->basis_element(2);
      AlgebraElement k = hs->basis_element(3);
      MatrixUnitWitness w;
      w.n = 2;
      w.units = {
          (one + i.scaled(u)).scaled(half),      // e11 = (1 + x^{-1} i)/2
          (j + k.scaled(u)).scaled(half),        // e12 = (j + x^{-1} k)/2
          (j - k.scaled(u)).scaled(half * binv), // e21 = (j - x^{-1} k)/(2b)
          (one - i.scaled(u)).scaled(half),      // e22 = (1 - x^{-1} i)/2
      };
      auto leaf = std::make_shared<SplitNode>(SplitNode{LeafNode{std::move(w)}});
      auto adjoin =
          std::make_shared<SplitNode>(SplitNode{AdjoinNode{std::move(p), leaf}});
      return {r, A, TreeMode::etale, adjoin};
    }
  }
  fail(errc::internal, "unknown tree family");
}

void verify_automorphism(const AlgebraPtr& A, const AutomorphismMatrix& psi) {
  if (!A) fail(errc::bad_input, "no algebra");
  const RingPtr& r = A->ring();
  size_t rank = A->rank();
  if (psi.dim != rank || psi.entries.size() != rank * rank)
    fail(errc::bad_input, "automorphism matrix has the wrong shape");
  for (const Elem& c : psi.entries)
    if (!c.ring() || !c.ring()->same_as(*r))
      fail(errc::base_ring_mismatch, "automorphism entry in the wrong ring");
  if (rank == 0) return;

  if (apply_map(r, psi, A->unit_coords()) != A->unit_coords())
    fail(errc::not_automorphism, "the map does not fix 1");
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < rank; ++j) {
      std::vector<Elem> prod(rank, r->zero());
      for (size_t k = 0; k < rank; ++k) prod[k] = A->sc(i, j, k);
      AlgebraElement lhs = A->element(apply_map(r, psi, prod));
      AlgebraElement rhs =
          A->element(apply_map(r, psi, A->basis_element(i).coords())) *
          A->element(apply_map(r, psi, A->basis_element(j).coords()));
      if (lhs != rhs)
        fail(errc::not_automorphism, "the map does not respect products");
    }
  if (!det(r, psi.entries, rank).invertible())
    fail(errc::not_automorphism, "the matrix is not invertible");
}

AlgebraElement skolem_noether_matrix(const MatrixUnitWitness& w,
                                     const AutomorphismMatrix& psi) {
  if (w.n == 0 || w.units.empty()) fail(errc::bad_input, "witness has no units");
  AlgebraPtr A = w.units[0].algebra();
  if (!A) fail(errc::bad_input, "witness unit carries no algebra");
  const RingPtr& r = A->ring();
  LocalCertificate cert = check_local(r);
  (void)cert;
  std::string viol = witness_violation(A, w);
  if (!viol.empty()) fail(errc::bad_input, viol);
  verify_automorphism(A, psi);

  size_t n = w.n;
  size_t rank = A->rank();
  auto unit_at = [&](size_t i, size_t j) -> const AlgebraElement& {
    return w.units[i * n + j];
  };
  auto psi_of = [&](const AlgebraElement& x) {
    return A->element(apply_map(r, psi, x.coords()));
  };

  // The column module V has basis v_i = e_i1; express images in it.
  std::vector<AlgebraElement> v;
  for (size_t i = 0; i < n; ++i) v.push_back(unit_at(i, 0));
  std::vector<Elem> bmat(rank * n, r->zero());
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < n; ++j) bmat[i * n + j] = v[j].coords()[i];
  auto express = [&](const AlgebraElement& y) {
    auto sol = solve_linear(r, bmat, rank, n, y.coords());
    if (!sol) fail(errc::internal, "image escapes the column module");
    return *sol;
  };

  // w_1 spans the image of psi(e_11): take the first image vector of the
  // standard basis with a unimodular coordinate.
  AlgebraElement p11 = psi_of(unit_at(0, 0));
  std::optional<AlgebraElement> w1;
  for (size_t k = 0; k < n && !w1; ++k) {
    AlgebraElement img = p11 * v[k];
    for (const Elem& c : express(img))
      if (c.invertible()) {
        w1 = img;
        break;
      }
  }
  if (!w1) fail(errc::internal, "projector image has no unimodular coordinate");

  AlgebraElement a = A->zero();
  for (size_t j = 0; j < n; ++j) {
    AlgebraElement wj = psi_of(unit_at(j, 0)) * *w1;
    std::vector<Elem> cj = express(wj);
    for (size_t l = 0; l < n; ++l) a = a + unit_at(l, j).scaled(cj[l]);
  }

  if (!a.invertible()) fail(errc::internal, "conjugator is not invertible");
  for (size_t t = 0; t < rank; ++t)
    if (psi_of(A->basis_element(t)) * a != a * A->basis_element(t))
      fail(errc::internal, "conjugation identity failed on the basis");
  return a;
}

SNResult skolem_noether_module(const AlgebraPtr& A, const AutomorphismMatrix& psi) {
  verify_automorphism(A, psi);
  const RingPtr& r = A->ring();
  size_t rank = A->rank();
  SNResult out;
  if (rank == 0) return out;

  // a x_j = psi(x_j) a for all j, as a linear system in the coordinates of a.
  std::vector<Elem> m(rank * rank * rank, r->zero());
  for (size_t j = 0; j < rank; ++j)
    for (size_t l = 0; l < rank; ++l)
      for (size_t i = 0; i < rank; ++i) {
        Elem entry = A->sc(i, j, l);
        for (size_t t = 0; t < rank; ++t) {
          const Elem& c = psi.entries[t * rank + j];
          if (c.is_zero() || A->sc(t, i, l).is_zero()) continue;
          entry = entry - c * A->sc(t, i, l);
        }
        m[(j * rank + l) * rank + i] = entry;
      }
  for (auto& g : kernel_generators(r, m, rank * rank, rank))
    out.generators.push_back(A->element(g));

  bool local = true;
  try {
    (void)check_local(r);
  } catch (const error&) {
    local = false;
  }
  if (!local) return out;

  // Over a certified local ring, report the inner-automorphism witness when
  // the module is visibly free of rank one with an invertible generator.
  const AlgebraElement* gen = nullptr;
  for (const auto& g : out.generators)
    if (g.invertible()) {
      gen = &g;
      break;
    }
  if (!gen) return out;
  std::vector<Elem> col(rank, r->zero());
  for (size_t i = 0; i < rank; ++i) col[i] = gen->coords()[i];
  for (const auto& g : out.generators)
    if (!solve_linear(r, col, rank, 1, g.coords())) return out;
  out.generator = *gen;
  return out;
}

}  // namespace aza
