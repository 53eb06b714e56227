#include "aza/decomp.hpp"

#include <string>
#include <utility>
#include <variant>

#include "aza/error.hpp"

namespace aza {

namespace {

/// Strips an element of `A` down to `R`, a prefix of `A` reached through
/// quotient steps only. Every discarded coordinate must vanish.
Elem project_to_prefix(const RingPtr& A, const RingPtr& R, const Elem& x) {
  Value cur = x.value();
  for (size_t level = A->depth(); level > R->depth(); --level) {
    if (!std::holds_alternative<ValueVec>(cur.rep))
      fail(errc::internal, "projection crossed a non-quotient level");
    ValueVec vv = std::get<ValueVec>(std::move(cur.rep));
    for (size_t i = 1; i < vv.size(); ++i)
      if (!A->v_is_zero(vv[i], level - 1))
        fail(errc::coefficient_not_in_base,
             "symmetric invariant has a component outside the base ring");
    if (vv.empty())
      cur = A->prefix(level - 1)->zero().value();
    else
      cur = std::move(vv[0]);
  }
  return R->element(std::move(cur));
}

}  // namespace

DecompositionAlgebra build_decomposition_algebra(const RingPtr& R, const Poly& f,
                                                 unsigned max_degree) {
  if (!R || !f.ring()) fail(errc::bad_input, "missing ring or polynomial");
  if (!f.ring()->same_as(*R))
    fail(errc::base_ring_mismatch, "polynomial is not over the given ring");
  if (!f.is_monic())
    fail(errc::non_monic, "decomposition algebra requires a monic polynomial");
  long n = f.degree();
  if (n > static_cast<long>(max_degree))
    fail(errc::rank_cap_exceeded, "degree " + std::to_string(n) +
                                      " exceeds the cap " +
                                      std::to_string(max_degree) +
                                      " (rank grows as degree!)");

  DecompositionAlgebra da;
  da.base = R;
  da.f = f;

  RingPtr S = R;
  Poly g = f;  // remaining cofactor, always over S
  std::vector<Elem> roots;
  std::uint64_t rank = 1;
  for (long i = 1; i <= n; ++i) {
    long d = g.degree();
    if (d == 1) {
      // the last root is determined, no extension needed
      roots.push_back(-g.coeff(0));
      break;
    }
    rank *= static_cast<std::uint64_t>(d);
    std::vector<Elem> modulus;
    modulus.reserve(static_cast<size_t>(d) + 1);
    for (long j = 0; j <= d; ++j) modulus.push_back(g.coeff(j));
    RingPtr S2 = S->quotient("x" + std::to_string(i), modulus);
    Elem x = S2->generator(S2->depth() - 1);
    roots.push_back(x);
    auto [quot, rem] = g.embed_into(S2).divmod_monic(Poly::x(S2) - Poly::constant(x));
    if (!rem.is_zero())
      fail(errc::internal, "adjoined root does not divide its polynomial");
    g = std::move(quot);
    S = std::move(S2);
  }

  da.ring = S;
  da.rank = rank;
  da.roots.reserve(roots.size());
  for (const Elem& r : roots) da.roots.push_back(r.embed_into(S));
  return da;
}

RamificationInvariants ramification_invariants(const DecompositionAlgebra& da) {
  const RingPtr& A = da.ring;
  long n = da.f.degree();
  Poly fprime = da.f.embed_into(A).derivative();
  Poly g = Poly::one(A);
  for (const Elem& x : da.roots)
    g = g * (Poly::x(A) - Poly::constant(fprime.evaluate(x)));

  RamificationInvariants out;
  std::vector<Elem> coeffs;
  coeffs.reserve(static_cast<size_t>(n) + 1);
  for (long j = 0; j <= n; ++j)
    coeffs.push_back(project_to_prefix(A, da.base, g.coeff(j)));
  out.g = Poly::from_coeffs(da.base, coeffs);
  out.delta.reserve(static_cast<size_t>(n));
  for (long j = n - 1; j >= 0; --j) out.delta.push_back(out.g.coeff(j));
  return out;
}

RamificationInvariants ramification_invariants(const RingPtr& R, const Poly& f,
                                               unsigned max_degree) {
  return ramification_invariants(build_decomposition_algebra(R, f, max_degree));
}

UnramifiabilityResult test_unramifiable(const RingPtr& R, const Poly& f,
                                        unsigned max_degree) {
  RamificationInvariants ri = ramification_invariants(R, f, max_degree);
  UnitIdealWitness w = unit_ideal_test(ri.delta);
  return {w.is_unit_ideal, std::move(ri.delta), std::move(w.cofactors)};
}

UnitIdealWitness derivative_values_unit_test(const DecompositionAlgebra& da) {
  Poly fprime = da.f.embed_into(da.ring).derivative();
  std::vector<Elem> values;
  values.reserve(da.roots.size());
  for (const Elem& x : da.roots) values.push_back(fprime.evaluate(x));
  return unit_ideal_test(values);
}

BasicOpen::BasicOpen(RingPtr ring, std::vector<Elem> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)) {
  if (!ring_) fail(errc::bad_input, "basic open needs a ring");
  for (const Elem& g : gens_)
    if (!g.ring() || !g.ring()->same_as(*ring_))
      fail(errc::base_ring_mismatch, "generator lives in a different ring");
}

bool BasicOpen::is_top() const { return unit_ideal_test(gens_).is_unit_ideal; }

bool BasicOpen::is_bottom() const {
  for (const Elem& g : gens_)
    if (!radical_member(g, {})) return false;
  return true;
}

bool BasicOpen::leq(const BasicOpen& other) const {
  if (!ring_->same_as(*other.ring_))
    fail(errc::base_ring_mismatch, "open sets live over different rings");
  for (const Elem& g : gens_)
    if (!radical_member(g, other.gens_)) return false;
  return true;
}

bool BasicOpen::eq(const BasicOpen& other) const {
  return leq(other) && other.leq(*this);
}

BasicOpen BasicOpen::join(const BasicOpen& other) const {
  if (!ring_->same_as(*other.ring_))
    fail(errc::base_ring_mismatch, "open sets live over different rings");
  std::vector<Elem> gens = gens_;
  gens.insert(gens.end(), other.gens_.begin(), other.gens_.end());
  return BasicOpen(ring_, std::move(gens));
}

BasicOpen BasicOpen::meet(const BasicOpen& other) const {
  if (!ring_->same_as(*other.ring_))
    fail(errc::base_ring_mismatch, "open sets live over different rings");
  std::vector<Elem> gens;
  gens.reserve(gens_.size() * other.gens_.size());
  for (const Elem& a : gens_)
    for (const Elem& b : other.gens_) gens.push_back(a * b);
  return BasicOpen(ring_, std::move(gens));
}

namespace {

/// Integer under the localize wrappers of a pure localization tower over Z.
const Int& integer_numerator(const Value& v) {
  const Value* cur = &v;
  while (std::holds_alternative<LocPart>(cur->rep)) cur = cur->as_loc().num.get();
  return cur->as_int();
}

/// Largest divisor of g coprime to m (g >= 1, m != 0).
Int coprime_part(Int g, const Int& m) {
  for (;;) {
    Int d = gcd(g, m);
    if (d == 1) return g;
    g = divexact(g, d);
  }
}

}  // namespace

bool BasicOpen::radical_member(const Elem& a, const std::vector<Elem>& gens) const {
  BaseKind kind = ring_->base().kind;
  bool has_quotient = ring_->depth() > ring_->core_level();
  if (kind == BaseKind::integers && !has_quotient) {
    // PID territory: the ideal is generated by the gcd of the numerators and
    // membership in its radical means every prime of the gcd divides the
    // candidate or is already inverted.
    Int anum = integer_numerator(a.value());
    Int g = 0;
    for (const Elem& b : gens) g = gcd(g, integer_numerator(b.value()));
    if (g == 0) return anum == 0;
    if (anum == 0) return true;
    Int stripped = abs(anum);
    for (const ExtensionStep& step : ring_->steps())
      stripped *= abs(integer_numerator(step.unit));
    return coprime_part(abs(g), stripped) == 1;
  }
  if (kind != BaseKind::integers && ring_->flatten_supported()) {
    // Artinian case: the tower has finite length over its scalar core, so
    // radical membership is plain membership of a bounded power.
    std::uint64_t d = ring_->nilpotency_bound(ring_->depth());
    return ideal_membership(a.pow(d), gens).has_value();
  }
  fail(errc::unsupported_ring,
       "radical membership undecided for this tower shape");
}

}  // namespace aza
