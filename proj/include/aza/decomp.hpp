#pragma once

#include <cstdint>
#include <vector>

#include "aza/poly.hpp"
#include "aza/ring.hpp"

namespace aza {

/// Decomposition algebra of a monic polynomial: the tower extension generated
/// by a full set of universal roots, together with the roots themselves. For
/// f of degree n the algebra is free of rank n! over the coefficient ring.
struct DecompositionAlgebra {
  RingPtr base;             // coefficient ring R
  RingPtr ring;             // extension of R containing the universal roots
  Poly f;                   // over base
  std::vector<Elem> roots;  // in ring; f(T) = prod_i (T - roots[i])
  std::uint64_t rank = 1;   // [ring : base] = (deg f)!
};

/// Adjoins roots of `f` one at a time, each step a monic quotient by the
/// remaining cofactor, until f splits into linear factors. `max_degree` caps
/// deg f since the construction has rank (deg f)!.
DecompositionAlgebra build_decomposition_algebra(const RingPtr& R, const Poly& f,
                                                 unsigned max_degree = 6);

/// Ramification invariants of a monic polynomial of degree n: delta[j-1] is
/// the coefficient of T^(n-j) in g(T) = prod_i (T - f'(x_i)) taken over the
/// universal roots x_i. The product is symmetric in the roots, so g descends
/// to the coefficient ring.
struct RamificationInvariants {
  std::vector<Elem> delta;  // n entries in the base ring
  Poly g;                   // monic of degree n over the base ring
};

RamificationInvariants ramification_invariants(const DecompositionAlgebra& da);
RamificationInvariants ramification_invariants(const RingPtr& R, const Poly& f,
                                               unsigned max_degree = 6);

/// Outcome of the unramifiability test. When `unramifiable` holds, the
/// cofactors witness sum_j cofactors[j] * delta[j] = 1 in the base ring.
struct UnramifiabilityResult {
  bool unramifiable = false;
  std::vector<Elem> delta;
  std::vector<Elem> cofactors;
};

/// Tests whether the ramification invariants of `f` span the unit ideal of
/// the coefficient ring.
UnramifiabilityResult test_unramifiable(const RingPtr& R, const Poly& f,
                                        unsigned max_degree = 6);

/// The same condition computed on the other side of the equivalence: the
/// derivative values f'(x_i) at all universal roots span the unit ideal of
/// the decomposition algebra exactly when the invariants span the unit ideal
/// of the base. Exposed for cross-checking.
UnitIdealWitness derivative_values_unit_test(const DecompositionAlgebra& da);

/// Basic open subset D(g_1, ..., g_k) of the spectrum: the locus where at
/// least one generator is invertible. Order comparisons reduce to radical
/// membership, which is decided for towers that are finite over a field-like
/// scalar core and for integer towers without quotient steps; other shapes
/// throw unsupported_ring.
class BasicOpen {
public:
  BasicOpen(RingPtr ring, std::vector<Elem> gens);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Elem>& generators() const { return gens_; }

  bool is_top() const;     // covers the whole spectrum
  bool is_bottom() const;  // empty locus
  bool leq(const BasicOpen& other) const;
  bool eq(const BasicOpen& other) const;
  BasicOpen join(const BasicOpen& other) const;  // union
  BasicOpen meet(const BasicOpen& other) const;  // intersection

private:
  bool radical_member(const Elem& a, const std::vector<Elem>& gens) const;

  RingPtr ring_;
  std::vector<Elem> gens_;
};

}  // namespace aza
