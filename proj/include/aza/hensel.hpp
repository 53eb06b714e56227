#pragma once

#include <memory>
#include <vector>

#include "aza/poly.hpp"
#include "aza/ring.hpp"

namespace aza {

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Lifts a simple residual root of a monic polynomial to the unique exact
/// root with that residue, by Newton iteration (terminates because the
/// maximal ideal is nilpotent). `residual_root` lives in the certificate's
/// residue field and must be a root of residue(P) where residue(P') does not
/// vanish.
Elem lift_simple_root(const LocalCertificate& cert, const Poly& P,
                      const Elem& residual_root);

/// Searches for a root a of the monic polynomial f with f'(a) invertible.
/// Strategy: lift a multiplicity-one residual root when one exists; otherwise
/// peel exact roots found by enumerating the (finite) ring and recurse on the
/// cofactor as long as the cofactor stays unramifiable. `max_degree` caps the
/// degree of the unramifiability checks (their cost grows as degree!).
Elem find_simple_root(const LocalCertificate& cert, const Poly& f,
                      unsigned max_degree = 6);

enum class IdempotentMethod {
  newton,           // u <- 3u^2 - 2u^3, quadratic convergence in any ring
  universal_roots,  // explicit construction through the decomposition algebra
};

/// Orthogonal decomposition of the unit: every element is idempotent, the
/// pairwise products vanish, and the family sums to 1.
struct OrthogonalIdempotentFamily {
  RingPtr ring;
  std::vector<Elem> elements;
};

/// Lifts a residually idempotent element of R[x]/(P) to an exact idempotent
/// with the same residue. `e` is given by a representative polynomial over R
/// (it is reduced mod P first) and the result is returned the same way. The
/// universal_roots method is capped at deg P <= 5 and, when `family` is
/// non-null, records the orthogonal idempotent family it builds inside the
/// decomposition algebra.
Poly lift_idempotent_monic_quotient(const LocalCertificate& cert, const Poly& P,
                                    const Poly& e,
                                    IdempotentMethod method = IdempotentMethod::newton,
                                    OrthogonalIdempotentFamily* family = nullptr);

/// Monic factors lifting a coprime residual factorization: P = F*G with
/// residue(F) = fbar and residue(G) = gbar.
struct HenselFactors {
  Poly F;
  Poly G;
};

HenselFactors hensel_factor(const LocalCertificate& cert, const Poly& P,
                            const Poly& fbar, const Poly& gbar);

/// Lifts a residually idempotent element of a finite free algebra (given by
/// its coordinate vector over the base ring) to an exact idempotent congruent
/// to it modulo the maximal ideal. Works for noncommutative algebras; the
/// result lies in the commutative subalgebra generated by the input.
std::vector<Elem> lift_idempotent_algebra(const LocalCertificate& cert,
                                          const AlgebraPtr& A,
                                          const std::vector<Elem>& a);

}  // namespace aza
