#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aza/algebra.hpp"
#include "aza/poly.hpp"
#include "aza/rand.hpp"
#include "aza/ring.hpp"

namespace aza {

/// A full system of matrix units for an algebra of rank n^2: elements e_ij
/// (stored row major, e_ij at index i*n + j) with e_ij e_kl = [j=k] e_il,
/// sum_i e_ii = 1, and the whole family a module basis. Exhibiting one is
/// exactly an isomorphism with the n x n matrix algebra.
struct MatrixUnitWitness {
  size_t n = 0;
  std::vector<AlgebraElement> units;
};

enum class TreeMode { etale, fppf };

struct SplitNode;
using SplitNodePtr = std::shared_ptr<const SplitNode>;

/// Leaf: the algebra at this point of the tree is split by the witness.
struct LeafNode {
  MatrixUnitWitness witness;
};

/// Passes to the localizations at each unit; the u_i must generate the unit
/// ideal so that the covering is faithfully flat.
struct CoverNode {
  std::vector<Elem> units;
  std::vector<SplitNodePtr> children;
};

/// Passes to the quotient by a monic polynomial (unramifiable in etale mode,
/// merely nonconstant in fppf mode).
struct AdjoinNode {
  Poly modulus;
  SplitNodePtr child;
};

struct SplitNode {
  std::variant<LeafNode, CoverNode, AdjoinNode> v;
};

/// Splitting certificate: a tree of ring extensions under which the algebra
/// becomes a matrix algebra at every leaf. Ring and algebra are stored at the
/// root only; every interior node determines its child rings and algebras
/// (localization or monic quotient, with base-changed structure constants).
struct SplitTree {
  RingPtr ring;
  AlgebraPtr algebra;
  TreeMode mode = TreeMode::etale;
  SplitNodePtr root;
};

/// Outcome of tree verification. `path` and `reason` locate the first failed
/// check when ok is false.
struct VerifyReport {
  bool ok = true;
  std::string path;
  std::string reason;
};

/// Child-context constructors shared by the verifier, the builders, and the
/// serialization layer, so that all of them derive identical ring objects.
/// `index` counts adjunction nodes along the path from the root (the first
/// adjoined variable is named w1).
RingPtr adjoin_child_ring(const RingPtr& s, const Poly& modulus, size_t index);
RingPtr cover_child_ring(const RingPtr& s, const Elem& u);

/// Checks every invariant of the tree: cover units generate the unit ideal,
/// adjoined moduli are monic and (in etale mode) unramifiable, leaf unit
/// coordinates live over the derived ring, and all matrix-unit relations
/// hold exhaustively with the units forming a module basis. Never throws;
/// failures come back in the report.
VerifyReport verify_tree(const SplitTree& t);

/// Finds a full system of matrix units for an Azumaya algebra over a finite
/// field: random elements give minimal polynomials whose coprime splits
/// produce ever smaller idempotents until a rank-one projector appears; the
/// module it generates then carries the algebra as its endomorphisms.
/// `budget` caps the number of random draws.
MatrixUnitWitness split_over_finite_field(const AlgebraPtr& A,
                                          std::uint64_t seed = kDefaultSeed,
                                          unsigned budget = 64);

/// The same over a certified finite local ring: splits the residual algebra,
/// lifts the corner idempotent, and transports the matrix units through the
/// isomorphism with the endomorphisms of the lifted corner module.
MatrixUnitWitness split_over_finite_local(const AlgebraPtr& A,
                                          std::uint64_t seed = kDefaultSeed,
                                          unsigned budget = 64);

/// Families with an explicit tree construction. General search is out of
/// scope: the verifier accepts arbitrary trees, but the builder only covers
/// cases with closed-form or algorithmic splittings.
enum class TreeFamily {
  finite_local,  // any Azumaya algebra over a certified finite local ring
  quaternion,    // (a, b) with 2ab invertible, over any base ring
  matrix,        // the standard matrix algebra table
};

SplitTree build_tree(const AlgebraPtr& A, TreeFamily family,
                     std::uint64_t seed = kDefaultSeed);

/// Square matrix of an algebra endomorphism on the basis: column j holds the
/// coordinates of the image of basis element j (row l = coefficient of x_l).
/// Reuses the canonical-map matrix layout.
using AutomorphismMatrix = LinearMapMatrix;

/// Throws not_automorphism unless psi fixes 1, respects all basis products,
/// and is an invertible linear map.
void verify_automorphism(const AlgebraPtr& A, const AutomorphismMatrix& psi);

/// For a split algebra over a certified local ring: returns an invertible a
/// with psi(x) = a x a^{-1}, built from the images of the matrix units
/// (each image projector has a free rank-one image; a maps the standard
/// column basis onto a compatible basis of those images).
AlgebraElement skolem_noether_matrix(const MatrixUnitWitness& w,
                                     const AutomorphismMatrix& psi);

/// The conjugation module M = {a : a x = psi(x) a for all x} of an
/// automorphism. `generators` always generate M; `generator` is set when the
/// base ring is certified local and M was verified free of rank one with an
/// invertible generator (the inner-automorphism witness).
struct SNResult {
  std::vector<AlgebraElement> generators;
  std::optional<AlgebraElement> generator;
};

SNResult skolem_noether_module(const AlgebraPtr& A,
                               const AutomorphismMatrix& psi);

}  // namespace aza
