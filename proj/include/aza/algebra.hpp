#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "aza/ring.hpp"

namespace aza {

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Element of a structure-constant algebra, stored as a coordinate vector
/// over the base ring.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(AlgebraPtr algebra, std::vector<Elem> coords);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Elem>& coords() const { return coords_; }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement scaled(const Elem& c) const;
  AlgebraElement pow(std::uint64_t e) const;

  bool is_zero() const;
  bool operator==(const AlgebraElement& o) const;
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  bool invertible() const;
  std::optional<AlgebraElement> try_inverse() const;
  AlgebraElement inverse() const;

 private:
  AlgebraPtr algebra_;
  std::vector<Elem> coords_;
};

/// Unital associative algebra that is free of finite rank over a ring tower,
/// with multiplication given by structure constants: x_i x_j = sum_k
/// sc(i,j,k) x_k.
class FiniteAlgebra : public std::enable_shared_from_this<FiniteAlgebra> {
 public:
  /// Validating constructor: checks coordinate shapes, unit laws, and full
  /// associativity on all basis triples. Use for untrusted tables.
  static AlgebraPtr create(RingPtr ring, size_t rank, std::vector<Elem> sc,
                           std::vector<Elem> unit);
  /// Constructor for tables that are correct by derivation (tensor products,
  /// matrix algebras, base changes). Checks shapes and unit laws only.
  static AlgebraPtr trusted(RingPtr ring, size_t rank, std::vector<Elem> sc,
                            std::vector<Elem> unit);

  static AlgebraPtr trivial(RingPtr ring);  // rank 0
  static AlgebraPtr matrix_algebra(const RingPtr& ring, size_t n);
  /// Quaternion algebra (a, b): basis 1, i, j, ij with i^2 = a, j^2 = b,
  /// ij = -ji.
  static AlgebraPtr quaternion(const RingPtr& ring, const Elem& a,
                               const Elem& b);

  const RingPtr& ring() const { return ring_; }
  size_t rank() const { return rank_; }
  /// Coefficient of x_k in the product x_i x_j.
  const Elem& sc(size_t i, size_t j, size_t k) const {
    return sc_[(i * rank_ + j) * rank_ + k];
  }
  const std::vector<Elem>& structure_constants() const { return sc_; }
  const std::vector<Elem>& unit_coords() const { return unit_; }

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement element(std::vector<Elem> coords) const;
  AlgebraElement basis_element(size_t i) const;
  AlgebraElement from_base(const Elem& c) const;

  bool same_as(const FiniteAlgebra& other) const;

 private:
  FiniteAlgebra(RingPtr ring, size_t rank, std::vector<Elem> sc,
                std::vector<Elem> unit);

  RingPtr ring_;
  size_t rank_ = 0;
  std::vector<Elem> sc_;
  std::vector<Elem> unit_;
};

/// Same module with the two multiplication slots swapped.
AlgebraPtr opposite(const AlgebraPtr& A);
/// Tensor product over the common base ring, basis ordered with the left
/// factor's index major.
AlgebraPtr tensor_product(const AlgebraPtr& A, const AlgebraPtr& B);
/// The same structure constants over an extension of the base ring.
AlgebraPtr base_change(const AlgebraPtr& A, const RingPtr& bigger);

/// Square matrix over the base ring, row major.
struct LinearMapMatrix {
  size_t dim = 0;
  std::vector<Elem> entries;
};

/// Matrix of the map A (x) A^op -> End(A) sending a (x) b to x -> a x b.
/// Column i*r+j is the endomorphism of x_i (x) x_j; row l*r+m is the
/// coefficient of x_l in the image of x_m.
LinearMapMatrix canonical_map_matrix(const AlgebraPtr& A);

/// Determinant of the canonical map matrix.
Elem canonical_map_determinant(const AlgebraPtr& A);

/// True when the canonical map is an isomorphism, i.e. its determinant is a
/// unit of the base ring. The rank-0 algebra counts as Azumaya.
bool is_azumaya(const AlgebraPtr& A);

/// Generating set of the center {a : ax = xa for all x} as a module.
std::vector<AlgebraElement> center(const AlgebraPtr& A);

}  // namespace aza
