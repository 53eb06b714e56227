#include "aza/algebra.hpp"

#include <string>
#include <utility>

#include "aza/error.hpp"

namespace aza {

namespace {

std::vector<Elem> mul_coords(const FiniteAlgebra& A, const std::vector<Elem>& a,
                             const std::vector<Elem>& b) {
  size_t r = A.rank();
  std::vector<Elem> out(r, A.ring()->zero());
  for (size_t i = 0; i < r; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < r; ++j) {
      if (b[j].is_zero()) continue;
      Elem c = a[i] * b[j];
      for (size_t k = 0; k < r; ++k) {
        const Elem& s = A.sc(i, j, k);
        if (!s.is_zero()) out[k] = out[k] + c * s;
      }
    }
  }
  return out;
}

std::vector<Elem> basis_coords(const FiniteAlgebra& A, size_t i) {
  std::vector<Elem> v(A.rank(), A.ring()->zero());
  v[i] = A.ring()->one();
  return v;
}

void check_shapes(const RingPtr& ring, size_t rank, const std::vector<Elem>& sc,
                  const std::vector<Elem>& unit) {
  if (!ring) fail(errc::bad_input, "algebra needs a base ring");
  if (sc.size() != rank * rank * rank)
    fail(errc::bad_input, "structure constant array has the wrong size");
  if (unit.size() != rank)
    fail(errc::bad_input, "unit coordinate vector has the wrong size");
  for (const Elem& e : sc)
    if (!e.ring() || !e.ring()->same_as(*ring))
      fail(errc::base_ring_mismatch, "structure constant in the wrong ring");
  for (const Elem& e : unit)
    if (!e.ring() || !e.ring()->same_as(*ring))
      fail(errc::base_ring_mismatch, "unit coordinate in the wrong ring");
}

void check_unit_laws(const FiniteAlgebra& A) {
  size_t r = A.rank();
  const std::vector<Elem>& u = A.unit_coords();
  for (size_t i = 0; i < r; ++i) {
    std::vector<Elem> basis = basis_coords(A, i);
    if (mul_coords(A, u, basis) != basis || mul_coords(A, basis, u) != basis)
      fail(errc::bad_input,
           "unit laws fail on basis element " + std::to_string(i));
  }
}

void check_associativity(const FiniteAlgebra& A) {
  size_t r = A.rank();
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      std::vector<Elem> ij(r, A.ring()->zero());
      for (size_t k = 0; k < r; ++k) ij[k] = A.sc(i, j, k);
      for (size_t k = 0; k < r; ++k) {
        std::vector<Elem> jk(r, A.ring()->zero());
        for (size_t l = 0; l < r; ++l) jk[l] = A.sc(j, k, l);
        if (mul_coords(A, ij, basis_coords(A, k)) !=
            mul_coords(A, basis_coords(A, i), jk))
          fail(errc::bad_input,
               "associativity fails on basis triple (" + std::to_string(i) +
                   ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
      }
    }
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(RingPtr ring, size_t rank, std::vector<Elem> sc,
                             std::vector<Elem> unit)
    : ring_(std::move(ring)),
      rank_(rank),
      sc_(std::move(sc)),
      unit_(std::move(unit)) {}

AlgebraPtr FiniteAlgebra::create(RingPtr ring, size_t rank,
                                 std::vector<Elem> sc,
                                 std::vector<Elem> unit) {
  check_shapes(ring, rank, sc, unit);
  AlgebraPtr A(new FiniteAlgebra(std::move(ring), rank, std::move(sc),
                                 std::move(unit)));
  check_unit_laws(*A);
  check_associativity(*A);
  return A;
}

AlgebraPtr FiniteAlgebra::trusted(RingPtr ring, size_t rank,
                                  std::vector<Elem> sc,
                                  std::vector<Elem> unit) {
  check_shapes(ring, rank, sc, unit);
  AlgebraPtr A(new FiniteAlgebra(std::move(ring), rank, std::move(sc),
                                 std::move(unit)));
  check_unit_laws(*A);
  return A;
}

AlgebraPtr FiniteAlgebra::trivial(RingPtr ring) {
  return trusted(std::move(ring), 0, {}, {});
}

AlgebraPtr FiniteAlgebra::matrix_algebra(const RingPtr& ring, size_t n) {
  size_t r = n * n;
  std::vector<Elem> sc(r * r * r, ring->zero());
  // basis E_{ab} at index a*n+b with E_{ab} E_{cd} = [b=c] E_{ad}
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t d = 0; d < n; ++d)
        sc[((a * n + b) * r + (b * n + d)) * r + (a * n + d)] = ring->one();
  std::vector<Elem> unit(r, ring->zero());
  for (size_t a = 0; a < n; ++a) unit[a * n + a] = ring->one();
  return trusted(ring, r, std::move(sc), std::move(unit));
}

AlgebraPtr FiniteAlgebra::quaternion(const RingPtr& ring, const Elem& a,
                                     const Elem& b) {
  if (!a.ring() || !a.ring()->same_as(*ring) || !b.ring() ||
      !b.ring()->same_as(*ring))
    fail(errc::base_ring_mismatch, "quaternion parameters in the wrong ring");
  std::vector<Elem> sc(64, ring->zero());
  Elem one = ring->one();
  auto set = [&](size_t i, size_t j, size_t k, const Elem& v) {
    sc[(i * 4 + j) * 4 + k] = v;
  };
  // basis 1, i, j, k with k = ij
  for (size_t i = 0; i < 4; ++i) {
    set(0, i, i, one);
    if (i) set(i, 0, i, one);
  }
  set(1, 1, 0, a);                // i^2 = a
  set(2, 2, 0, b);                // j^2 = b
  set(3, 3, 0, -(a * b));         // k^2 = -ab
  set(1, 2, 3, one);              // ij = k
  set(2, 1, 3, -one);             // ji = -k
  set(1, 3, 2, a);                // ik = aj
  set(3, 1, 2, -a);               // ki = -aj
  set(2, 3, 1, -b);               // jk = -bi
  set(3, 2, 1, b);                // kj = bi
  std::vector<Elem> unit = {one, ring->zero(), ring->zero(), ring->zero()};
  return trusted(ring, 4, std::move(sc), std::move(unit));
}

AlgebraElement FiniteAlgebra::zero() const {
  return AlgebraElement(shared_from_this(),
                        std::vector<Elem>(rank_, ring_->zero()));
}

AlgebraElement FiniteAlgebra::one() const {
  return AlgebraElement(shared_from_this(), unit_);
}

AlgebraElement FiniteAlgebra::element(std::vector<Elem> coords) const {
  return AlgebraElement(shared_from_this(), std::move(coords));
}

AlgebraElement FiniteAlgebra::basis_element(size_t i) const {
  if (i >= rank_) fail(errc::bad_input, "basis index out of range");
  return AlgebraElement(shared_from_this(), basis_coords(*this, i));
}

AlgebraElement FiniteAlgebra::from_base(const Elem& c) const {
  std::vector<Elem> coords;
  coords.reserve(rank_);
  for (const Elem& u : unit_) coords.push_back(c * u);
  return AlgebraElement(shared_from_this(), std::move(coords));
}

bool FiniteAlgebra::same_as(const FiniteAlgebra& other) const {
  if (rank_ != other.rank_ || !ring_->same_as(*other.ring_)) return false;
  for (size_t t = 0; t < sc_.size(); ++t)
    if (!(sc_[t] == other.sc_[t])) return false;
  for (size_t t = 0; t < unit_.size(); ++t)
    if (!(unit_[t] == other.unit_[t])) return false;
  return true;
}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, std::vector<Elem> coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) fail(errc::bad_input, "algebra element needs an algebra");
  if (coords_.size() != algebra_->rank())
    fail(errc::bad_input, "coordinate vector has the wrong length");
  for (const Elem& e : coords_)
    if (!e.ring() || !e.ring()->same_as(*algebra_->ring()))
      fail(errc::base_ring_mismatch, "coordinate in the wrong ring");
}

namespace {

void check_compatible(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.algebra() || !b.algebra() || !a.algebra()->same_as(*b.algebra()))
    fail(errc::base_ring_mismatch, "elements of different algebras");
}

}  // namespace

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  check_compatible(*this, o);
  std::vector<Elem> c;
  c.reserve(coords_.size());
  for (size_t i = 0; i < coords_.size(); ++i)
    c.push_back(coords_[i] + o.coords_[i]);
  return AlgebraElement(algebra_, std::move(c));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  check_compatible(*this, o);
  std::vector<Elem> c;
  c.reserve(coords_.size());
  for (size_t i = 0; i < coords_.size(); ++i)
    c.push_back(coords_[i] - o.coords_[i]);
  return AlgebraElement(algebra_, std::move(c));
}

AlgebraElement AlgebraElement::operator-() const {
  std::vector<Elem> c;
  c.reserve(coords_.size());
  for (const Elem& e : coords_) c.push_back(-e);
  return AlgebraElement(algebra_, std::move(c));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  check_compatible(*this, o);
  return AlgebraElement(algebra_, mul_coords(*algebra_, coords_, o.coords_));
}

AlgebraElement AlgebraElement::scaled(const Elem& c) const {
  std::vector<Elem> out;
  out.reserve(coords_.size());
  for (const Elem& e : coords_) out.push_back(e * c);
  return AlgebraElement(algebra_, std::move(out));
}

AlgebraElement AlgebraElement::pow(std::uint64_t e) const {
  AlgebraElement acc = algebra_->one();
  AlgebraElement base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool AlgebraElement::is_zero() const {
  for (const Elem& e : coords_)
    if (!e.is_zero()) return false;
  return true;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  check_compatible(*this, o);
  for (size_t i = 0; i < coords_.size(); ++i)
    if (!(coords_[i] == o.coords_[i])) return false;
  return true;
}

std::optional<AlgebraElement> AlgebraElement::try_inverse() const {
  const RingPtr& R = algebra_->ring();
  size_t r = algebra_->rank();
  if (r == 0) return std::nullopt;
  // columns of left multiplication by this element
  std::vector<Elem> M(r * r, R->zero());
  for (size_t j = 0; j < r; ++j) {
    std::vector<Elem> col = mul_coords(*algebra_, coords_, basis_coords(*algebra_, j));
    for (size_t l = 0; l < r; ++l) M[l * r + j] = std::move(col[l]);
  }
  auto sol = solve_linear(R, M, r, r, algebra_->unit_coords());
  if (!sol) return std::nullopt;
  AlgebraElement y(algebra_, std::move(*sol));
  // a surjective multiplication map on a finite free module is bijective,
  // so the right inverse is two sided
  if (!(y * *this == algebra_->one()))
    fail(errc::internal, "one-sided inverse in a finite algebra");
  return y;
}

bool AlgebraElement::invertible() const { return try_inverse().has_value(); }

AlgebraElement AlgebraElement::inverse() const {
  auto y = try_inverse();
  if (!y) fail(errc::not_invertible, "algebra element is not invertible");
  return *y;
}

AlgebraPtr opposite(const AlgebraPtr& A) {
  size_t r = A->rank();
  std::vector<Elem> sc;
  sc.reserve(r * r * r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      for (size_t k = 0; k < r; ++k) sc.push_back(A->sc(j, i, k));
  return FiniteAlgebra::trusted(A->ring(), r, std::move(sc), A->unit_coords());
}

AlgebraPtr tensor_product(const AlgebraPtr& A, const AlgebraPtr& B) {
  if (!A->ring()->same_as(*B->ring()))
    fail(errc::base_ring_mismatch, "tensor factors over different rings");
  size_t ra = A->rank(), rb = B->rank(), r = ra * rb;
  const RingPtr& R = A->ring();
  std::vector<Elem> sc(r * r * r, R->zero());
  for (size_t i = 0; i < ra; ++i)
    for (size_t p = 0; p < rb; ++p)
      for (size_t j = 0; j < ra; ++j)
        for (size_t q = 0; q < rb; ++q)
          for (size_t k = 0; k < ra; ++k) {
            const Elem& ca = A->sc(i, j, k);
            if (ca.is_zero()) continue;
            for (size_t s = 0; s < rb; ++s) {
              const Elem& cb = B->sc(p, q, s);
              if (cb.is_zero()) continue;
              sc[((i * rb + p) * r + (j * rb + q)) * r + (k * rb + s)] =
                  ca * cb;
            }
          }
  std::vector<Elem> unit;
  unit.reserve(r);
  for (size_t i = 0; i < ra; ++i)
    for (size_t p = 0; p < rb; ++p)
      unit.push_back(A->unit_coords()[i] * B->unit_coords()[p]);
  return FiniteAlgebra::trusted(R, r, std::move(sc), std::move(unit));
}

AlgebraPtr base_change(const AlgebraPtr& A, const RingPtr& bigger) {
  std::vector<Elem> sc;
  sc.reserve(A->structure_constants().size());
  for (const Elem& e : A->structure_constants())
    sc.push_back(e.embed_into(bigger));
  std::vector<Elem> unit;
  unit.reserve(A->rank());
  for (const Elem& e : A->unit_coords()) unit.push_back(e.embed_into(bigger));
  return FiniteAlgebra::trusted(bigger, A->rank(), std::move(sc),
                                std::move(unit));
}

LinearMapMatrix canonical_map_matrix(const AlgebraPtr& A) {
  size_t r = A->rank();
  const RingPtr& R = A->ring();
  LinearMapMatrix M;
  M.dim = r * r;
  M.entries.assign(M.dim * M.dim, R->zero());
  for (size_t i = 0; i < r; ++i)
    for (size_t m = 0; m < r; ++m) {
      // y = x_i x_m straight from the table, then y x_j per column
      std::vector<Elem> y(r, R->zero());
      for (size_t t = 0; t < r; ++t) y[t] = A->sc(i, m, t);
      for (size_t j = 0; j < r; ++j) {
        for (size_t t = 0; t < r; ++t) {
          if (y[t].is_zero()) continue;
          for (size_t l = 0; l < r; ++l) {
            const Elem& c = A->sc(t, j, l);
            if (c.is_zero()) continue;
            Elem& cell = M.entries[(l * r + m) * M.dim + (i * r + j)];
            cell = cell + y[t] * c;
          }
        }
      }
    }
  return M;
}

Elem canonical_map_determinant(const AlgebraPtr& A) {
  LinearMapMatrix M = canonical_map_matrix(A);
  return det(A->ring(), M.entries, M.dim);
}

bool is_azumaya(const AlgebraPtr& A) {
  if (A->rank() == 0) return true;
  return A->ring()->is_invertible(canonical_map_determinant(A));
}

std::vector<AlgebraElement> center(const AlgebraPtr& A) {
  size_t r = A->rank();
  const RingPtr& R = A->ring();
  std::vector<Elem> K;
  K.reserve(r * r * r);
  for (size_t j = 0; j < r; ++j)
    for (size_t l = 0; l < r; ++l)
      for (size_t i = 0; i < r; ++i)
        K.push_back(A->sc(i, j, l) - A->sc(j, i, l));
  std::vector<AlgebraElement> out;
  for (auto& gen : kernel_generators(R, K, r * r, r))
    out.push_back(A->element(std::move(gen)));
  return out;
}

}  // namespace aza
