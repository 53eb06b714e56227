#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aza/ring.hpp"

namespace aza {

/// Univariate polynomial over a tower ring. Coefficients are stored
/// degree-0 first with no trailing zeros; the zero polynomial has an empty
/// coefficient list and degree -1.
class Poly {
public:
  Poly() = default;
  explicit Poly(RingPtr r) : ring_(std::move(r)) {}

  static Poly zero(const RingPtr& r) { return Poly(r); }
  static Poly one(const RingPtr& r);
  static Poly x(const RingPtr& r);
  static Poly constant(const Elem& c);
  static Poly monomial(const RingPtr& r, size_t deg, const Elem& c);
  static Poly from_coeffs(const RingPtr& r, const std::vector<Elem>& coeffs);
  /// Trusts that the values already live at the ring's depth.
  static Poly from_values(RingPtr r, ValueVec coeffs);

  const RingPtr& ring() const { return ring_; }
  const ValueVec& values() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const;
  Elem coeff(long i) const;
  Elem leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Elem& c) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Quotient and remainder by a monic divisor; throws non_monic_divisor.
  std::pair<Poly, Poly> divmod_monic(const Poly& divisor) const;
  Poly derivative() const;
  Elem evaluate(const Elem& at) const;

  Poly map_coeffs(const RingPtr& target,
                  const std::function<Elem(const Elem&)>& f) const;
  /// Coefficientwise canonical embedding into an extension of the ring.
  Poly embed_into(const RingPtr& bigger) const;

  std::string str(const std::string& var = "X") const;

private:
  void strip();

  RingPtr ring_;
  ValueVec c_;
};

/// Monic gcd via the Euclidean algorithm; requires invertible leading
/// coefficients along the way (fields and similar).
Poly poly_gcd(const Poly& a, const Poly& b);

struct PolyXgcd {
  Poly g;  // monic gcd
  Poly s;
  Poly t;  // g = s*a + t*b
};
PolyXgcd poly_xgcd(const Poly& a, const Poly& b);

/// base^e modulo a monic polynomial.
Poly poly_powmod(const Poly& base, const Int& e, const Poly& mod);

/// Whether the tower is a finite field: prime field base and every step a
/// quotient by a residually irreducible polynomial.
bool is_finite_field(const RingPtr& r);

/// Number of elements of a finite field tower.
Int finite_field_cardinality(const RingPtr& r);

/// Complete factorization of a monic polynomial over a finite field tower
/// into monic irreducibles with multiplicities, in a canonical order
/// (degree, then coefficient sequence). Throws non_monic / not_finite_field.
std::vector<std::pair<Poly, unsigned>> factor_over_finite_field(const Poly& f);

}  // namespace aza
