#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aza/error.hpp"
#include "aza/scalar.hpp"

namespace aza {

class Ring;
class Elem;
using RingPtr = std::shared_ptr<const Ring>;

enum class BaseKind { integers, rationals, prime_field, zmod_prime_power };

struct Value;
using ValueVec = std::vector<Value>;

/// Element of a localized level, denoting num / u^exp. Pairs are kept as
/// written; equality goes through cross multiplication, never normalization.
struct LocPart {
  std::shared_ptr<const Value> num;
  std::uint64_t exp = 0;
};

/// Raw tower element. The meaning of a Value depends on the ring level it is
/// read at: base levels hold scalars, quotient levels hold coefficient
/// vectors over the level below (always of full length deg modulus), and
/// localized levels hold numerator/exponent pairs.
struct Value {
  std::variant<Int, Rat, ValueVec, LocPart> rep;

  Value() : rep(Int(0)) {}
  explicit Value(Int z) : rep(std::move(z)) {}
  explicit Value(Rat q) : rep(std::move(q)) {}
  explicit Value(ValueVec v) : rep(std::move(v)) {}
  explicit Value(LocPart l) : rep(std::move(l)) {}

  const Int& as_int() const { return std::get<Int>(rep); }
  const Rat& as_rat() const { return std::get<Rat>(rep); }
  const ValueVec& as_vec() const { return std::get<ValueVec>(rep); }
  const LocPart& as_loc() const { return std::get<LocPart>(rep); }
};

struct BaseDesc {
  BaseKind kind = BaseKind::integers;
  Int p;           // prime_field, zmod_prime_power
  unsigned k = 1;  // zmod_prime_power
  Int pk;          // cached p^k
};

struct ExtensionStep {
  enum class Kind { monic_quotient, localize };
  Kind kind = Kind::monic_quotient;
  std::string var;    // monic_quotient
  ValueVec modulus;   // full coefficient list over the level below, monic
  Value unit;         // localize
  size_t degree() const { return modulus.size() - 1; }
};

/// A computable ring presented as a base ring with a stack of extension
/// steps. Immutable; extension returns a new ring sharing nothing mutable.
class Ring : public std::enable_shared_from_this<Ring> {
public:
  static RingPtr integers();
  static RingPtr rationals();
  static RingPtr prime_field(const Int& p);
  static RingPtr zmod(const Int& p, unsigned k);

  /// Adjoins a root of the monic polynomial given by `monic_modulus`
  /// (degree-0 coefficient first, leading coefficient included).
  RingPtr quotient(const std::string& var,
                   const std::vector<Elem>& monic_modulus) const;
  /// Inverts u. Rejects u = 0 and nilpotent u (the result would be trivial).
  RingPtr localized(const Elem& u) const;
  /// The ring formed by the first `levels` steps.
  RingPtr prefix(size_t levels) const;

  const BaseDesc& base() const { return base_; }
  const std::vector<ExtensionStep>& steps() const { return steps_; }
  size_t depth() const { return steps_.size(); }
  bool same_as(const Ring& other) const;
  std::string describe() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(const Int& n) const;
  Elem from_rat(const Rat& q) const;
  /// The adjoined generator of quotient step `step_index`.
  Elem generator(size_t step_index) const;
  /// Wraps a raw value after validating its shape against this ring.
  Elem element(Value v) const;

  // Raw arithmetic at a given level (level = number of active steps). Used
  // by element operations and by polynomial code working under a quotient.
  Value v_zero(size_t level) const;
  Value v_one(size_t level) const;
  Value v_from_int(const Int& n, size_t level) const;
  Value v_add(const Value& a, const Value& b, size_t level) const;
  Value v_sub(const Value& a, const Value& b, size_t level) const;
  Value v_neg(const Value& a, size_t level) const;
  Value v_mul(const Value& a, const Value& b, size_t level) const;
  Value v_pow(Value a, std::uint64_t e, size_t level) const;
  bool v_is_zero(const Value& a, size_t level) const;
  /// Structural total order on values, used only for canonical output.
  int v_cmp(const Value& a, const Value& b, size_t level) const;
  /// Canonical embedding along prefix inclusion from_level -> to_level.
  Value v_embed(Value lower, size_t from_level, size_t to_level) const;
  void v_validate(const Value& a, size_t level) const;

  /// Bound K with x^K = 0 for every nilpotent x at `level` (k times the
  /// product of quotient degrees).
  std::uint64_t nilpotency_bound(size_t level) const;

  /// Number of elements when finite and at most `limit`.
  std::optional<std::uint64_t> cardinality(std::uint64_t limit) const;
  /// All elements in a fixed canonical order; fails when infinite or larger
  /// than `limit`.
  std::vector<Value> enumerate(std::uint64_t limit) const;

  // Flattening onto the scalar core (base plus leading localize steps).
  // Supported shape: every localize step precedes every quotient step.
  bool flatten_supported() const;
  size_t core_level() const;
  size_t flatten_rank() const;
  RingPtr core_ring() const { return prefix(core_level()); }
  /// Coordinates over the core in the monomial basis, length flatten_rank().
  ValueVec to_coords(const Value& v) const;
  Value from_coords(const ValueVec& coords) const;
  /// Multiplication-by-v matrix over the core, row major, N x N with
  /// N = flatten_rank(); column j holds coords of v * basis_j.
  ValueVec mult_matrix(const Value& v) const;

  bool is_invertible(const Elem& x) const;
  std::optional<Elem> try_inverse(const Elem& x) const;
  Elem inverse(const Elem& x) const;

private:
  Ring() = default;
  static RingPtr make(BaseDesc b, std::vector<ExtensionStep> s);

  Value quot_reduce(ValueVec conv, size_t level) const;  // level of the quotient step

  BaseDesc base_;
  std::vector<ExtensionStep> steps_;
};

/// Element of a specific ring. Cheap to copy; arithmetic requires both
/// operands to live in structurally equal rings.
class Elem {
public:
  Elem() = default;
  Elem(RingPtr ring, Value v) : ring_(std::move(ring)), v_(std::move(v)) {}

  const RingPtr& ring() const { return ring_; }
  const Value& value() const { return v_; }

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator*(const Elem& o) const;
  Elem operator-() const;
  Elem pow(std::uint64_t e) const;

  bool is_zero() const;
  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }

  bool invertible() const;
  Elem inverse() const;

  /// Canonical image in a ring extending this element's ring by further
  /// steps. `bigger` must have this ring as a prefix.
  Elem embed_into(const RingPtr& bigger) const;

  std::string str() const;

private:
  RingPtr ring_;
  Value v_;
};

void require_same_ring(const Elem& a, const Elem& b);

/// Cofactor witness for 1 = sum c_i * gens_i; `cofactors` is empty when the
/// generators do not span the unit ideal.
struct UnitIdealWitness {
  bool is_unit_ideal = false;
  std::vector<Elem> cofactors;
};

/// Decides 1 in (gens) over the common ring of the generators and produces
/// cofactors when so.
UnitIdealWitness unit_ideal_test(const std::vector<Elem>& gens);

/// Coefficients c with target = sum c_i * gens_i, when the target lies in
/// the generated ideal.
std::optional<std::vector<Elem>> ideal_membership(const Elem& target,
                                                  const std::vector<Elem>& gens);

/// Solves A x = b over the ring; A is rows x cols, row major.
std::optional<std::vector<Elem>> solve_linear(const RingPtr& ring,
                                              const std::vector<Elem>& A,
                                              size_t rows, size_t cols,
                                              const std::vector<Elem>& b);

/// Generating set of {x : A x = 0} as a module over the ring.
std::vector<std::vector<Elem>> kernel_generators(const RingPtr& ring,
                                                 const std::vector<Elem>& A,
                                                 size_t rows, size_t cols);

/// Determinant of the n x n matrix A (row major) over the ring.
Elem det(const RingPtr& ring, const std::vector<Elem>& A, size_t n);

/// Certificate that a ring is local with nilpotent maximal ideal and finite
/// residue field, together with the residue machinery.
class LocalCertificate {
public:
  const RingPtr& ring() const { return ring_; }
  const RingPtr& residue_field() const { return residue_field_; }
  const Int& p() const { return p_; }
  unsigned k() const { return k_; }
  const std::vector<Elem>& maximal_ideal_generators() const { return mgens_; }
  std::uint64_t nilpotency_index_bound() const { return nilpotency_; }

  /// Ring homomorphism onto the residue field.
  Elem residue(const Elem& x) const;
  /// Canonical set-theoretic section of residue(); residue(section(y)) = y.
  Elem section(const Elem& xbar) const;

private:
  friend LocalCertificate check_local(const RingPtr& r);

  struct StepData {
    bool extends = false;   // residual irreducible has degree >= 2
    size_t res_level = 0;   // residue tower depth after this step
    ValueVec qbar;          // irreducible factor, coeffs at res level - 1
    unsigned multiplicity = 1;
    Value xi;               // image of the step generator, full residue level
  };

  Value residue_value(const Value& v, size_t level) const;
  Value section_value(const Value& v, size_t ring_level, size_t res_level) const;

  RingPtr ring_;
  RingPtr residue_field_;
  Int p_;
  unsigned k_ = 1;
  std::vector<Elem> mgens_;
  std::uint64_t nilpotency_ = 1;
  std::vector<StepData> steps_;
};

/// Verifies the local shape (prime_field or zmod_prime_power base, quotient
/// steps whose residual moduli are powers of a single irreducible) and
/// builds the certificate. Throws not_local / unsupported_base otherwise.
LocalCertificate check_local(const RingPtr& r);

}  // namespace aza
