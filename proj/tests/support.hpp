#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "aza/algebra.hpp"
#include "aza/poly.hpp"
#include "aza/rand.hpp"
#include "aza/ring.hpp"

namespace aza::test {

/// Runs f and reports the library error code it throws, if any.
inline std::optional<errc> thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code;
  }
  return std::nullopt;
}

/// Random element with denominators and coefficients exercised at every
/// level of the tower.
inline Elem random_element(const RingPtr& r, Rng& rng) {
  std::function<Value(size_t)> build = [&](size_t level) -> Value {
    if (level == 0) {
      switch (r->base().kind) {
        case BaseKind::integers:
          return Value(Int(rng.range(-20, 20)));
        case BaseKind::rationals: {
          Rat q(rng.range(-20, 20), rng.range(1, 12));
          q.canonicalize();
          return Value(q);
        }
        default:
          return Value(rng.int_below(r->base().pk));
      }
    }
    const auto& st = r->steps()[level - 1];
    if (st.kind == ExtensionStep::Kind::monic_quotient) {
      ValueVec v;
      v.reserve(st.degree());
      for (size_t i = 0; i < st.degree(); ++i) v.push_back(build(level - 1));
      return Value(std::move(v));
    }
    return Value(LocPart{std::make_shared<Value>(build(level - 1)),
                         rng.below(3)});
  };
  return r->element(build(r->depth()));
}

inline Poly random_monic(const RingPtr& r, Rng& rng, size_t deg) {
  std::vector<Elem> c;
  c.reserve(deg + 1);
  for (size_t i = 0; i < deg; ++i) c.push_back(random_element(r, rng));
  c.push_back(r->one());
  return Poly::from_coeffs(r, c);
}

/// Whether target lies in the module generated by gens.
inline bool in_span(const std::vector<AlgebraElement>& gens,
                    const AlgebraElement& target) {
  if (gens.empty()) return target.is_zero();
  const RingPtr& r = target.algebra()->ring();
  size_t rows = target.coords().size();
  std::vector<Elem> m;
  m.reserve(rows * gens.size());
  for (size_t i = 0; i < rows; ++i)
    for (const auto& g : gens) m.push_back(g.coords()[i]);
  return solve_linear(r, m, rows, gens.size(), target.coords()).has_value();
}

/// Both inclusions of center(A) = R*1: the unit lies in the span of the
/// computed generators, and every generator is a multiple of the unit.
inline bool center_is_unit_line(const AlgebraPtr& a) {
  std::vector<AlgebraElement> gens = center(a);
  if (!in_span(gens, a->one())) return false;
  std::vector<AlgebraElement> unit{a->one()};
  for (const auto& g : gens)
    if (!in_span(unit, g)) return false;
  return true;
}

/// r x r matrix of x -> a x b acting on coordinate columns.
inline std::vector<Elem> endo_matrix(const AlgebraPtr& a, const AlgebraElement& x,
                                     const AlgebraElement& y) {
  size_t r = a->rank();
  std::vector<Elem> m(r * r, a->ring()->zero());
  for (size_t col = 0; col < r; ++col) {
    AlgebraElement img = x * a->basis_element(col) * y;
    for (size_t row = 0; row < r; ++row) m[row * r + col] = img.coords()[row];
  }
  return m;
}

}  // namespace aza::test
