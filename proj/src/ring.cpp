#include "aza/ring.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "aza/poly.hpp"

namespace aza {

namespace {

std::string value_str(const Ring& r, const Value& v, size_t level);

}  // namespace

// ---------------------------------------------------------------------------
// construction

RingPtr Ring::make(BaseDesc b, std::vector<ExtensionStep> s) {
  auto r = std::shared_ptr<Ring>(new Ring());
  r->base_ = std::move(b);
  r->steps_ = std::move(s);
  return r;
}

RingPtr Ring::integers() {
  return make(BaseDesc{BaseKind::integers, Int(0), 1, Int(0)}, {});
}

RingPtr Ring::rationals() {
  return make(BaseDesc{BaseKind::rationals, Int(0), 1, Int(0)}, {});
}

RingPtr Ring::prime_field(const Int& p) {
  if (!is_prime(p)) fail(errc::non_prime_modulus, "p = " + p.get_str() + " is not prime");
  return make(BaseDesc{BaseKind::prime_field, p, 1, p}, {});
}

RingPtr Ring::zmod(const Int& p, unsigned k) {
  if (!is_prime(p)) fail(errc::non_prime_modulus, "p = " + p.get_str() + " is not prime");
  if (k < 1) fail(errc::bad_input, "exponent k must be at least 1");
  return make(BaseDesc{BaseKind::zmod_prime_power, p, k, ipow(p, k)}, {});
}

RingPtr Ring::quotient(const std::string& var,
                       const std::vector<Elem>& monic_modulus) const {
  if (monic_modulus.size() < 2)
    fail(errc::bad_input, "quotient modulus must have degree at least 1");
  ValueVec coeffs;
  coeffs.reserve(monic_modulus.size());
  for (const auto& c : monic_modulus) {
    if (!c.ring() || !c.ring()->same_as(*this))
      fail(errc::base_ring_mismatch, "modulus coefficient lives in a different ring");
    coeffs.push_back(c.value());
  }
  size_t lvl = depth();
  Value lead = v_sub(coeffs.back(), v_one(lvl), lvl);
  if (!v_is_zero(lead, lvl))
    fail(errc::non_monic_modulus, "quotient modulus is not monic");
  auto steps = steps_;
  steps.push_back(ExtensionStep{ExtensionStep::Kind::monic_quotient, var,
                                std::move(coeffs), Value()});
  return make(base_, std::move(steps));
}

RingPtr Ring::localized(const Elem& u) const {
  if (!u.ring() || !u.ring()->same_as(*this))
    fail(errc::base_ring_mismatch, "localization unit lives in a different ring");
  size_t lvl = depth();
  if (v_is_zero(u.value(), lvl))
    fail(errc::zero_localization, "localization at zero");
  Value pw = v_pow(u.value(), nilpotency_bound(lvl), lvl);
  if (v_is_zero(pw, lvl))
    fail(errc::zero_localization, "localization at a nilpotent gives the zero ring");
  auto steps = steps_;
  steps.push_back(ExtensionStep{ExtensionStep::Kind::localize, "", ValueVec{},
                                u.value()});
  return make(base_, std::move(steps));
}

RingPtr Ring::prefix(size_t levels) const {
  if (levels > depth()) fail(errc::internal, "prefix deeper than ring");
  return make(base_, std::vector<ExtensionStep>(steps_.begin(), steps_.begin() + levels));
}

bool Ring::same_as(const Ring& o) const {
  if (base_.kind != o.base_.kind) return false;
  if (base_.kind == BaseKind::prime_field && base_.p != o.base_.p) return false;
  if (base_.kind == BaseKind::zmod_prime_power &&
      (base_.p != o.base_.p || base_.k != o.base_.k))
    return false;
  if (steps_.size() != o.steps_.size()) return false;
  for (size_t i = 0; i < steps_.size(); ++i) {
    const auto& a = steps_[i];
    const auto& b = o.steps_[i];
    if (a.kind != b.kind || a.var != b.var) return false;
    if (a.kind == ExtensionStep::Kind::monic_quotient) {
      if (a.modulus.size() != b.modulus.size()) return false;
      for (size_t j = 0; j < a.modulus.size(); ++j)
        if (v_cmp(a.modulus[j], b.modulus[j], i) != 0) return false;
    } else {
      if (v_cmp(a.unit, b.unit, i) != 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// raw arithmetic

Value Ring::v_zero(size_t level) const {
  if (level == 0) {
    if (base_.kind == BaseKind::rationals) return Value(Rat(0));
    return Value(Int(0));
  }
  const auto& st = steps_[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient)
    return Value(ValueVec(st.degree(), v_zero(level - 1)));
  return Value(LocPart{std::make_shared<Value>(v_zero(level - 1)), 0});
}

Value Ring::v_one(size_t level) const { return v_from_int(1, level); }

Value Ring::v_from_int(const Int& n, size_t level) const {
  if (level == 0) {
    switch (base_.kind) {
      case BaseKind::integers: return Value(n);
      case BaseKind::rationals: return Value(Rat(n));
      default: return Value(mod_floor(n, base_.pk));
    }
  }
  const auto& st = steps_[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient) {
    ValueVec v(st.degree(), v_zero(level - 1));
    v[0] = v_from_int(n, level - 1);
    return Value(std::move(v));
  }
  return Value(LocPart{std::make_shared<Value>(v_from_int(n, level - 1)), 0});
}

Value Ring::v_add(const Value& a, const Value& b, size_t level) const {
  if (level == 0) {
    switch (base_.kind) {
      case BaseKind::integers: return Value(Int(a.as_int() + b.as_int()));
      case BaseKind::rationals: return Value(Rat(a.as_rat() + b.as_rat()));
      default: return Value(mod_floor(a.as_int() + b.as_int(), base_.pk));
    }
  }
  const auto& st = steps_[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient) {
    const auto& x = a.as_vec();
    const auto& y = b.as_vec();
    ValueVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = v_add(x[i], y[i], level - 1);
    return Value(std::move(out));
  }
  const auto& x = a.as_loc();
  const auto& y = b.as_loc();
  std::uint64_t m = std::max(x.exp, y.exp);
  Value xs = *x.num;
  Value ys = *y.num;
  if (m > x.exp) xs = v_mul(xs, v_pow(st.unit, m - x.exp, level - 1), level - 1);
  if (m > y.exp) ys = v_mul(ys, v_pow(st.unit, m - y.exp, level - 1), level - 1);
  return Value(LocPart{std::make_shared<Value>(v_add(xs, ys, level - 1)), m});
}

Value Ring::v_neg(const Value& a, size_t level) const {
  if (level == 0) {
    switch (base_.kind) {
      case BaseKind::integers: return Value(Int(-a.as_int()));
      case BaseKind::rationals: return Value(Rat(-a.as_rat()));
      default: return Value(mod_floor(-a.as_int(), base_.pk));
    }
  }
  const auto& st = steps_[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient) {
    const auto& x = a.as_vec();
    ValueVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = v_neg(x[i], level - 1);
    return Value(std::move(out));
  }
  const auto& x = a.as_loc();
  return Value(LocPart{std::make_shared<Value>(v_neg(*x.num, level - 1)), x.exp});
}

Value Ring::v_sub(const Value& a, const Value& b, size_t level) const {
  return v_add(a, v_neg(b, level), level);
}

Value Ring::quot_reduce(ValueVec conv, size_t level) const {
  const auto& st = steps_[level - 1];
  size_t d = st.degree();
  for (size_t i = conv.size(); i-- > d;) {
    if (v_is_zero(conv[i], level - 1)) continue;
    Value c = std::move(conv[i]);
    for (size_t j = 0; j < d; ++j) {
      conv[i - d + j] = v_sub(conv[i - d + j],
                              v_mul(c, st.modulus[j], level - 1), level - 1);
    }
  }
  conv.resize(d, v_zero(level - 1));
  return Value(std::move(conv));
}

Value Ring::v_mul(const Value& a, const Value& b, size_t level) const {
  if (level == 0) {
    switch (base_.kind) {
      case BaseKind::integers: return Value(Int(a.as_int() * b.as_int()));
      case BaseKind::rationals: return Value(Rat(a.as_rat() * b.as_rat()));
      default: return Value(mod_floor(a.as_int() * b.as_int(), base_.pk));
    }
  }
  const auto& st = steps_[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient) {
    const auto& x = a.as_vec();
    const auto& y = b.as_vec();
    size_t d = st.degree();
    ValueVec conv(2 * d - 1, v_zero(level - 1));
    for (size_t i = 0; i < d; ++i) {
      if (v_is_zero(x[i], level - 1)) continue;
      for (size_t j = 0; j < d; ++j) {
        conv[i + j] = v_add(conv[i + j], v_mul(x[i], y[j], level - 1), level - 1);
      }
    }
    return quot_reduce(std::move(conv), level);
  }
  const auto& x = a.as_loc();
  const auto& y = b.as_loc();
  return Value(LocPart{
      std::make_shared<Value>(v_mul(*x.num, *y.num, level - 1)), x.exp + y.exp});
}

Value Ring::v_pow(Value a, std::uint64_t e, size_t level) const {
  Value acc = v_one(level);
  while (e > 0) {
    if (e & 1) acc = v_mul(acc, a, level);
    e >>= 1;
    if (e > 0) a = v_mul(a, a, level);
  }
  return acc;
}

bool Ring::v_is_zero(const Value& a, size_t level) const {
  if (level == 0) {
    if (base_.kind == BaseKind::rationals) return a.as_rat() == 0;
    return a.as_int() == 0;
  }
  const auto& st = steps_[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient) {
    for (const auto& c : a.as_vec())
      if (!v_is_zero(c, level - 1)) return false;
    return true;
  }
  const auto& x = a.as_loc();
  if (v_is_zero(*x.num, level - 1)) return true;
  // Scalar levels below: the unit is invertible there (or the level is a
  // domain), so a nonzero numerator stays nonzero.
  bool scalar_below = true;
  for (size_t i = 0; i < level - 1; ++i)
    if (steps_[i].kind == ExtensionStep::Kind::monic_quotient) scalar_below = false;
  if (scalar_below) return false;
  // General case: num / u^e = 0 iff u^K kills the numerator.
  Value w = *x.num;
  std::uint64_t K = nilpotency_bound(level - 1);
  for (std::uint64_t t = 0; t < K; ++t) {
    w = v_mul(w, st.unit, level - 1);
    if (v_is_zero(w, level - 1)) return true;
  }
  return false;
}

int Ring::v_cmp(const Value& a, const Value& b, size_t level) const {
  if (level == 0) {
    if (base_.kind == BaseKind::rationals) {
      return mpq_cmp(a.as_rat().get_mpq_t(), b.as_rat().get_mpq_t());
    }
    return mpz_cmp(a.as_int().get_mpz_t(), b.as_int().get_mpz_t());
  }
  const auto& st = steps_[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient) {
    const auto& x = a.as_vec();
    const auto& y = b.as_vec();
    for (size_t i = 0; i < x.size(); ++i) {
      int c = v_cmp(x[i], y[i], level - 1);
      if (c != 0) return c;
    }
    return 0;
  }
  const auto& x = a.as_loc();
  const auto& y = b.as_loc();
  if (x.exp != y.exp) return x.exp < y.exp ? -1 : 1;
  return v_cmp(*x.num, *y.num, level - 1);
}

Value Ring::v_embed(Value lower, size_t from_level, size_t to_level) const {
  for (size_t lvl = from_level; lvl < to_level; ++lvl) {
    const auto& st = steps_[lvl];
    if (st.kind == ExtensionStep::Kind::monic_quotient) {
      ValueVec v(st.degree(), v_zero(lvl));
      v[0] = std::move(lower);
      lower = Value(std::move(v));
    } else {
      lower = Value(LocPart{std::make_shared<Value>(std::move(lower)), 0});
    }
  }
  return lower;
}

void Ring::v_validate(const Value& a, size_t level) const {
  if (level == 0) {
    switch (base_.kind) {
      case BaseKind::integers:
        if (!std::holds_alternative<Int>(a.rep)) fail(errc::bad_input, "expected integer scalar");
        return;
      case BaseKind::rationals:
        if (!std::holds_alternative<Rat>(a.rep)) fail(errc::bad_input, "expected rational scalar");
        return;
      default:
        if (!std::holds_alternative<Int>(a.rep)) fail(errc::bad_input, "expected residue scalar");
        if (a.as_int() < 0 || a.as_int() >= base_.pk)
          fail(errc::bad_input, "residue scalar out of range");
        return;
    }
  }
  const auto& st = steps_[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient) {
    if (!std::holds_alternative<ValueVec>(a.rep))
      fail(errc::bad_input, "expected coefficient vector");
    if (a.as_vec().size() != st.degree())
      fail(errc::bad_input, "coefficient vector has wrong length");
    for (const auto& c : a.as_vec()) v_validate(c, level - 1);
    return;
  }
  if (!std::holds_alternative<LocPart>(a.rep))
    fail(errc::bad_input, "expected localized numerator/exponent pair");
  v_validate(*a.as_loc().num, level - 1);
}

std::uint64_t Ring::nilpotency_bound(size_t level) const {
  std::uint64_t K = (base_.kind == BaseKind::zmod_prime_power) ? base_.k : 1;
  for (size_t i = 0; i < level; ++i)
    if (steps_[i].kind == ExtensionStep::Kind::monic_quotient)
      K *= steps_[i].degree();
  return K;
}

std::optional<std::uint64_t> Ring::cardinality(std::uint64_t limit) const {
  Int n;
  switch (base_.kind) {
    case BaseKind::integers:
    case BaseKind::rationals: return std::nullopt;
    default: n = base_.pk;
  }
  if (n > limit) return std::nullopt;
  for (const auto& st : steps_) {
    if (st.kind == ExtensionStep::Kind::localize) return std::nullopt;
    Int d(static_cast<unsigned long>(st.degree()));
    mpz_pow_ui(n.get_mpz_t(), n.get_mpz_t(), st.degree());
    if (n > limit) return std::nullopt;
  }
  return n.get_ui();
}

std::vector<Value> Ring::enumerate(std::uint64_t limit) const {
  auto card = cardinality(limit);
  if (!card) fail(errc::unsupported_ring, "ring is not enumerable at this size");
  std::vector<Value> out;
  out.reserve(*card);
  // Odometer over base scalars and coefficient vectors, degree-0 fastest.
  std::function<void(size_t, std::vector<Value>&)> gen =
      [&](size_t level, std::vector<Value>& into) {
        if (level == 0) {
          for (Int v = 0; v < base_.pk; ++v) into.push_back(Value(v));
          return;
        }
        std::vector<Value> lower;
        gen(level - 1, lower);
        size_t d = steps_[level - 1].degree();
        std::vector<size_t> idx(d, 0);
        while (true) {
          ValueVec coeffs;
          coeffs.reserve(d);
          for (size_t j = 0; j < d; ++j) coeffs.push_back(lower[idx[j]]);
          into.push_back(Value(std::move(coeffs)));
          size_t j = 0;
          while (j < d && ++idx[j] == lower.size()) idx[j++] = 0;
          if (j == d) break;
        }
      };
  gen(depth(), out);
  return out;
}

// ---------------------------------------------------------------------------
// element factories

Elem Ring::zero() const { return Elem(shared_from_this(), v_zero(depth())); }
Elem Ring::one() const { return Elem(shared_from_this(), v_one(depth())); }

Elem Ring::from_int(const Int& n) const {
  return Elem(shared_from_this(), v_from_int(n, depth()));
}

Elem Ring::from_rat(const Rat& q) const {
  if (base_.kind == BaseKind::rationals)
    return Elem(shared_from_this(), v_embed(Value(q), 0, depth()));
  if (q.get_den() == 1) return from_int(q.get_num());
  fail(errc::bad_input, "rational scalar over a non-rational base");
}

Elem Ring::generator(size_t step_index) const {
  if (step_index >= steps_.size() ||
      steps_[step_index].kind != ExtensionStep::Kind::monic_quotient)
    fail(errc::bad_input, "generator index is not a quotient step");
  const auto& st = steps_[step_index];
  Value g;
  if (st.degree() == 1) {
    // x = -c0 in a degree-one quotient.
    g = Value(ValueVec{v_neg(st.modulus[0], step_index)});
  } else {
    ValueVec v(st.degree(), v_zero(step_index));
    v[1] = v_one(step_index);
    g = Value(std::move(v));
  }
  return Elem(shared_from_this(), v_embed(std::move(g), step_index + 1, depth()));
}

Elem Ring::element(Value v) const {
  v_validate(v, depth());
  return Elem(shared_from_this(), std::move(v));
}

// ---------------------------------------------------------------------------
// flattening

size_t Ring::core_level() const {
  size_t i = 0;
  while (i < steps_.size() && steps_[i].kind == ExtensionStep::Kind::localize) ++i;
  return i;
}

bool Ring::flatten_supported() const {
  for (size_t i = core_level(); i < steps_.size(); ++i)
    if (steps_[i].kind == ExtensionStep::Kind::localize) return false;
  return true;
}

size_t Ring::flatten_rank() const {
  size_t n = 1;
  for (size_t i = core_level(); i < steps_.size(); ++i) n *= steps_[i].degree();
  return n;
}

ValueVec Ring::to_coords(const Value& v) const {
  if (!flatten_supported())
    fail(errc::unsupported_ring,
         "ring does not flatten to a free module (localization above a quotient)");
  ValueVec out;
  out.reserve(flatten_rank());
  size_t core = core_level();
  // Top step degree is the major index: emit blocks per top coefficient.
  std::function<void(const Value&, size_t)> emit = [&](const Value& x, size_t lvl) {
    if (lvl == core) {
      out.push_back(x);
      return;
    }
    for (const auto& c : x.as_vec()) emit(c, lvl - 1);
  };
  emit(v, depth());
  return out;
}

Value Ring::from_coords(const ValueVec& coords) const {
  if (coords.size() != flatten_rank()) fail(errc::internal, "coordinate length mismatch");
  size_t core = core_level();
  size_t pos = 0;
  std::function<Value(size_t)> build = [&](size_t lvl) -> Value {
    if (lvl == core) return coords[pos++];
    size_t d = steps_[lvl - 1].degree();
    ValueVec v;
    v.reserve(d);
    for (size_t j = 0; j < d; ++j) v.push_back(build(lvl - 1));
    return Value(std::move(v));
  };
  return build(depth());
}

ValueVec Ring::mult_matrix(const Value& v) const {
  size_t N = flatten_rank();
  ValueVec m(N * N);
  for (size_t j = 0; j < N; ++j) {
    ValueVec e(N, v_zero(core_level()));
    e[j] = v_one(core_level());
    Value bj = from_coords(e);
    Value prod = v_mul(v, bj, depth());
    ValueVec col = to_coords(prod);
    for (size_t i = 0; i < N; ++i) m[i * N + j] = col[i];
  }
  return m;
}

// ---------------------------------------------------------------------------
// inversion

std::optional<Elem> Ring::try_inverse(const Elem& x) const {
  auto self = shared_from_this();
  auto sol = solve_linear(self, {x}, 1, 1, {one()});
  if (!sol) return std::nullopt;
  return (*sol)[0];
}

bool Ring::is_invertible(const Elem& x) const { return try_inverse(x).has_value(); }

Elem Ring::inverse(const Elem& x) const {
  auto inv = try_inverse(x);
  if (!inv) fail(errc::not_invertible, "element is not invertible: " + x.str());
  return *inv;
}

// ---------------------------------------------------------------------------
// Elem

void require_same_ring(const Elem& a, const Elem& b) {
  if (!a.ring() || !b.ring() || !a.ring()->same_as(*b.ring()))
    fail(errc::base_ring_mismatch, "elements from different rings");
}

Elem Elem::operator+(const Elem& o) const {
  require_same_ring(*this, o);
  return Elem(ring_, ring_->v_add(v_, o.v_, ring_->depth()));
}

Elem Elem::operator-(const Elem& o) const {
  require_same_ring(*this, o);
  return Elem(ring_, ring_->v_sub(v_, o.v_, ring_->depth()));
}

Elem Elem::operator*(const Elem& o) const {
  require_same_ring(*this, o);
  return Elem(ring_, ring_->v_mul(v_, o.v_, ring_->depth()));
}

Elem Elem::operator-() const { return Elem(ring_, ring_->v_neg(v_, ring_->depth())); }

Elem Elem::pow(std::uint64_t e) const {
  return Elem(ring_, ring_->v_pow(v_, e, ring_->depth()));
}

bool Elem::is_zero() const { return ring_->v_is_zero(v_, ring_->depth()); }

bool Elem::operator==(const Elem& o) const {
  require_same_ring(*this, o);
  return (*this - o).is_zero();
}

bool Elem::invertible() const { return ring_->is_invertible(*this); }

Elem Elem::inverse() const { return ring_->inverse(*this); }

Elem Elem::embed_into(const RingPtr& bigger) const {
  size_t d = ring_->depth();
  if (bigger->depth() < d || !bigger->prefix(d)->same_as(*ring_))
    fail(errc::base_ring_mismatch, "embedding target does not extend the ring");
  return Elem(bigger, bigger->v_embed(v_, d, bigger->depth()));
}

std::string Elem::str() const { return value_str(*ring_, v_, ring_->depth()); }

// ---------------------------------------------------------------------------
// printing

namespace {

std::string value_str(const Ring& r, const Value& v, size_t level) {
  if (level == 0) {
    if (r.base().kind == BaseKind::rationals) return v.as_rat().get_str();
    return v.as_int().get_str();
  }
  const auto& st = r.steps()[level - 1];
  if (st.kind == ExtensionStep::Kind::monic_quotient) {
    std::ostringstream os;
    os << "(";
    const auto& vec = v.as_vec();
    for (size_t i = 0; i < vec.size(); ++i) {
      if (i) os << ", ";
      os << value_str(r, vec[i], level - 1);
    }
    os << ")";
    return os.str();
  }
  const auto& l = v.as_loc();
  std::ostringstream os;
  os << value_str(r, *l.num, level - 1) << "/u^" << l.exp;
  return os.str();
}

}  // namespace

std::string Ring::describe() const {
  std::ostringstream os;
  switch (base_.kind) {
    case BaseKind::integers: os << "Z"; break;
    case BaseKind::rationals: os << "Q"; break;
    case BaseKind::prime_field: os << "F_" << base_.p.get_str(); break;
    case BaseKind::zmod_prime_power:
      os << "Z/" << base_.p.get_str() << "^" << base_.k;
      break;
  }
  for (size_t i = 0; i < steps_.size(); ++i) {
    const auto& st = steps_[i];
    if (st.kind == ExtensionStep::Kind::monic_quotient) {
      os << "[" << st.var << "]/(deg " << st.degree() << ")";
    } else {
      os << "[1/" << value_str(*this, st.unit, i) << "]";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// local certificates

Value LocalCertificate::residue_value(const Value& v, size_t level) const {
  const Ring& rf = *residue_field_;
  if (level == 0) {
    return rf.v_embed(Value(mod_floor(v.as_int(), p_)), 0, rf.depth());
  }
  const StepData& sd = steps_[level - 1];
  const auto& coeffs = v.as_vec();
  Value acc = rf.v_zero(rf.depth());
  for (size_t i = coeffs.size(); i-- > 0;) {
    acc = rf.v_mul(acc, sd.xi, rf.depth());
    acc = rf.v_add(acc, residue_value(coeffs[i], level - 1), rf.depth());
  }
  return acc;
}

Elem LocalCertificate::residue(const Elem& x) const {
  if (!x.ring()->same_as(*ring_))
    fail(errc::base_ring_mismatch, "residue of an element of a different ring");
  return Elem(residue_field_, residue_value(x.value(), ring_->depth()));
}

Value LocalCertificate::section_value(const Value& v, size_t ring_level,
                                      size_t res_level) const {
  const Ring& r = *ring_;
  if (ring_level == 0) {
    return v;  // scalar in [0, p) is already a canonical representative
  }
  const StepData& sd = steps_[ring_level - 1];
  size_t d = r.steps()[ring_level - 1].degree();
  ValueVec out(d, r.v_zero(ring_level - 1));
  if (sd.extends) {
    const auto& coeffs = v.as_vec();
    for (size_t j = 0; j < coeffs.size(); ++j)
      out[j] = section_value(coeffs[j], ring_level - 1, res_level - 1);
  } else {
    out[0] = section_value(v, ring_level - 1, res_level);
  }
  return Value(std::move(out));
}

Elem LocalCertificate::section(const Elem& xbar) const {
  if (!xbar.ring()->same_as(*residue_field_))
    fail(errc::base_ring_mismatch, "section argument is not a residue field element");
  return Elem(ring_, section_value(xbar.value(), ring_->depth(),
                                   residue_field_->depth()));
}

LocalCertificate check_local(const RingPtr& r) {
  LocalCertificate cert;
  cert.ring_ = r;
  const auto& b = r->base();
  if (b.kind == BaseKind::integers || b.kind == BaseKind::rationals)
    fail(errc::unsupported_base, "certified local towers need a finite local base");
  cert.p_ = b.p;
  cert.k_ = b.k;
  cert.nilpotency_ = r->nilpotency_bound(r->depth());

  RingPtr rf = Ring::prime_field(b.p);
  struct PendingXi {
    Value low;     // at the residue-tower depth when recorded
    size_t level;
  };
  std::vector<PendingXi> xis;
  auto refresh_xis = [&](std::vector<LocalCertificate::StepData>& sds) {
    for (size_t j = 0; j < xis.size(); ++j)
      sds[j].xi = rf->v_embed(xis[j].low, xis[j].level, rf->depth());
  };

  for (size_t i = 0; i < r->steps().size(); ++i) {
    const auto& st = r->steps()[i];
    if (st.kind == ExtensionStep::Kind::localize)
      fail(errc::unsupported_base, "localization step in a certified local tower");
    // Residual modulus over the residue field built so far.
    refresh_xis(cert.steps_);
    std::vector<Elem> rcoeffs;
    rcoeffs.reserve(st.modulus.size());
    for (const auto& c : st.modulus) {
      // Partial certificate: residue of a level-i value uses steps_ < i only.
      LocalCertificate partial;
      partial.ring_ = r;
      partial.residue_field_ = rf;
      partial.p_ = b.p;
      partial.k_ = b.k;
      partial.steps_ = cert.steps_;
      rcoeffs.push_back(Elem(rf, partial.residue_value(c, i)));
    }
    Poly rbar = Poly::from_coeffs(rf, rcoeffs);
    auto factors = factor_over_finite_field(rbar);
    if (factors.size() != 1)
      fail(errc::not_local,
           "residual modulus of step " + std::to_string(i) +
               " is not a power of a single irreducible");
    const Poly& q = factors[0].first;
    unsigned s = factors[0].second;
    LocalCertificate::StepData sd;
    sd.multiplicity = s;
    sd.qbar.reserve(q.degree() + 1);
    for (long j = 0; j <= q.degree(); ++j) sd.qbar.push_back(q.coeff(j).value());
    if (q.degree() >= 2) {
      sd.extends = true;
      std::vector<Elem> qc;
      for (long j = 0; j <= q.degree(); ++j) qc.push_back(q.coeff(j));
      rf = rf->quotient(st.var, qc);
      sd.res_level = rf->depth();
      xis.push_back(PendingXi{rf->generator(rf->depth() - 1).value(), rf->depth()});
    } else {
      sd.extends = false;
      sd.res_level = rf->depth();
      xis.push_back(PendingXi{rf->v_neg(sd.qbar[0], rf->depth()), rf->depth()});
    }
    cert.steps_.push_back(std::move(sd));
  }

  cert.residue_field_ = rf;
  refresh_xis(cert.steps_);

  // Maximal ideal generators: p when it is nonzero in the ring, plus the
  // lifted residual irreducible at every ramified step.
  if (b.kind == BaseKind::zmod_prime_power && b.k >= 2)
    cert.mgens_.push_back(r->from_int(b.p));
  for (size_t i = 0; i < cert.steps_.size(); ++i) {
    const auto& sd = cert.steps_[i];
    if (sd.multiplicity < 2) continue;
    size_t dq = sd.qbar.size() - 1;
    size_t dm = r->steps()[i].degree();
    ValueVec vec(dm, r->v_zero(i));
    for (size_t j = 0; j < dq; ++j) {
      size_t res_before = sd.extends ? sd.res_level - 1 : sd.res_level;
      vec[j] = cert.section_value(sd.qbar[j], i, res_before);
    }
    vec[dq] = r->v_one(i);
    cert.mgens_.push_back(
        Elem(r, r->v_embed(Value(std::move(vec)), i + 1, r->depth())));
  }
  return cert;
}

}  // namespace aza
