#include "aza/poly.hpp"

#include <algorithm>
#include <sstream>

#include "aza/rand.hpp"

namespace aza {

void Poly::strip() {
  size_t lvl = ring_->depth();
  while (!c_.empty() && ring_->v_is_zero(c_.back(), lvl)) c_.pop_back();
}

Poly Poly::one(const RingPtr& r) { return constant(r->one()); }

Poly Poly::x(const RingPtr& r) { return monomial(r, 1, r->one()); }

Poly Poly::constant(const Elem& c) {
  Poly p(c.ring());
  p.c_.push_back(c.value());
  p.strip();
  return p;
}

Poly Poly::monomial(const RingPtr& r, size_t deg, const Elem& c) {
  if (!c.ring()->same_as(*r))
    fail(errc::base_ring_mismatch, "monomial coefficient in a different ring");
  Poly p(r);
  p.c_.assign(deg + 1, r->v_zero(r->depth()));
  p.c_[deg] = c.value();
  p.strip();
  return p;
}

Poly Poly::from_coeffs(const RingPtr& r, const std::vector<Elem>& coeffs) {
  Poly p(r);
  p.c_.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (!c.ring() || !c.ring()->same_as(*r))
      fail(errc::base_ring_mismatch, "polynomial coefficient in a different ring");
    p.c_.push_back(c.value());
  }
  p.strip();
  return p;
}

Poly Poly::from_values(RingPtr r, ValueVec coeffs) {
  Poly p(std::move(r));
  p.c_ = std::move(coeffs);
  p.strip();
  return p;
}

bool Poly::is_monic() const {
  if (c_.empty()) return false;
  size_t lvl = ring_->depth();
  return ring_->v_is_zero(ring_->v_sub(c_.back(), ring_->v_one(lvl), lvl), lvl);
}

Elem Poly::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(c_.size())) return ring_->zero();
  return Elem(ring_, c_[i]);
}

Elem Poly::leading() const {
  if (c_.empty()) return ring_->zero();
  return Elem(ring_, c_.back());
}

Poly Poly::operator+(const Poly& o) const {
  size_t lvl = ring_->depth();
  Poly out(ring_);
  out.c_.resize(std::max(c_.size(), o.c_.size()), ring_->v_zero(lvl));
  for (size_t i = 0; i < out.c_.size(); ++i) {
    const Value* a = i < c_.size() ? &c_[i] : nullptr;
    const Value* b = i < o.c_.size() ? &o.c_[i] : nullptr;
    if (a && b) out.c_[i] = ring_->v_add(*a, *b, lvl);
    else if (a) out.c_[i] = *a;
    else out.c_[i] = *b;
  }
  out.strip();
  return out;
}

Poly Poly::operator-() const {
  size_t lvl = ring_->depth();
  Poly out(ring_);
  out.c_.reserve(c_.size());
  for (const auto& v : c_) out.c_.push_back(ring_->v_neg(v, lvl));
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  size_t lvl = ring_->depth();
  if (c_.empty() || o.c_.empty()) return Poly(ring_);
  Poly out(ring_);
  out.c_.assign(c_.size() + o.c_.size() - 1, ring_->v_zero(lvl));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (ring_->v_is_zero(c_[i], lvl)) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      out.c_[i + j] =
          ring_->v_add(out.c_[i + j], ring_->v_mul(c_[i], o.c_[j], lvl), lvl);
    }
  }
  out.strip();
  return out;
}

Poly Poly::scaled(const Elem& c) const {
  size_t lvl = ring_->depth();
  Poly out(ring_);
  out.c_.reserve(c_.size());
  for (const auto& v : c_) out.c_.push_back(ring_->v_mul(v, c.value(), lvl));
  out.strip();
  return out;
}

bool Poly::operator==(const Poly& o) const { return (*this - o).is_zero(); }

std::pair<Poly, Poly> Poly::divmod_monic(const Poly& divisor) const {
  if (!divisor.is_monic())
    fail(errc::non_monic_divisor, "division requires a monic divisor");
  size_t lvl = ring_->depth();
  long d = divisor.degree();
  Poly rem = *this;
  Poly quo(ring_);
  if (rem.degree() >= d)
    quo.c_.assign(rem.degree() - d + 1, ring_->v_zero(lvl));
  while (rem.degree() >= d) {
    long shift = rem.degree() - d;
    Value lead = rem.c_.back();
    quo.c_[shift] = ring_->v_add(quo.c_[shift], lead, lvl);
    for (long i = 0; i < d; ++i) {
      rem.c_[shift + i] = ring_->v_sub(
          rem.c_[shift + i], ring_->v_mul(lead, divisor.c_[i], lvl), lvl);
    }
    rem.c_.pop_back();
    rem.strip();
  }
  quo.strip();
  return {std::move(quo), std::move(rem)};
}

Poly Poly::derivative() const {
  size_t lvl = ring_->depth();
  Poly out(ring_);
  if (c_.size() <= 1) return out;
  out.c_.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) {
    out.c_.push_back(
        ring_->v_mul(ring_->v_from_int(Int(static_cast<unsigned long>(i)), lvl),
                     c_[i], lvl));
  }
  out.strip();
  return out;
}

Elem Poly::evaluate(const Elem& at) const {
  if (!at.ring()->same_as(*ring_))
    fail(errc::base_ring_mismatch, "evaluation point in a different ring");
  size_t lvl = ring_->depth();
  Value acc = ring_->v_zero(lvl);
  for (size_t i = c_.size(); i-- > 0;) {
    acc = ring_->v_add(ring_->v_mul(acc, at.value(), lvl), c_[i], lvl);
  }
  return Elem(ring_, acc);
}

Poly Poly::map_coeffs(const RingPtr& target,
                      const std::function<Elem(const Elem&)>& f) const {
  Poly out(target);
  out.c_.reserve(c_.size());
  for (const auto& v : c_) out.c_.push_back(f(Elem(ring_, v)).value());
  out.strip();
  return out;
}

Poly Poly::embed_into(const RingPtr& bigger) const {
  return map_coeffs(bigger, [&](const Elem& e) { return e.embed_into(bigger); });
}

std::string Poly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (ring_->v_is_zero(c_[i], ring_->depth())) continue;
    if (!first) os << " + ";
    first = false;
    os << Elem(ring_, c_[i]).str();
    if (i == 1) os << "*" << var;
    else if (i > 1) os << "*" << var << "^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// gcd machinery

namespace {

Poly make_monic(const Poly& f) {
  Elem lead = f.leading();
  auto inv = f.ring()->try_inverse(lead);
  if (!inv) fail(errc::not_invertible, "leading coefficient is not invertible");
  return f.scaled(*inv);
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly f = a, g = b;
  while (!g.is_zero()) {
    Poly gm = make_monic(g);
    Poly r = f.divmod_monic(gm).second;
    f = std::move(gm);
    g = std::move(r);
  }
  if (f.is_zero()) return f;
  return make_monic(f);
}

PolyXgcd poly_xgcd(const Poly& a, const Poly& b) {
  const RingPtr& r = a.ring();
  Poly f = a, g = b;
  Poly sf = Poly::one(r), tf = Poly::zero(r);
  Poly sg = Poly::zero(r), tg = Poly::one(r);
  while (!g.is_zero()) {
    Elem lead = g.leading();
    auto inv = r->try_inverse(lead);
    if (!inv) fail(errc::not_invertible, "leading coefficient is not invertible");
    Poly gm = g.scaled(*inv);
    Poly sgm = sg.scaled(*inv), tgm = tg.scaled(*inv);
    auto [q, rem] = f.divmod_monic(gm);
    Poly snew = sf - q * sgm, tnew = tf - q * tgm;
    f = std::move(gm);
    sf = std::move(sgm);
    tf = std::move(tgm);
    g = std::move(rem);
    sg = std::move(snew);
    tg = std::move(tnew);
  }
  if (f.is_zero()) return {f, Poly::zero(r), Poly::zero(r)};
  Elem inv = r->inverse(f.leading());
  return {f.scaled(inv), sf.scaled(inv), tf.scaled(inv)};
}

Poly poly_powmod(const Poly& base, const Int& e, const Poly& mod) {
  Poly acc = Poly::one(base.ring());
  acc = acc.divmod_monic(mod).second;
  Poly b = base.divmod_monic(mod).second;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return acc;
  for (size_t i = bits; i-- > 0;) {
    acc = (acc * acc).divmod_monic(mod).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = (acc * b).divmod_monic(mod).second;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// finite fields

bool is_finite_field(const RingPtr& r) {
  if (r->base().kind != BaseKind::prime_field) return false;
  for (size_t i = 0; i < r->steps().size(); ++i) {
    const auto& st = r->steps()[i];
    if (st.kind != ExtensionStep::Kind::monic_quotient) return false;
    RingPtr below = r->prefix(i);
    std::vector<Elem> coeffs;
    for (const auto& v : st.modulus) coeffs.push_back(Elem(below, v));
    Poly m = Poly::from_coeffs(below, coeffs);
    auto factors = factor_over_finite_field(m);
    if (factors.size() != 1 || factors[0].second != 1 ||
        factors[0].first.degree() != m.degree())
      return false;
  }
  return true;
}

Int finite_field_cardinality(const RingPtr& r) {
  Int q = r->base().p;
  for (const auto& st : r->steps()) {
    Int t;
    mpz_pow_ui(t.get_mpz_t(), q.get_mpz_t(), st.degree());
    q = t;
  }
  return q;
}

namespace {

struct FieldCtx {
  RingPtr ring;
  Int q;       // field cardinality
  Int p;       // characteristic
  size_t rank; // dimension over the prime field
  Rng rng{0x5eedULL};
};

Poly random_poly_below(FieldCtx& ctx, long deg_bound) {
  // Random polynomial of degree < deg_bound with random field coefficients.
  ValueVec coeffs;
  coeffs.reserve(deg_bound);
  size_t core = ctx.ring->core_level();
  for (long i = 0; i < deg_bound; ++i) {
    ValueVec coords;
    coords.reserve(ctx.rank);
    for (size_t j = 0; j < ctx.rank; ++j)
      coords.push_back(ctx.ring->v_from_int(ctx.rng.int_below(ctx.p), core));
    coeffs.push_back(ctx.ring->from_coords(coords));
  }
  return Poly::from_values(ctx.ring, std::move(coeffs));
}

void edf(FieldCtx& ctx, const Poly& g, long d, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const RingPtr& r = ctx.ring;
  while (true) {
    Poly rp = random_poly_below(ctx, g.degree());
    if (rp.degree() < 1 && rp.is_zero()) continue;
    Poly t(r);
    if (ctx.p == 2) {
      // Trace map over F_2: sum of 2^i-th powers.
      size_t e = mpz_sizeinbase(ctx.q.get_mpz_t(), 2) - 1;  // q = 2^e
      Poly acc = rp.divmod_monic(g).second;
      t = acc;
      for (size_t i = 1; i < e * static_cast<size_t>(d); ++i) {
        acc = (acc * acc).divmod_monic(g).second;
        t = t + acc;
      }
    } else {
      Int ex;
      mpz_pow_ui(ex.get_mpz_t(), ctx.q.get_mpz_t(), static_cast<unsigned long>(d));
      ex = (ex - 1) / 2;
      t = poly_powmod(rp, ex, g) - Poly::one(r);
    }
    Poly h = poly_gcd(t, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      edf(ctx, h, d, out);
      edf(ctx, g.divmod_monic(h).first, d, out);
      return;
    }
  }
}

// Distinct-degree then equal-degree factorization of a squarefree monic f.
std::vector<Poly> factor_squarefree(FieldCtx& ctx, Poly f) {
  std::vector<Poly> out;
  Poly h = Poly::x(ctx.ring).divmod_monic(f).second;
  long d = 0;
  while (f.degree() > 0) {
    ++d;
    if (f.degree() < 2 * d) {
      out.push_back(f);
      break;
    }
    h = poly_powmod(h, ctx.q, f);
    Poly g = poly_gcd(h - Poly::x(ctx.ring), f);
    if (g.degree() > 0) {
      edf(ctx, g, d, out);
      f = f.divmod_monic(g).first;
      h = h.divmod_monic(f).second;
    }
  }
  return out;
}

void factor_rec(FieldCtx& ctx, const Poly& f,
                std::vector<std::pair<Poly, unsigned>>& out, unsigned mult);

// Handles f with zero derivative: f(x) = w(x)^p after a coefficient Frobenius
// root, where only exponents divisible by p appear.
void factor_pth_power(FieldCtx& ctx, const Poly& f,
                      std::vector<std::pair<Poly, unsigned>>& out,
                      unsigned mult) {
  unsigned long p = ctx.p.get_ui();
  Int root_exp = ctx.q / ctx.p;  // a^(q/p) is the p-th root of a
  std::vector<Elem> coeffs;
  for (long i = 0; i * static_cast<long>(p) <= f.degree(); ++i) {
    Elem c = f.coeff(i * static_cast<long>(p));
    Elem acc = ctx.ring->one();
    size_t bits = mpz_sizeinbase(root_exp.get_mpz_t(), 2);
    for (size_t b = bits; b-- > 0;) {
      acc = acc * acc;
      if (mpz_tstbit(root_exp.get_mpz_t(), b)) acc = acc * c;
    }
    coeffs.push_back(acc);
  }
  Poly w = Poly::from_coeffs(ctx.ring, coeffs);
  factor_rec(ctx, w, out, mult * static_cast<unsigned>(p));
}

void factor_rec(FieldCtx& ctx, const Poly& f,
                std::vector<std::pair<Poly, unsigned>>& out, unsigned mult) {
  if (f.degree() <= 0) return;
  Poly fp = f.derivative();
  if (fp.is_zero()) {
    factor_pth_power(ctx, f, out, mult);
    return;
  }
  Poly g = poly_gcd(f, fp);
  Poly s = f.divmod_monic(g).first;  // squarefree part, misses p | multiplicity
  Poly work = f;
  for (const Poly& irr : factor_squarefree(ctx, s)) {
    unsigned m = 0;
    while (true) {
      auto [q, rem] = work.divmod_monic(irr);
      if (!rem.is_zero()) break;
      work = q;
      ++m;
    }
    out.emplace_back(irr, m * mult);
  }
  if (work.degree() > 0) factor_rec(ctx, work, out, mult);
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> factor_over_finite_field(const Poly& f) {
  const RingPtr& r = f.ring();
  if (!is_finite_field(r))
    fail(errc::not_finite_field, "factorization needs a finite field tower");
  if (f.is_zero() || !f.is_monic())
    fail(errc::non_monic, "factorization needs a monic polynomial");
  FieldCtx ctx{r, finite_field_cardinality(r), r->base().p, r->flatten_rank()};
  std::vector<std::pair<Poly, unsigned>> out;
  factor_rec(ctx, f, out, 1);
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree())
      return a.first.degree() < b.first.degree();
    const auto& av = a.first.values();
    const auto& bv = b.first.values();
    for (size_t i = 0; i < av.size(); ++i) {
      int c = r->v_cmp(av[i], bv[i], r->depth());
      if (c != 0) return c < 0;
    }
    return false;
  });
  return out;
}

}  // namespace aza
