#include <algorithm>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "aza/ring.hpp"

namespace aza {

namespace {

// ---------------------------------------------------------------------------
// rational Gaussian elimination

struct QSys {
  size_t rows = 0, cols = 0;
  std::vector<Rat> a;  // row major
};

// Reduces to row echelon form in place; returns pivot (row, col) pairs.
std::vector<std::pair<size_t, size_t>> q_echelon(QSys& s) {
  std::vector<std::pair<size_t, size_t>> pivots;
  size_t pr = 0;
  for (size_t c = 0; c < s.cols && pr < s.rows; ++c) {
    size_t sel = pr;
    while (sel < s.rows && s.a[sel * s.cols + c] == 0) ++sel;
    if (sel == s.rows) continue;
    if (sel != pr)
      for (size_t j = 0; j < s.cols; ++j)
        std::swap(s.a[sel * s.cols + j], s.a[pr * s.cols + j]);
    Rat inv = 1 / s.a[pr * s.cols + c];
    for (size_t j = c; j < s.cols; ++j) s.a[pr * s.cols + j] *= inv;
    for (size_t i = 0; i < s.rows; ++i) {
      if (i == pr) continue;
      Rat f = s.a[i * s.cols + c];
      if (f == 0) continue;
      for (size_t j = c; j < s.cols; ++j)
        s.a[i * s.cols + j] -= f * s.a[pr * s.cols + j];
    }
    pivots.emplace_back(pr, c);
    ++pr;
  }
  return pivots;
}

std::optional<std::vector<Rat>> q_solve(QSys s, const std::vector<Rat>& b) {
  size_t cols = s.cols;
  s.cols += 1;
  std::vector<Rat> aug;
  aug.reserve(s.rows * s.cols);
  for (size_t i = 0; i < s.rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug.push_back(s.a[i * cols + j]);
    aug.push_back(b[i]);
  }
  s.a = std::move(aug);
  auto pivots = q_echelon(s);
  std::vector<Rat> x(cols, Rat(0));
  for (auto [r, c] : pivots) {
    if (c == cols) return std::nullopt;  // 0 = 1 row
    x[c] = s.a[r * s.cols + cols];
  }
  return x;
}

std::vector<std::vector<Rat>> q_kernel(QSys s) {
  auto pivots = q_echelon(s);
  std::vector<bool> is_pivot(s.cols, false);
  for (auto [r, c] : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> gens;
  for (size_t c = 0; c < s.cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(s.cols, Rat(0));
    v[c] = 1;
    for (auto [r, pc] : pivots) v[pc] = -s.a[r * s.cols + c];
    gens.push_back(std::move(v));
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Gaussian elimination mod a prime

struct FpSys {
  Int p;
  size_t rows = 0, cols = 0;
  std::vector<Int> a;  // canonical in [0, p)
};

std::vector<std::pair<size_t, size_t>> fp_echelon(FpSys& s) {
  std::vector<std::pair<size_t, size_t>> pivots;
  size_t pr = 0;
  for (size_t c = 0; c < s.cols && pr < s.rows; ++c) {
    size_t sel = pr;
    while (sel < s.rows && s.a[sel * s.cols + c] == 0) ++sel;
    if (sel == s.rows) continue;
    if (sel != pr)
      for (size_t j = 0; j < s.cols; ++j)
        std::swap(s.a[sel * s.cols + j], s.a[pr * s.cols + j]);
    Int inv;
    mod_inverse(s.a[pr * s.cols + c], s.p, inv);
    for (size_t j = c; j < s.cols; ++j)
      s.a[pr * s.cols + j] = mod_floor(s.a[pr * s.cols + j] * inv, s.p);
    for (size_t i = 0; i < s.rows; ++i) {
      if (i == pr) continue;
      Int f = s.a[i * s.cols + c];
      if (f == 0) continue;
      for (size_t j = c; j < s.cols; ++j)
        s.a[i * s.cols + j] =
            mod_floor(s.a[i * s.cols + j] - f * s.a[pr * s.cols + j], s.p);
    }
    pivots.emplace_back(pr, c);
    ++pr;
  }
  return pivots;
}

std::optional<std::vector<Int>> fp_solve(FpSys s, const std::vector<Int>& b) {
  size_t cols = s.cols;
  s.cols += 1;
  std::vector<Int> aug;
  aug.reserve(s.rows * s.cols);
  for (size_t i = 0; i < s.rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug.push_back(s.a[i * cols + j]);
    aug.push_back(mod_floor(b[i], s.p));
  }
  s.a = std::move(aug);
  auto pivots = fp_echelon(s);
  std::vector<Int> x(cols, Int(0));
  for (auto [r, c] : pivots) {
    if (c == cols) return std::nullopt;
    x[c] = s.a[r * s.cols + cols];
  }
  return x;
}

std::vector<std::vector<Int>> fp_kernel(FpSys s) {
  auto pivots = fp_echelon(s);
  std::vector<bool> is_pivot(s.cols, false);
  for (auto [r, c] : pivots) is_pivot[c] = true;
  std::vector<std::vector<Int>> gens;
  for (size_t c = 0; c < s.cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Int> v(s.cols, Int(0));
    v[c] = 1;
    for (auto [r, pc] : pivots)
      v[pc] = mod_floor(-s.a[r * s.cols + c], s.p);
    gens.push_back(std::move(v));
  }
  return gens;
}

// ---------------------------------------------------------------------------
// integer column Hermite form

struct Hnf {
  size_t rows = 0, cols = 0;
  std::vector<Int> h;  // rows x cols, A * U = H
  std::vector<Int> u;  // cols x cols unimodular
  std::vector<std::pair<size_t, size_t>> pivots;  // (row, col), increasing
};

Hnf hnf_decompose(size_t rows, size_t cols, std::vector<Int> a) {
  Hnf f;
  f.rows = rows;
  f.cols = cols;
  f.h = std::move(a);
  f.u.assign(cols * cols, Int(0));
  for (size_t i = 0; i < cols; ++i) f.u[i * cols + i] = 1;

  auto col_sub = [&](size_t dst, size_t src, const Int& q) {
    if (q == 0) return;
    for (size_t r = 0; r < rows; ++r)
      f.h[r * cols + dst] -= q * f.h[r * cols + src];
    for (size_t r = 0; r < cols; ++r)
      f.u[r * cols + dst] -= q * f.u[r * cols + src];
  };
  auto col_neg = [&](size_t c) {
    for (size_t r = 0; r < rows; ++r) f.h[r * cols + c] = -f.h[r * cols + c];
    for (size_t r = 0; r < cols; ++r) f.u[r * cols + c] = -f.u[r * cols + c];
  };
  auto col_swap = [&](size_t c1, size_t c2) {
    if (c1 == c2) return;
    for (size_t r = 0; r < rows; ++r)
      std::swap(f.h[r * cols + c1], f.h[r * cols + c2]);
    for (size_t r = 0; r < cols; ++r)
      std::swap(f.u[r * cols + c1], f.u[r * cols + c2]);
  };

  size_t pc = 0;
  for (size_t r = 0; r < rows && pc < cols; ++r) {
    while (true) {
      size_t best = cols;
      for (size_t j = pc; j < cols; ++j) {
        const Int& v = f.h[r * cols + j];
        if (v == 0) continue;
        if (best == cols ||
            mpz_cmpabs(v.get_mpz_t(), f.h[r * cols + best].get_mpz_t()) < 0)
          best = j;
      }
      if (best == cols) break;  // row has no pivot
      if (f.h[r * cols + best] < 0) col_neg(best);
      bool clean = true;
      for (size_t j = pc; j < cols; ++j) {
        if (j == best || f.h[r * cols + j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), f.h[r * cols + j].get_mpz_t(),
                   f.h[r * cols + best].get_mpz_t());
        col_sub(j, best, q);
        if (f.h[r * cols + j] != 0) clean = false;
      }
      if (clean) {
        col_swap(best, pc);
        const Int& piv = f.h[r * cols + pc];
        for (size_t j = 0; j < pc; ++j) {
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), f.h[r * cols + j].get_mpz_t(),
                     piv.get_mpz_t());
          col_sub(j, pc, q);
        }
        f.pivots.emplace_back(r, pc);
        ++pc;
        break;
      }
    }
  }
  return f;
}

std::optional<std::vector<Int>> hnf_solve(const Hnf& f, const std::vector<Int>& b) {
  std::vector<Int> y(f.cols, Int(0));
  size_t pi = 0;
  for (size_t r = 0; r < f.rows; ++r) {
    Int resid = b[r];
    size_t upto = (pi < f.pivots.size() && f.pivots[pi].first == r)
                      ? f.pivots[pi].second
                      : (pi == 0 ? 0 : f.pivots[pi - 1].second + 1);
    for (size_t j = 0; j < upto; ++j) resid -= f.h[r * f.cols + j] * y[j];
    if (pi < f.pivots.size() && f.pivots[pi].first == r) {
      size_t c = f.pivots[pi].second;
      const Int& piv = f.h[r * f.cols + c];
      if (!mpz_divisible_p(resid.get_mpz_t(), piv.get_mpz_t()))
        return std::nullopt;
      y[c] = divexact(resid, piv);
      ++pi;
    } else {
      if (resid != 0) return std::nullopt;
    }
  }
  std::vector<Int> x(f.cols, Int(0));
  for (size_t i = 0; i < f.cols; ++i) {
    if (y[i] == 0) continue;
    for (size_t r = 0; r < f.cols; ++r) x[r] += f.u[r * f.cols + i] * y[i];
  }
  return x;
}

std::vector<std::vector<Int>> hnf_kernel(const Hnf& f) {
  size_t rank = f.pivots.size();
  std::vector<std::vector<Int>> gens;
  for (size_t c = rank; c < f.cols; ++c) {
    std::vector<Int> v(f.cols);
    for (size_t r = 0; r < f.cols; ++r) v[r] = f.u[r * f.cols + c];
    gens.push_back(std::move(v));
  }
  return gens;
}

Int bareiss_det(size_t n, std::vector<Int> a) {
  if (n == 0) return Int(1);
  int sign = 1;
  Int prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      size_t r = k + 1;
      while (r < n && a[r * n + k] == 0) ++r;
      if (r == n) return Int(0);
      for (size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i * n + j] =
            divexact(a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j],
                     prev);
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  Int d = a[n * n - 1];
  return sign < 0 ? Int(-d) : d;
}

// ---------------------------------------------------------------------------
// scalar core context: a base ring under leading localize steps

struct CoreCtx {
  RingPtr core;
  size_t L = 0;  // number of localize steps
  BaseKind kind = BaseKind::integers;
  Int pk;
  // Scalar numerator of each localization unit and its exponents over the
  // earlier units: u_t = a_t / prod_{r<t} a_r^{g[t][r]}.
  std::vector<Value> a_scalar;
  std::vector<std::vector<long>> g;
};

// Value at `level` of the core as scalar / prod a_r^{exps[r]}.
std::pair<Value, std::vector<long>> scalarize(const CoreCtx& ctx, const Value& v,
                                              size_t level) {
  if (level == 0) return {v, {}};
  const auto& lp = v.as_loc();
  auto [s, f] = scalarize(ctx, *lp.num, level - 1);
  f.resize(level, 0);
  long e = static_cast<long>(lp.exp);
  for (size_t r = 0; r + 1 < level; ++r) f[r] -= e * ctx.g[level - 1][r];
  f[level - 1] += e;
  return {std::move(s), std::move(f)};
}

CoreCtx build_core_ctx(const RingPtr& core) {
  CoreCtx ctx;
  ctx.core = core;
  ctx.L = core->depth();
  ctx.kind = core->base().kind;
  ctx.pk = core->base().pk;
  for (size_t t = 0; t < ctx.L; ++t) {
    auto [s, f] = scalarize(ctx, core->steps()[t].unit, t);
    f.resize(t, 0);
    ctx.a_scalar.push_back(std::move(s));
    ctx.g.push_back(std::move(f));
  }
  return ctx;
}

Rat rat_signed_pow(const Rat& a, long e) {
  if (e == 0) return Rat(1);
  Rat base = e > 0 ? a : Rat(1) / a;
  Rat r(1);
  for (long i = 0; i < std::labs(e); ++i) r *= base;
  return r;
}

// Entry as an exact rational (rationals base only).
Rat entry_as_rat(const CoreCtx& ctx, const Value& v) {
  auto [s, f] = scalarize(ctx, v, ctx.L);
  Rat r = s.as_rat();
  for (size_t t = 0; t < ctx.L; ++t)
    r *= rat_signed_pow(ctx.a_scalar[t].as_rat(), -f[t]);
  return r;
}

// Entry as a canonical residue mod p^k (prime power bases; units invertible).
Int entry_as_residue(const CoreCtx& ctx, const Value& v) {
  auto [s, f] = scalarize(ctx, v, ctx.L);
  Int r = mod_floor(s.as_int(), ctx.pk);
  for (size_t t = 0; t < ctx.L; ++t) {
    if (f[t] == 0) continue;
    Int base = ctx.a_scalar[t].as_int();
    if (f[t] > 0) {
      Int inv;
      if (!mod_inverse(base, ctx.pk, inv))
        fail(errc::internal, "localization unit is not invertible modulo p^k");
      base = inv;
    }
    r = mod_floor(r * mod_floor(ipow(base, std::labs(f[t])), ctx.pk), ctx.pk);
  }
  return r;
}

// Core value of u_t^{-1}, embedded to the full core depth.
Value unit_inverse_value(const CoreCtx& ctx, size_t t) {
  Value inv(LocPart{std::make_shared<Value>(ctx.core->v_one(t)), 1});
  return ctx.core->v_embed(std::move(inv), t + 1, ctx.L);
}

Value scalar_unit_power(const CoreCtx& ctx, size_t t, long e);

// Core value of a_t^{-1}: 1/a_t = u_t^{-1} * prod_{r<t} a_r^{-g[t][r]}.
Value numerator_inverse_value(const CoreCtx& ctx, size_t t) {
  Value acc = unit_inverse_value(ctx, t);
  for (size_t r = 0; r < t; ++r)
    acc = ctx.core->v_mul(acc, scalar_unit_power(ctx, r, -ctx.g[t][r]), ctx.L);
  return acc;
}

// Core value of a_t^e for signed e.
Value scalar_unit_power(const CoreCtx& ctx, size_t t, long e) {
  if (e == 0) return ctx.core->v_one(ctx.L);
  if (e > 0) {
    Int s = ctx.a_scalar[t].as_int();
    return ctx.core->v_embed(Value(ipow(s, static_cast<std::uint64_t>(e))), 0,
                             ctx.L);
  }
  return ctx.core->v_pow(numerator_inverse_value(ctx, t),
                         static_cast<std::uint64_t>(-e), ctx.L);
}

// Integer base with localizations: clear each row to integer entries by a
// unit row factor. Returns the cleared matrix and the per-row exponents.
struct ClearedRows {
  std::vector<Int> a;                       // rows x cols integers
  std::vector<std::vector<long>> row_exp;   // factor = prod a_r^{row_exp[i][r]}
};

ClearedRows clear_rows(const CoreCtx& ctx, const std::vector<Value>& m,
                       size_t rows, size_t cols) {
  ClearedRows out;
  out.a.assign(rows * cols, Int(0));
  out.row_exp.assign(rows, std::vector<long>(ctx.L, 0));
  std::vector<Value> snum(cols);
  std::vector<std::vector<long>> sexp(cols);
  for (size_t i = 0; i < rows; ++i) {
    std::vector<long> mx(ctx.L, 0);
    bool any = false;
    for (size_t j = 0; j < cols; ++j) {
      auto [s, f] = scalarize(ctx, m[i * cols + j], ctx.L);
      snum[j] = std::move(s);
      sexp[j] = std::move(f);
      for (size_t t = 0; t < ctx.L; ++t)
        mx[t] = any ? std::max(mx[t], sexp[j][t]) : sexp[j][t];
      any = true;
    }
    out.row_exp[i] = mx;
    for (size_t j = 0; j < cols; ++j) {
      Int v = snum[j].as_int();
      for (size_t t = 0; t < ctx.L; ++t) {
        long e = mx[t] - sexp[j][t];
        if (e > 0) v *= ipow(ctx.a_scalar[t].as_int(), static_cast<std::uint64_t>(e));
      }
      out.a[i * cols + j] = v;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// core solvers

Value embed_scalar(const CoreCtx& ctx, Value s) {
  return ctx.core->v_embed(std::move(s), 0, ctx.L);
}

std::optional<std::vector<Value>> core_solve(const RingPtr& core,
                                             const std::vector<Value>& m,
                                             size_t rows, size_t cols,
                                             const std::vector<Value>& b) {
  CoreCtx ctx = build_core_ctx(core);
  if (cols == 0) {
    for (size_t i = 0; i < rows; ++i)
      if (!core->v_is_zero(b[i], ctx.L)) return std::nullopt;
    return std::vector<Value>{};
  }
  switch (ctx.kind) {
    case BaseKind::rationals: {
      QSys s{rows, cols, {}};
      s.a.reserve(rows * cols);
      for (const auto& v : m) s.a.push_back(entry_as_rat(ctx, v));
      std::vector<Rat> rhs;
      rhs.reserve(rows);
      for (const auto& v : b) rhs.push_back(entry_as_rat(ctx, v));
      auto x = q_solve(std::move(s), rhs);
      if (!x) return std::nullopt;
      std::vector<Value> out;
      out.reserve(cols);
      for (auto& q : *x) out.push_back(embed_scalar(ctx, Value(std::move(q))));
      return out;
    }
    case BaseKind::prime_field: {
      FpSys s{ctx.pk, rows, cols, {}};
      s.a.reserve(rows * cols);
      for (const auto& v : m) s.a.push_back(entry_as_residue(ctx, v));
      std::vector<Int> rhs;
      rhs.reserve(rows);
      for (const auto& v : b) rhs.push_back(entry_as_residue(ctx, v));
      auto x = fp_solve(std::move(s), rhs);
      if (!x) return std::nullopt;
      std::vector<Value> out;
      out.reserve(cols);
      for (auto& z : *x) out.push_back(embed_scalar(ctx, Value(std::move(z))));
      return out;
    }
    case BaseKind::zmod_prime_power: {
      // Integer system [A | p^k I] y = b; x = leading cols of y mod p^k.
      std::vector<Int> aug(rows * (cols + rows), Int(0));
      for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j)
          aug[i * (cols + rows) + j] = entry_as_residue(ctx, m[i * cols + j]);
        aug[i * (cols + rows) + cols + i] = ctx.pk;
      }
      auto f = hnf_decompose(rows, cols + rows, std::move(aug));
      std::vector<Int> rhs;
      rhs.reserve(rows);
      for (const auto& v : b) rhs.push_back(entry_as_residue(ctx, v));
      auto y = hnf_solve(f, rhs);
      if (!y) return std::nullopt;
      std::vector<Value> out;
      out.reserve(cols);
      for (size_t j = 0; j < cols; ++j)
        out.push_back(embed_scalar(ctx, Value(mod_floor((*y)[j], ctx.pk))));
      return out;
    }
    case BaseKind::integers: {
      auto cleared = clear_rows(ctx, m, rows, cols);
      std::vector<Int> rhs0(rows);
      for (size_t i = 0; i < rows; ++i) {
        auto [s, f] = scalarize(ctx, b[i], ctx.L);
        Int v = s.as_int();
        bool ok = true;
        for (size_t t = 0; t < ctx.L; ++t) {
          long e = cleared.row_exp[i][t] - f[t];
          if (e < 0) {
            // b has a deeper denominator than the row: raise the row factor.
            ok = false;
            break;
          }
          if (e > 0) v *= ipow(ctx.a_scalar[t].as_int(), static_cast<std::uint64_t>(e));
        }
        if (!ok) {
          // Re-clear this row including the right-hand side exponents.
          std::vector<long> mx = cleared.row_exp[i];
          for (size_t t = 0; t < ctx.L; ++t) mx[t] = std::max(mx[t], f[t]);
          for (size_t j = 0; j < cols; ++j) {
            auto [sj, fj] = scalarize(ctx, m[i * cols + j], ctx.L);
            Int vj = sj.as_int();
            for (size_t t = 0; t < ctx.L; ++t) {
              long e = mx[t] - fj[t];
              if (e > 0)
                vj *= ipow(ctx.a_scalar[t].as_int(), static_cast<std::uint64_t>(e));
            }
            cleared.a[i * cols + j] = vj;
          }
          v = s.as_int();
          for (size_t t = 0; t < ctx.L; ++t) {
            long e = mx[t] - f[t];
            if (e > 0) v *= ipow(ctx.a_scalar[t].as_int(), static_cast<std::uint64_t>(e));
          }
          cleared.row_exp[i] = mx;
        }
        rhs0[i] = v;
      }
      auto f = hnf_decompose(rows, cols, std::move(cleared.a));
      // Saturation bound from the torsion exponent of the cokernel.
      Int D(1);
      for (auto [r, c] : f.pivots) D *= f.h[r * f.cols + c];
      std::uint64_t bound =
          ctx.L == 0 ? 0 : mpz_sizeinbase(D.get_mpz_t(), 2) + 1;
      Int ucomb(1);
      for (size_t t = 0; t < ctx.L; ++t) ucomb *= ctx.a_scalar[t].as_int();
      std::vector<Int> rhs = rhs0;
      for (std::uint64_t mexp = 0; mexp <= bound; ++mexp) {
        auto y = hnf_solve(f, rhs);
        if (y) {
          Value w = core->v_one(ctx.L);
          for (size_t t = 0; t < ctx.L; ++t)
            w = core->v_mul(w, core->v_pow(numerator_inverse_value(ctx, t), mexp, ctx.L),
                            ctx.L);
          std::vector<Value> out;
          out.reserve(cols);
          for (size_t j = 0; j < cols; ++j)
            out.push_back(core->v_mul(embed_scalar(ctx, Value((*y)[j])), w, ctx.L));
          return out;
        }
        if (mexp < bound)
          for (auto& v : rhs) v *= ucomb;
      }
      return std::nullopt;
    }
  }
  fail(errc::internal, "unreachable core kind");
}

std::vector<std::vector<Value>> core_kernel(const RingPtr& core,
                                            const std::vector<Value>& m,
                                            size_t rows, size_t cols) {
  CoreCtx ctx = build_core_ctx(core);
  std::vector<std::vector<Value>> out;
  if (cols == 0) return out;
  auto wrap_ints = [&](const std::vector<std::vector<Int>>& gens) {
    for (const auto& gv : gens) {
      bool all_zero = true;
      std::vector<Value> v;
      v.reserve(cols);
      for (const auto& z : gv) {
        if (z != 0) all_zero = false;
        v.push_back(embed_scalar(ctx, Value(z)));
      }
      if (!all_zero) out.push_back(std::move(v));
    }
  };
  switch (ctx.kind) {
    case BaseKind::rationals: {
      QSys s{rows, cols, {}};
      s.a.reserve(rows * cols);
      for (const auto& v : m) s.a.push_back(entry_as_rat(ctx, v));
      for (auto& gv : q_kernel(std::move(s))) {
        std::vector<Value> v;
        v.reserve(cols);
        for (auto& q : gv) v.push_back(embed_scalar(ctx, Value(std::move(q))));
        out.push_back(std::move(v));
      }
      return out;
    }
    case BaseKind::prime_field: {
      FpSys s{ctx.pk, rows, cols, {}};
      s.a.reserve(rows * cols);
      for (const auto& v : m) s.a.push_back(entry_as_residue(ctx, v));
      wrap_ints(fp_kernel(std::move(s)));
      return out;
    }
    case BaseKind::zmod_prime_power: {
      std::vector<Int> aug(rows * (cols + rows), Int(0));
      for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j)
          aug[i * (cols + rows) + j] = entry_as_residue(ctx, m[i * cols + j]);
        aug[i * (cols + rows) + cols + i] = ctx.pk;
      }
      auto f = hnf_decompose(rows, cols + rows, std::move(aug));
      std::vector<std::vector<Int>> gens;
      for (auto& gv : hnf_kernel(f)) {
        std::vector<Int> head(cols);
        for (size_t j = 0; j < cols; ++j) head[j] = mod_floor(gv[j], ctx.pk);
        gens.push_back(std::move(head));
      }
      // p^k e_j lies in the projection automatically; reduced generators
      // that vanish mod p^k are dropped inside wrap_ints.
      wrap_ints(gens);
      return out;
    }
    case BaseKind::integers: {
      auto cleared = clear_rows(ctx, m, rows, cols);
      auto f = hnf_decompose(rows, cols, std::move(cleared.a));
      wrap_ints(hnf_kernel(f));
      return out;
    }
  }
  fail(errc::internal, "unreachable core kind");
}

Value core_det(const RingPtr& core, const std::vector<Value>& m, size_t n) {
  CoreCtx ctx = build_core_ctx(core);
  if (n == 0) return core->v_one(ctx.L);
  switch (ctx.kind) {
    case BaseKind::rationals: {
      // Fraction-free after clearing a common denominator would also work;
      // direct expansion via echelon keeps this short.
      QSys s{n, n, {}};
      s.a.reserve(n * n);
      for (const auto& v : m) s.a.push_back(entry_as_rat(ctx, v));
      Rat d(1);
      // Gaussian determinant with row swaps.
      for (size_t k = 0; k < n; ++k) {
        size_t sel = k;
        while (sel < n && s.a[sel * n + k] == 0) ++sel;
        if (sel == n) return embed_scalar(ctx, Value(Rat(0)));
        if (sel != k) {
          for (size_t j = 0; j < n; ++j) std::swap(s.a[sel * n + j], s.a[k * n + j]);
          d = -d;
        }
        d *= s.a[k * n + k];
        Rat inv = 1 / s.a[k * n + k];
        for (size_t i = k + 1; i < n; ++i) {
          Rat fax = s.a[i * n + k] * inv;
          if (fax == 0) continue;
          for (size_t j = k; j < n; ++j) s.a[i * n + j] -= fax * s.a[k * n + j];
        }
      }
      return embed_scalar(ctx, Value(std::move(d)));
    }
    case BaseKind::prime_field:
    case BaseKind::zmod_prime_power: {
      std::vector<Int> a;
      a.reserve(n * n);
      for (const auto& v : m) a.push_back(entry_as_residue(ctx, v));
      Int d = mod_floor(bareiss_det(n, std::move(a)), ctx.pk);
      return embed_scalar(ctx, Value(std::move(d)));
    }
    case BaseKind::integers: {
      auto cleared = clear_rows(ctx, m, n, n);
      Int d = bareiss_det(n, std::move(cleared.a));
      Value acc = embed_scalar(ctx, Value(std::move(d)));
      for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < ctx.L; ++t)
          acc = core->v_mul(acc, scalar_unit_power(ctx, t, -cleared.row_exp[i][t]),
                            ctx.L);
      return acc;
    }
  }
  fail(errc::internal, "unreachable core kind");
}

// ---------------------------------------------------------------------------
// division-free determinant for quotient towers

Value berkowitz_det(const RingPtr& ring, const std::vector<Value>& a, size_t n) {
  size_t lvl = ring->depth();
  auto at = [&](size_t i, size_t j) -> const Value& { return a[i * n + j]; };
  std::vector<Value> V{ring->v_one(lvl)};
  for (size_t r = 1; r <= n; ++r) {
    std::vector<Value> col;
    col.reserve(r + 1);
    col.push_back(ring->v_one(lvl));
    col.push_back(ring->v_neg(at(r - 1, r - 1), lvl));
    if (r >= 2) {
      std::vector<Value> w(r - 1);
      for (size_t i = 0; i < r - 1; ++i) w[i] = at(i, r - 1);
      for (size_t k = 1; k + 1 <= r; ++k) {
        // s_k = R . B^{k-1} . C
        Value s = ring->v_zero(lvl);
        for (size_t i = 0; i < r - 1; ++i)
          s = ring->v_add(s, ring->v_mul(at(r - 1, i), w[i], lvl), lvl);
        col.push_back(ring->v_neg(s, lvl));
        if (k + 1 <= r - 1) {
          std::vector<Value> w2(r - 1);
          for (size_t i = 0; i < r - 1; ++i) {
            Value acc = ring->v_zero(lvl);
            for (size_t j = 0; j < r - 1; ++j)
              acc = ring->v_add(acc, ring->v_mul(at(i, j), w[j], lvl), lvl);
            w2[i] = std::move(acc);
          }
          w = std::move(w2);
        }
      }
    }
    std::vector<Value> Vn(r + 1, ring->v_zero(lvl));
    for (size_t i = 0; i <= r; ++i) {
      for (size_t j = 0; j < V.size(); ++j) {
        if (i < j || i - j >= col.size()) continue;
        Vn[i] = ring->v_add(Vn[i], ring->v_mul(col[i - j], V[j], lvl), lvl);
      }
    }
    V = std::move(Vn);
  }
  Value d = V[n];
  if (n % 2 == 1) d = ring->v_neg(d, lvl);
  return d;
}

void validate_entries(const RingPtr& ring, const std::vector<Elem>& xs) {
  for (const auto& x : xs)
    if (!x.ring() || !x.ring()->same_as(*ring))
      fail(errc::base_ring_mismatch, "matrix entry lives in a different ring");
}

}  // namespace

// ---------------------------------------------------------------------------
// public entry points

std::optional<std::vector<Elem>> solve_linear(const RingPtr& ring,
                                              const std::vector<Elem>& A,
                                              size_t rows, size_t cols,
                                              const std::vector<Elem>& b) {
  if (A.size() != rows * cols || b.size() != rows)
    fail(errc::internal, "linear system dimensions do not match");
  validate_entries(ring, A);
  validate_entries(ring, b);
  if (!ring->flatten_supported())
    fail(errc::unsupported_ring,
         "linear algebra needs localizations below quotients");
  size_t N = ring->flatten_rank();
  RingPtr core = ring->core_ring();
  size_t R = rows * N, C = cols * N;
  std::vector<Value> M(R * C, core->v_zero(core->depth()));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) {
      ValueVec mm = ring->mult_matrix(A[i * cols + j].value());
      for (size_t r = 0; r < N; ++r)
        for (size_t c = 0; c < N; ++c)
          M[(i * N + r) * C + (j * N + c)] = std::move(mm[r * N + c]);
    }
  }
  std::vector<Value> rhs;
  rhs.reserve(R);
  for (size_t i = 0; i < rows; ++i) {
    ValueVec bc = ring->to_coords(b[i].value());
    for (auto& v : bc) rhs.push_back(std::move(v));
  }
  auto sol = core_solve(core, M, R, C, rhs);
  if (!sol) return std::nullopt;
  std::vector<Elem> out;
  out.reserve(cols);
  for (size_t j = 0; j < cols; ++j) {
    ValueVec coords(sol->begin() + j * N, sol->begin() + (j + 1) * N);
    out.push_back(Elem(ring, ring->from_coords(coords)));
  }
  return out;
}

std::vector<std::vector<Elem>> kernel_generators(const RingPtr& ring,
                                                 const std::vector<Elem>& A,
                                                 size_t rows, size_t cols) {
  if (A.size() != rows * cols)
    fail(errc::internal, "linear system dimensions do not match");
  validate_entries(ring, A);
  if (!ring->flatten_supported())
    fail(errc::unsupported_ring,
         "linear algebra needs localizations below quotients");
  size_t N = ring->flatten_rank();
  RingPtr core = ring->core_ring();
  size_t R = rows * N, C = cols * N;
  std::vector<Value> M(R * C, core->v_zero(core->depth()));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) {
      ValueVec mm = ring->mult_matrix(A[i * cols + j].value());
      for (size_t r = 0; r < N; ++r)
        for (size_t c = 0; c < N; ++c)
          M[(i * N + r) * C + (j * N + c)] = std::move(mm[r * N + c]);
    }
  }
  std::vector<std::vector<Elem>> out;
  for (auto& gen : core_kernel(core, M, R, C)) {
    std::vector<Elem> v;
    v.reserve(cols);
    bool nonzero = false;
    for (size_t j = 0; j < cols; ++j) {
      ValueVec coords(gen.begin() + j * N, gen.begin() + (j + 1) * N);
      Elem e(ring, ring->from_coords(coords));
      if (!nonzero && !e.is_zero()) nonzero = true;
      v.push_back(std::move(e));
    }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

Elem det(const RingPtr& ring, const std::vector<Elem>& A, size_t n) {
  if (A.size() != n * n) fail(errc::internal, "determinant needs a square matrix");
  validate_entries(ring, A);
  if (n == 0) return ring->one();
  std::vector<Value> vals;
  vals.reserve(n * n);
  for (const auto& e : A) vals.push_back(e.value());
  if (ring->depth() == ring->core_level())
    return Elem(ring, core_det(ring, vals, n));
  return Elem(ring, berkowitz_det(ring, vals, n));
}

UnitIdealWitness unit_ideal_test(const std::vector<Elem>& gens) {
  if (gens.empty()) return {false, {}};
  RingPtr ring = gens[0].ring();
  auto sol = solve_linear(ring, gens, 1, gens.size(), {ring->one()});
  if (!sol) return {false, {}};
  return {true, std::move(*sol)};
}

std::optional<std::vector<Elem>> ideal_membership(const Elem& target,
                                                  const std::vector<Elem>& gens) {
  if (gens.empty()) {
    if (target.is_zero()) return std::vector<Elem>{};
    return std::nullopt;
  }
  RingPtr ring = gens[0].ring();
  return solve_linear(ring, gens, 1, gens.size(), {target});
}

}  // namespace aza
