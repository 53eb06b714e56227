#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace aza {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int ipow(const Int& b, std::uint64_t e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

/// Euclidean remainder in [0, m), m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int divexact(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Trial-division primality, desk scale.
bool is_prime(const Int& p);

/// Removes from |n| every prime factor shared with u. The result is 1
/// exactly when n divides some power of u.
Int strip_factors(Int n, const Int& u);

/// Least m with n | u^m. Requires strip_factors(n, u) == 1 and n != 0.
std::uint64_t division_exponent(const Int& n, const Int& u);

/// Inverse of a modulo m (m > 1). Returns false when gcd(a, m) != 1.
bool mod_inverse(const Int& a, const Int& m, Int& out);

}  // namespace aza
