#include "aza/scalar.hpp"

#include "aza/error.hpp"

namespace aza {

bool is_prime(const Int& p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  Int d = 3;
  while (d * d <= p) {
    if (p % d == 0) return false;
    d += 2;
  }
  return true;
}

Int strip_factors(Int n, const Int& u) {
  n = abs(n);
  if (n == 0) return n;
  Int v = abs(u);
  while (true) {
    Int g = gcd(n, v);
    if (g == 1) return n;
    while (n % g == 0) n = divexact(n, g);
  }
}

std::uint64_t division_exponent(const Int& n, const Int& u) {
  Int m = abs(n);
  if (m == 0) fail(errc::internal, "division_exponent of zero");
  Int pw = 1;
  for (std::uint64_t e = 0;; ++e) {
    if (pw % m == 0) return e;
    pw *= u;
    if (e > 64 && mpz_sizeinbase(pw.get_mpz_t(), 2) >
                      mpz_sizeinbase(m.get_mpz_t(), 2) + 64)
      fail(errc::internal, "division_exponent does not terminate");
  }
}

bool mod_inverse(const Int& a, const Int& m, Int& out) {
  return mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0;
}

}  // namespace aza
