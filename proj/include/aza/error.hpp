#pragma once

#include <stdexcept>
#include <string>

namespace aza {

enum class errc {
  bad_input,
  non_prime_modulus,
  non_monic_modulus,
  zero_localization,
  not_invertible,
  unsupported_base,
  unsupported_ring,
  not_local,
  non_monic_divisor,
  not_finite_field,
  non_monic,
  coefficient_not_in_base,
  rank_cap_exceeded,
  not_simple_root,
  no_residual_root,
  not_unramifiable,
  not_residually_idempotent,
  not_coprime,
  residue_mismatch,
  base_ring_mismatch,
  not_azumaya,
  randomness_exhausted,
  not_automorphism,
  unsupported_family,
  internal,
};

const char* errc_name(errc c);

/// Library failure. `code` identifies the failure class, `what()` names the
/// offending value or field.
class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  errc code;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) {
  throw error(c, msg);
}

}  // namespace aza
