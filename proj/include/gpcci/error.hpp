#pragma once

#include <stdexcept>
#include <string>

namespace gpcci {

enum class Errc {
  invalid_argument,
  invalid_sector,
  width_overflow,
  mismatched_width,
  mismatched_particle_number,
  empty_space,
  parse_error,
  symmetry_violation,
  dimension_mismatch,
  space_too_large,
  eigensolver_failure,
  non_orthogonal_rotation,
  sector_violation,
  unnormalized_input,
  spectral_out_of_range,
  odd_m,
  unsupported_rank,
  inconsistent_width,
  duplicate_constraint,
  representability_violation,
  unsorted_spectrum,
  wrong_rank,
  not_spin_compensated,
  regime_mismatch,
  no_survivors,
  io_error,
};

const char* to_string(Errc code) noexcept;

/// Library-wide exception; the code identifies the failure class so callers
/// (the CLI in particular) can map it to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gpcci
