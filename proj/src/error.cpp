#include "gpcci/error.hpp"

namespace gpcci {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_sector: return "invalid-sector";
    case Errc::width_overflow: return "width-overflow";
    case Errc::mismatched_width: return "mismatched-width";
    case Errc::mismatched_particle_number: return "mismatched-particle-number";
    case Errc::empty_space: return "empty-space";
    case Errc::parse_error: return "parse-error";
    case Errc::symmetry_violation: return "symmetry-violation";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::space_too_large: return "space-too-large";
    case Errc::eigensolver_failure: return "eigensolver-failure";
    case Errc::non_orthogonal_rotation: return "non-orthogonal-rotation";
    case Errc::sector_violation: return "sector-violation";
    case Errc::unnormalized_input: return "unnormalized-input";
    case Errc::spectral_out_of_range: return "spectral-out-of-range";
    case Errc::odd_m: return "odd-m";
    case Errc::unsupported_rank: return "unsupported-rank";
    case Errc::inconsistent_width: return "inconsistent-width";
    case Errc::duplicate_constraint: return "duplicate-constraint";
    case Errc::representability_violation: return "representability-violation";
    case Errc::unsorted_spectrum: return "unsorted-spectrum";
    case Errc::wrong_rank: return "wrong-rank";
    case Errc::not_spin_compensated: return "not-spin-compensated";
    case Errc::regime_mismatch: return "regime-mismatch";
    case Errc::no_survivors: return "no-survivors";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace gpcci
