#pragma once

#include <optional>

#include <Eigen/Dense>

#include "gpcci/fock.hpp"

namespace gpcci {

/// Orthogonal change of spin-orbital basis. Row k of U expresses new orbital k
/// in the old orbitals: phi'_k = sum_l U(k,l) phi_l.
struct OrbitalRotation {
  Eigen::MatrixXd U;
  /// Set when U never mixes orbitals of different spin.
  bool spin_blocked = false;
  /// Spin labels of the new orbitals (required when spin_blocked).
  std::optional<SpinOrbitalLayout> target_layout;

  int m() const noexcept { return static_cast<int>(U.rows()); }

  static OrbitalRotation identity(int m, const std::optional<SpinOrbitalLayout>& layout = std::nullopt);

  /// Throws non_orthogonal_rotation if |U^T U - 1| exceeds `tol`.
  void check_orthogonal(double tol = 1e-10) const;
  /// Throws sector_violation unless U only couples equal spins between
  /// `source` and target_layout.
  void check_spin_blocks(const SpinOrbitalLayout& source, double tol = 1e-12) const;

  /// Apply `this` first, then `next`.
  OrbitalRotation then(const OrbitalRotation& next) const;
};

}  // namespace gpcci
