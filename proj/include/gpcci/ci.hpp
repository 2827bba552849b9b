#pragma once

// Configuration-interaction Hamiltonians over determinant spaces, dense
// eigensolves and CI-vector basis changes.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gpcci/fock.hpp"
#include "gpcci/integrals.hpp"
#include "gpcci/rotation.hpp"

namespace gpcci {

/// Largest space the dense solver accepts.
inline constexpr std::size_t kMaxDenseDimension = 20000;
/// Eigenvalues closer than this (hartree) count as degenerate.
inline constexpr double kDegeneracyGap = 1e-10;

struct CIVector {
  ConfigurationSpace space;
  std::vector<double> coeffs;
  std::optional<double> energy;
  /// The eigenvalue belongs to a degenerate cluster; its occupation spectrum
  /// depends on the arbitrary choice inside that cluster.
  bool degenerate = false;

  double norm() const;
  /// Coefficient of `d`, zero when d is outside the space.
  double coefficient(const Determinant& d) const;
};

/// <bra|H|ket> by the Slater-Condon rules.
double matrix_element(const SpinOrbitalIntegrals& ints, const Determinant& bra,
                      const Determinant& ket);

Eigen::MatrixXd build_hamiltonian(const SpinOrbitalIntegrals& ints, const ConfigurationSpace& space);

/// The k lowest eigenpairs, energies ascending, each vector signed so its
/// largest-magnitude coefficient is positive.
std::vector<CIVector> solve_ground(const SpinOrbitalIntegrals& ints, const ConfigurationSpace& space,
                                   int k = 1);

/// <v|H|v> for a normalized vector.
double expectation(const SpinOrbitalIntegrals& ints, const CIVector& v);

/// Re-expands v in the rotated orbital basis: c'_K = sum_L det(U[K,L]) c_L.
/// The result lives on closure(v.space) and, for spin-blocked rotations, on
/// the rotation's target layout.
CIVector rotate_ci(const CIVector& v, const OrbitalRotation& rot);

/// Best single-determinant (unrestricted Hartree-Fock) energy consistent with
/// the space's particle and spin-sector constraints. Used as the mean-field
/// reference for correlation energies.
double mean_field_energy(const SpinOrbitalIntegrals& ints, const ConfigurationSpace& space);

}  // namespace gpcci
