#pragma once

// One-body reduced density matrices, natural occupation spectra and simple
// spectral diagnostics.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gpcci/ci.hpp"
#include "gpcci/rotation.hpp"

namespace gpcci {

inline constexpr double kDefaultTieTolerance = 1e-8;
/// Eigenvalues within this distance outside [0,1] are clamped.
inline constexpr double kClampWindow = 1e-10;

struct OneRDM {
  /// rho(p,q) = <Psi| a+_q a_p |Psi>
  Eigen::MatrixXd rho;
  int N = 0;
  bool spin_blocked = false;
  std::optional<SpinOrbitalLayout> layout;

  int m() const noexcept { return static_cast<int>(rho.rows()); }
  double trace() const { return rho.trace(); }
  /// Trace over the spin-orbitals of one spin (requires a layout).
  double spin_trace(Spin s) const;
};

struct OccupationSpectrum {
  /// Occupations sorted in decreasing order.
  std::vector<double> n;
  int N = 0;
  /// Row k is the k-th natural orbital in the original basis.
  OrbitalRotation natural_rotation;
  /// 0-based index groups whose occupations agree within the tie tolerance.
  std::vector<std::vector<int>> degeneracy_groups;

  int m() const noexcept { return static_cast<int>(n.size()); }
  double trace() const;

  /// Spectrum from raw occupations (e.g. published tables), sorted and grouped
  /// but otherwise unchecked; the rotation is the identity permutation that
  /// sorts them.
  static OccupationSpectrum from_occupations(std::vector<double> n, int N,
                                             double tie_tolerance = kDefaultTieTolerance);
};

OneRDM one_rdm(const CIVector& v);

OccupationSpectrum natural_spectrum(const OneRDM& rho, double tie_tolerance = kDefaultTieTolerance);

struct SmithCheck {
  bool holds = false;
  double max_deviation = 0.0;
};

/// Double degeneracy n_{2i-1} = n_{2i} within `tol`.
SmithCheck smith_check(const OccupationSpectrum& spec, double tol);

/// Euclidean distance of the first N occupations from the single-determinant
/// vertex (1,...,1).
double hf_distance(const OccupationSpectrum& spec);

}  // namespace gpcci
