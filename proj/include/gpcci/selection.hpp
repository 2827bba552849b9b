#pragma once

// Selection rules from pinned constraints: a determinant can carry weight in
// a pinned state only if it is a zero-eigenvalue eigenvector of every pinned
// constraint operator kappa0 + sum_i kappa_i a+_i a_i. This module filters
// spaces by that rule, solves truncated CI problems in the surviving space,
// and rebuilds rank-six wave functions from their occupations.

#include <optional>
#include <string>
#include <vector>

#include "gpcci/ci.hpp"
#include "gpcci/fock.hpp"
#include "gpcci/gpc.hpp"
#include "gpcci/rdm.hpp"

namespace gpcci {

/// Eigenvalue of the constraint operator on a determinant.
std::int64_t constraint_eigenvalue(const GPConstraint& c, const Determinant& det);

struct PinnedSpace {
  ConfigurationSpace base;
  std::vector<GPConstraint> imposed;
  ConfigurationSpace survivors;
  std::size_t removed = 0;
};

PinnedSpace filter_pinned(const ConfigurationSpace& space, const std::vector<GPConstraint>& constraints);

ExcitationCensus pinned_census(const ConfigurationSpace& space, const std::vector<GPConstraint>& constraints,
                               const Determinant& reference);

/// Rank-six closed forms:
///   weak   sqrt(n3)|123> + sqrt(n5)|145> + sqrt(n6)|246>
///   strong sqrt(n4)|124> + sqrt(n5)|135> + sqrt(n6)|236>
CIVector ls_reconstruct_36(const OccupationSpectrum& spec, Regime regime);

struct PinnedSolveControls {
  int max_iterations = 100;
  double occupation_tolerance = 1e-10;
  double tie_tolerance = kDefaultTieTolerance;
  /// Mean-field reference energy; computed with mean_field_energy when unset.
  std::optional<double> reference_energy;
};

struct PinnedSolveResult {
  double full_energy = 0.0;
  double pinned_energy = 0.0;
  double reference_energy = 0.0;
  /// (E_pinned - E_ref) / (E_full - E_ref); 1 when there is no correlation.
  double recovered_fraction = 1.0;
  ExcitationCensus census_full;
  ExcitationCensus census_pinned;
  int iterations = 0;
  bool converged = false;
  std::size_t full_size = 0;
  std::size_t pinned_size = 0;
  /// Final truncated wave function in its natural-orbital basis.
  CIVector pinned_vector;
  OccupationSpectrum full_spectrum;
  OccupationSpectrum pinned_spectrum;
};

/// Full CI, transform to natural orbitals, keep the determinants allowed by
/// `constraints`, re-solve, and repeat the natural-orbital update until the
/// occupations of the truncated solution stop moving.
PinnedSolveResult pinned_solve(const SpinOrbitalIntegrals& ints, const ConfigurationSpace& space,
                               const std::vector<GPConstraint>& constraints,
                               const PinnedSolveControls& controls = {});

/// Natural-orbital spin assignments used to reproduce published census tables.
struct CensusPreset {
  std::string name;
  std::string description;
  int N = 0;
  int m = 0;
  /// Space before any selection (full space or an S_z sector).
  ConfigurationSpace space;
  /// Constraints defining the "full" row (may be empty).
  std::vector<GPConstraint> base_constraints;
  /// Additional constraints defining the pinned row.
  std::vector<GPConstraint> pinned_constraints;
  Determinant reference;
};

std::vector<std::string> census_preset_names();
CensusPreset census_preset(const std::string& name);

/// The operator (N-2) + n_N - sum_{i<N} n_i whose zero eigenspace holds only
/// the reference and doubles that avoid orbital N.
GPConstraint doubles_only_operator(int N, int m);

}  // namespace gpcci
