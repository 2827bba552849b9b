#pragma once

// One- and two-electron integrals: built-in lattice/pairing models, a plain
// text integral file reader/writer (1-based chemists' notation, FCIDUMP-like),
// and the expansion to antisymmetrized spin-orbital elements.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gpcci/fock.hpp"
#include "gpcci/rotation.hpp"

namespace gpcci {

/// Spatial-orbital integrals. Two-electron elements are stored densely in
/// chemists' notation (ij|kl) and always carry the full 8-fold symmetry.
class SpatialIntegrals {
 public:
  SpatialIntegrals() = default;
  explicit SpatialIntegrals(int n_spatial);

  int n_spatial() const noexcept { return n_; }

  double core_energy = 0.0;
  Eigen::MatrixXd h;

  /// Header metadata from an integral file, when present.
  std::optional<int> nelec;
  std::optional<int> ms2;

  double g(int i, int j, int k, int l) const noexcept { return g_[index(i, j, k, l)]; }
  /// Sets (ij|kl) and its 7 permutational images.
  void set_g(int i, int j, int k, int l, double v);
  /// Sets h_ij and h_ji.
  void set_h(int i, int j, double v);

  /// Max deviation from h = h^T and from 8-fold symmetry of g.
  double symmetry_error() const;

 private:
  std::size_t index(int i, int j, int k, int l) const noexcept {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }

  int n_ = 0;
  std::vector<double> g_;
};

enum class SpinOrdering { interleaved, blocked };

/// Antisymmetrized spin-orbital integrals <pq||rs> = <pq|rs> - <pq|sr>.
class SpinOrbitalIntegrals {
 public:
  SpinOrbitalIntegrals() = default;
  SpinOrbitalIntegrals(int m, SpinOrbitalLayout layout);

  int m() const noexcept { return m_; }
  const SpinOrbitalLayout& layout() const noexcept { return layout_; }

  double core_energy = 0.0;
  Eigen::MatrixXd h;

  double anti(int p, int q, int r, int s) const noexcept { return g_[index(p, q, r, s)]; }
  void set_anti(int p, int q, int r, int s, double v) noexcept { g_[index(p, q, r, s)] = v; }

  /// First m spin orbitals; with interleaved ordering an odd rank keeps only
  /// the spin-up partner of the last spatial orbital.
  SpinOrbitalIntegrals truncated(int m) const;

  /// Integrals in the rotated basis: h' = U h U^T and the same four-index
  /// contraction for <pq||rs>. The layout becomes rot.target_layout when set.
  SpinOrbitalIntegrals rotated(const OrbitalRotation& rot) const;

 private:
  std::size_t index(int p, int q, int r, int s) const noexcept {
    return ((static_cast<std::size_t>(p) * m_ + q) * m_ + r) * m_ + s;
  }

  int m_ = 0;
  SpinOrbitalLayout layout_;
  std::vector<double> g_;
};

/// Parses the integral file format; `source_name` labels error messages.
SpatialIntegrals parse_integrals(std::istream& in, const std::string& source_name = "<stream>");
SpatialIntegrals load_integral_file(const std::filesystem::path& path);

/// Writes unique elements with 17 significant digits; the output parses back
/// bit-exactly.
void write_integrals(std::ostream& out, const SpatialIntegrals& ints, int nelec, int ms2);
void write_integral_file(const std::filesystem::path& path, const SpatialIntegrals& ints, int nelec,
                         int ms2);

/// Hubbard chain: -t on nearest-neighbour bonds, U on site.
SpatialIntegrals hubbard_chain(int sites, double t, double U, bool periodic);

/// Reduced-BCS pairing levels: h_kk = k*spacing (k = 1..levels) and
/// (kl|kl) = -G for all level pairs, which scatters time-reversed pairs.
/// Because the stored tensor keeps 8-fold symmetry, the exchange images
/// (kl|lk) = -G are present as well.
SpatialIntegrals pairing_model(int levels, double spacing, double G);

SpinOrbitalIntegrals to_spin_orbitals(const SpatialIntegrals& s,
                                      SpinOrdering ordering = SpinOrdering::interleaved);

}  // namespace gpcci
