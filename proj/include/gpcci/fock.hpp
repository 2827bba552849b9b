#pragma once

// Slater determinants as occupation bitmasks, configuration spaces and
// excitation bookkeeping.
//
// Orbital indices are 0-based in the API and 1-based in every textual
// representation ("[1,4,5]").

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gpcci {

inline constexpr int kMaxOrbitals = 64;

enum class Spin : std::uint8_t { up, down };

/// Spin and spatial labels of each spin orbital.
struct SpinOrbitalLayout {
  std::vector<Spin> spin_of;
  std::vector<int> spatial_of;

  int m() const noexcept { return static_cast<int>(spin_of.size()); }
  std::uint64_t spin_mask(Spin s) const noexcept;

  /// Throws Errc::invalid_argument when the invariants do not hold.
  void validate() const;

  /// 1↑,1↓,2↑,2↓,...
  static SpinOrbitalLayout interleaved(int n_spatial);
  /// 1↑,2↑,...,n↑,1↓,...,n↓
  static SpinOrbitalLayout blocked(int n_spatial);
  /// Arbitrary spin assignment over m orbitals; `up` lists 0-based indices
  /// carrying spin up, every other index is spin down. Each orbital gets its
  /// own spatial label.
  static SpinOrbitalLayout from_up_set(int m, std::span<const int> up);

  /// First `m` spin orbitals of this layout.
  SpinOrbitalLayout truncated(int m) const;

  friend bool operator==(const SpinOrbitalLayout&, const SpinOrbitalLayout&) = default;
};

class Determinant {
 public:
  Determinant() = default;
  Determinant(std::uint64_t mask, int m);

  /// Builds from 1-based orbital indices, e.g. {1,4,5}.
  static Determinant from_orbitals(std::initializer_list<int> one_based, int m);
  static Determinant from_orbitals(std::span<const int> one_based, int m);

  std::uint64_t mask() const noexcept { return mask_; }
  int m() const noexcept { return m_; }
  int count() const noexcept { return std::popcount(mask_); }
  bool occupied(int orbital) const noexcept { return (mask_ >> orbital) & 1U; }

  /// 0-based occupied orbitals in ascending order.
  std::vector<int> orbitals() const;
  /// "[1,4,5]"
  std::string to_string() const;

  friend bool operator==(const Determinant&, const Determinant&) = default;
  friend auto operator<=>(const Determinant& a, const Determinant& b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  std::uint64_t mask_ = 0;
  int m_ = 0;
};

/// Sign of a_p acting on `mask` (count of occupied orbitals below p).
inline int annihilation_sign(std::uint64_t mask, int p) noexcept {
  const std::uint64_t below = (p == 0) ? 0 : (mask & ((std::uint64_t{1} << p) - 1));
  return (std::popcount(below) & 1) ? -1 : 1;
}

struct ConfigurationSpace {
  int N = 0;
  int m = 0;
  std::optional<SpinOrbitalLayout> layout;
  /// Twice the S_z value, i.e. n_up - n_down.
  std::optional<int> sz2;
  std::vector<Determinant> dets;

  std::size_t size() const noexcept { return dets.size(); }
  bool empty() const noexcept { return dets.empty(); }
  std::optional<std::size_t> index_of(std::uint64_t mask) const;
  bool contains(const Determinant& d) const { return index_of(d.mask()).has_value(); }
};

/// All C(m,N) determinants, or those of one S_z sector, in ascending mask order.
ConfigurationSpace enumerate_space(int N, int m,
                                   const std::optional<SpinOrbitalLayout>& layout = std::nullopt,
                                   std::optional<int> sz2 = std::nullopt);

/// Subspace holding `dets` (sorted and deduplicated) with the metadata of `parent`.
ConfigurationSpace subspace(const ConfigurationSpace& parent, std::vector<Determinant> dets);

/// The space that rotations of `space` stay inside: the full (N,m) space or
/// the full S_z sector.
ConfigurationSpace closure(const ConfigurationSpace& space);

int excitation_degree(const Determinant& reference, const Determinant& det);

struct ExcitationCensus {
  Determinant reference;
  std::map<int, std::size_t> counts;

  std::size_t at(int degree) const;
  std::size_t total() const;
};

ExcitationCensus census(const ConfigurationSpace& space, const Determinant& reference);

/// Reference determinant {1,...,N} of width m.
Determinant aufbau(int N, int m);

std::uint64_t binomial(int n, int k);

}  // namespace gpcci
