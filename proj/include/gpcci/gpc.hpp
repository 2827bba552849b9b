#pragma once

// Generalized Pauli constraint catalogs and their evaluation on sorted
// natural occupation spectra.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpcci/rdm.hpp"

namespace gpcci {

enum class ConstraintKind { inequality, equality, bound };

/// Affine form D(n) = kappa0 + sum_i kappa_i n_i over sorted occupations.
struct GPConstraint {
  int N = 0;
  int m = 0;
  int mu = 0;
  std::int64_t kappa0 = 0;
  std::vector<std::int64_t> kappa;
  ConstraintKind kind = ConstraintKind::inequality;

  double value(std::span<const double> n) const;
  /// "D1", "E2", "P1"
  std::string label() const;
  /// "2 - n1 - n2 - n4"
  std::string formula() const;

  friend bool operator==(const GPConstraint&, const GPConstraint&) = default;
};

enum class CatalogSource { builtin, file };

struct Catalog {
  int N = 0;
  int m = 0;
  std::vector<GPConstraint> constraints;
  /// Exact linear identities (n_r + n_{m+1-r} = 1 for rank six).
  std::vector<GPConstraint> equalities;
  /// Plain Pauli bounds listed alongside a catalog (n1 <= 1 for (4,8)).
  std::vector<GPConstraint> bounds;
  CatalogSource source = CatalogSource::builtin;

  const GPConstraint* find(int mu) const;
  const GPConstraint& at(int mu) const;
  const GPConstraint& equality(int r) const;
};

bool has_builtin_catalog(int N, int m);
/// Built-in catalogs for (3,6), (3,7), (3,8) (first 19 of 31) and (4,8).
Catalog catalog(int N, int m);

/// Constraint file: one `N m mu kappa0 kappa1 ... kappam` per line, '#' comments.
Catalog parse_catalog(std::istream& in, const std::string& source_name = "<stream>");
Catalog load_catalog_file(const std::filesystem::path& path);
void write_catalog(std::ostream& out, const Catalog& cat);

/// Appends the inequalities of `more`; rejects duplicates of (N,m,mu).
void append_catalog(Catalog& into, const Catalog& more);

struct TierThresholds {
  double pinned = 1e-10;
  double strong = 1e-4;
  double quasi = 1e-2;
};

enum class Tier { pinned, strong_quasipinned, quasipinned, unpinned };
const char* to_string(Tier t) noexcept;
Tier classify_tier(double residual, const TierThresholds& th) noexcept;

struct Residual {
  GPConstraint constraint;
  double value = 0.0;
  Tier tier = Tier::unpinned;
};

struct PinningReport {
  int N = 0;
  int m = 0;
  std::vector<Residual> residuals;
  std::vector<Residual> equalities;
  std::vector<Residual> bounds;
  bool degeneracy_warning = false;
  bool representability_violation = false;
  double xi = 0.0;
};

inline constexpr double kViolationTolerance = 1e-9;

struct EvaluateOptions {
  TierThresholds tiers{};
  /// When false, violations are reported in the flag instead of thrown.
  bool throw_on_violation = true;
};

PinningReport evaluate(const Catalog& cat, const OccupationSpectrum& spec,
                       const EvaluateOptions& options = {});

enum class Regime { weak, strong, border };
const char* to_string(Regime r) noexcept;

/// Rank-six spin-compensated regimes: weak when n1+n2+n4 = 2, strong when
/// n1+n2+n3 = 2, border when both hold.
Regime classify_regime_36(const OccupationSpectrum& spec, double tol);

}  // namespace gpcci
