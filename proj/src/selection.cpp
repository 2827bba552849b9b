#include "gpcci/selection.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gpcci/error.hpp"
#include "gpcci/kernels/forms.hpp"

namespace gpcci {

namespace {

void check_compatible(const GPConstraint& c, const ConfigurationSpace& space) {
  if (c.m != space.m || static_cast<int>(c.kappa.size()) != space.m) {
    throw Error(Errc::mismatched_width, c.label() + " is defined for m=" + std::to_string(c.m) +
                                            ", space has m=" + std::to_string(space.m));
  }
  if (c.N != space.N) {
    throw Error(Errc::mismatched_particle_number, c.label() + " is defined for N=" + std::to_string(c.N) +
                                                      ", space has N=" + std::to_string(space.N));
  }
}

}  // namespace

std::int64_t constraint_eigenvalue(const GPConstraint& c, const Determinant& det) {
  if (det.m() != c.m || static_cast<int>(c.kappa.size()) != c.m) {
    throw Error(Errc::mismatched_width, "determinant width " + std::to_string(det.m()) +
                                            " differs from constraint width " + std::to_string(c.m));
  }
  std::int64_t v = c.kappa0;
  for (int i : det.orbitals()) v += c.kappa[i];
  return v;
}

PinnedSpace filter_pinned(const ConfigurationSpace& space, const std::vector<GPConstraint>& constraints) {
  for (const auto& c : constraints) check_compatible(c, space);

  std::vector<std::uint64_t> masks;
  masks.reserve(space.size());
  for (const auto& d : space.dets) masks.push_back(d.mask());

  std::vector<char> keep(space.size(), 1);
  std::vector<std::int64_t> eig(space.size());
  for (const auto& c : constraints) {
    kernels::occupation_forms(masks, c.kappa0, c.kappa, eig);
    for (std::size_t i = 0; i < eig.size(); ++i)
      if (eig[i] != 0) keep[i] = 0;
  }

  std::vector<Determinant> kept;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (keep[i]) kept.push_back(space.dets[i]);

  PinnedSpace out;
  out.base = space;
  out.imposed = constraints;
  out.survivors = subspace(space, std::move(kept));
  out.removed = space.size() - out.survivors.size();
  return out;
}

ExcitationCensus pinned_census(const ConfigurationSpace& space, const std::vector<GPConstraint>& constraints,
                               const Determinant& reference) {
  const auto pinned = filter_pinned(space, constraints);
  if (pinned.survivors.empty()) throw Error(Errc::no_survivors, "imposed constraints remove every determinant");
  return census(pinned.survivors, reference);
}

// ---------------------------------------------------------------------------

CIVector ls_reconstruct_36(const OccupationSpectrum& spec, Regime regime) {
  if (spec.m() != 6 || spec.N != 3) throw Error(Errc::wrong_rank, "closed form needs (N,m)=(3,6)");
  const auto& n = spec.n;
  constexpr double tol = 1e-8;
  for (int r = 0; r < 3; ++r) {
    if (std::abs(n[r] + n[5 - r] - 1.0) > tol) {
      throw Error(Errc::representability_violation, "n" + std::to_string(r + 1) + " + n" +
                                                        std::to_string(6 - r) + " != 1");
    }
  }
  for (double x : n) {
    if (x < -tol || x > 1.0 + tol) throw Error(Errc::representability_violation, "occupation outside [0,1]");
  }

  std::array<std::array<int, 3>, 3> dets{};
  std::array<double, 3> weights{};
  switch (regime) {
    case Regime::weak:
    case Regime::border:
      if (std::abs(n[0] + n[1] + n[3] - 2.0) > tol) throw Error(Errc::regime_mismatch, "n1+n2+n4 != 2");
      dets = {{{1, 2, 3}, {1, 4, 5}, {2, 4, 6}}};
      weights = {n[2], n[4], n[5]};
      break;
    case Regime::strong:
      if (std::abs(n[0] + n[1] + n[2] - 2.0) > tol) throw Error(Errc::regime_mismatch, "n1+n2+n3 != 2");
      dets = {{{1, 2, 4}, {1, 3, 5}, {2, 3, 6}}};
      weights = {n[3], n[4], n[5]};
      break;
  }

  std::vector<Determinant> ds;
  for (const auto& d : dets) ds.push_back(Determinant::from_orbitals(std::span<const int>(d), 6));
  ConfigurationSpace parent;
  parent.N = 3;
  parent.m = 6;
  CIVector v;
  v.space = subspace(parent, ds);
  v.coeffs.assign(3, 0.0);
  for (int k = 0; k < 3; ++k) {
    v.coeffs[*v.space.index_of(ds[k].mask())] = std::sqrt(std::clamp(weights[k], 0.0, 1.0));
  }
  return v;
}

// ---------------------------------------------------------------------------

PinnedSolveResult pinned_solve(const SpinOrbitalIntegrals& ints, const ConfigurationSpace& space,
                               const std::vector<GPConstraint>& constraints,
                               const PinnedSolveControls& controls) {
  for (const auto& c : constraints) check_compatible(c, space);

  PinnedSolveResult res;
  const CIVector full = solve_ground(ints, space).front();
  res.full_energy = *full.energy;
  res.full_size = space.size();
  res.reference_energy = controls.reference_energy ? *controls.reference_energy
                                                   : mean_field_energy(ints, closure(space));
  res.full_spectrum = natural_spectrum(one_rdm(full), controls.tie_tolerance);

  OrbitalRotation basis = res.full_spectrum.natural_rotation;
  std::vector<double> basis_occupations = res.full_spectrum.n;
  const Determinant reference = aufbau(space.N, space.m);

  for (int it = 1; it <= controls.max_iterations; ++it) {
    const SpinOrbitalIntegrals natural_ints = ints.rotated(basis);
    std::optional<SpinOrbitalLayout> layout = space.layout;
    if (basis.target_layout) layout = basis.target_layout;
    ConfigurationSpace natural_space =
        space.sz2 ? enumerate_space(space.N, space.m, layout, space.sz2)
                  : enumerate_space(space.N, space.m, basis.spin_blocked ? layout : std::nullopt);

    PinnedSpace pinned = filter_pinned(natural_space, constraints);
    if (pinned.survivors.empty()) {
      throw Error(Errc::no_survivors, "imposed constraints remove every determinant");
    }
    CIVector truncated = solve_ground(natural_ints, pinned.survivors).front();
    OccupationSpectrum spec = natural_spectrum(one_rdm(truncated), controls.tie_tolerance);

    double delta = 0.0;
    for (std::size_t i = 0; i < spec.n.size(); ++i) {
      delta = std::max(delta, std::abs(spec.n[i] - basis_occupations[i]));
    }

    res.iterations = it;
    res.pinned_energy = *truncated.energy;
    res.census_full = census(natural_space, reference);
    res.census_pinned = census(pinned.survivors, reference);
    res.pinned_size = pinned.survivors.size();
    res.pinned_vector = std::move(truncated);
    res.pinned_spectrum = spec;

    if (delta < controls.occupation_tolerance) {
      res.converged = true;
      break;
    }
    basis = basis.then(spec.natural_rotation);
    basis_occupations = spec.n;
  }

  const double denom = res.full_energy - res.reference_energy;
  res.recovered_fraction = std::abs(denom) < 1e-12 ? 1.0 : (res.pinned_energy - res.reference_energy) / denom;
  return res;
}

// ---------------------------------------------------------------------------

GPConstraint doubles_only_operator(int N, int m) {
  if (N < 2 || N > m) throw Error(Errc::invalid_argument, "doubles-only operator needs 2 <= N <= m");
  GPConstraint c;
  c.N = N;
  c.m = m;
  c.mu = 0;
  c.kappa0 = N - 2;
  c.kappa.assign(m, 0);
  for (int i = 0; i < N - 1; ++i) c.kappa[i] = -1;
  c.kappa[N - 1] = 1;
  return c;
}

std::vector<std::string> census_preset_names() {
  return {"bd36", "rank7", "rank8", "rank48-restricted", "rank48-unrestricted"};
}

CensusPreset census_preset(const std::string& name) {
  CensusPreset p;
  p.name = name;
  if (name == "bd36") {
    const Catalog cat = catalog(3, 6);
    p.description = "(3,6): Borland-Dennis structured determinants, then D1 pinned";
    p.N = 3;
    p.m = 6;
    p.space = enumerate_space(3, 6);
    p.base_constraints = cat.equalities;
    p.pinned_constraints = {cat.at(1)};
  } else if (name == "rank7") {
    const Catalog cat = catalog(3, 7);
    p.description = "(3,7): D1 pinned, then D1 and D2 pinned";
    p.N = 3;
    p.m = 7;
    p.space = enumerate_space(3, 7);
    p.base_constraints = {cat.at(1)};
    p.pinned_constraints = {cat.at(2)};
  } else if (name == "rank8") {
    const Catalog cat = catalog(3, 8);
    p.description = "(3,8): D2 pinned, then D2 and D5 pinned";
    p.N = 3;
    p.m = 8;
    p.space = enumerate_space(3, 8);
    p.base_constraints = {cat.at(2)};
    p.pinned_constraints = {cat.at(5)};
  } else if (name == "rank48-restricted" || name == "rank48-unrestricted") {
    const Catalog cat = catalog(4, 8);
    const bool restricted = name == "rank48-restricted";
    // Natural orbitals 1,2,3 carry spin up and 4 spin down; the virtual
    // orbitals split 1+3 (restricted, 4 up + 4 down) or 2+2 (5 up + 3 down).
    const std::vector<int> up = restricted ? std::vector<int>{0, 1, 2, 4} : std::vector<int>{0, 1, 2, 4, 5};
    p.description = restricted ? "(4,8) S_z=1, up {1,2,3,5} / down {4,6,7,8}, D14 pinned"
                               : "(4,8) S_z=1, up {1,2,3,5,6} / down {4,7,8}, D14 pinned";
    p.N = 4;
    p.m = 8;
    p.space = enumerate_space(4, 8, SpinOrbitalLayout::from_up_set(8, up), 2);
    p.pinned_constraints = {cat.at(14)};
  } else {
    throw Error(Errc::invalid_argument, "unknown census preset '" + name + "'");
  }
  p.reference = aufbau(p.N, p.m);
  return p;
}

}  // namespace gpcci
