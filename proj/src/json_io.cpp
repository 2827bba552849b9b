#include "gpcci/json_io.hpp"

#include "gpcci/error.hpp"

namespace gpcci {

json to_json(const Determinant& d) {
  json out = json::array();
  for (int i : d.orbitals()) out.push_back(i + 1);
  return out;
}

json to_json(const ConfigurationSpace& s) {
  json out = json::array();
  for (const auto& d : s.dets) out.push_back(to_json(d));
  return out;
}

json to_json(const ExcitationCensus& c) {
  json counts = json::object();
  for (const auto& [d, n] : c.counts) counts[std::to_string(d)] = n;
  return json{{"reference", to_json(c.reference)}, {"counts", counts}, {"total", c.total()}};
}

json to_json(const CIVector& v) {
  json out;
  out["energy"] = v.energy ? json(*v.energy) : json(nullptr);
  out["determinants"] = to_json(v.space);
  out["coefficients"] = v.coeffs;
  if (v.degenerate) out["degenerate"] = true;
  return out;
}

json to_json(const OccupationSpectrum& s) {
  json groups = json::array();
  for (const auto& g : s.degeneracy_groups) {
    json one = json::array();
    for (int i : g) one.push_back(i + 1);
    groups.push_back(one);
  }
  return json{{"n", s.n}, {"degeneracy_groups", groups}, {"trace", s.trace()}, {"xi", hf_distance(s)}};
}

namespace {

json residual_json(const Residual& r) {
  return json{{"mu", r.constraint.mu},
              {"label", r.constraint.label()},
              {"formula", r.constraint.formula()},
              {"value", r.value},
              {"tier", to_string(r.tier)}};
}

}  // namespace

json to_json(const PinningReport& r) {
  json out;
  out["N"] = r.N;
  out["m"] = r.m;
  for (const auto& [key, set] : {std::pair{"residuals", &r.residuals}, std::pair{"equalities", &r.equalities},
                                 std::pair{"bounds", &r.bounds}}) {
    json arr = json::array();
    for (const auto& x : *set) arr.push_back(residual_json(x));
    out[key] = arr;
  }
  out["degeneracy_warning"] = r.degeneracy_warning;
  out["representability_violation"] = r.representability_violation;
  out["xi"] = r.xi;
  return out;
}

json to_json(const PinnedSolveResult& r) {
  return json{{"full_energy", r.full_energy},
              {"pinned_energy", r.pinned_energy},
              {"reference_energy", r.reference_energy},
              {"full_correlation_mha", 1000.0 * (r.full_energy - r.reference_energy)},
              {"pinned_correlation_mha", 1000.0 * (r.pinned_energy - r.reference_energy)},
              {"recovered_fraction", r.recovered_fraction},
              {"full_size", r.full_size},
              {"pinned_size", r.pinned_size},
              {"census_full", to_json(r.census_full)},
              {"census_pinned", to_json(r.census_pinned)},
              {"iterations", r.iterations},
              {"converged", r.converged}};
}

Determinant determinant_from_json(const json& j, int m) {
  if (!j.is_array()) throw Error(Errc::parse_error, "determinant must be an array of orbital indices");
  std::vector<int> idx;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(Errc::parse_error, "orbital index must be an integer");
    idx.push_back(x.get<int>());
  }
  return Determinant::from_orbitals(std::span<const int>(idx), m);
}

ConfigurationSpace space_from_json(const json& j, int N, int m) {
  if (!j.is_array()) throw Error(Errc::parse_error, "space must be an array of determinants");
  ConfigurationSpace parent;
  parent.N = N;
  parent.m = m;
  std::vector<Determinant> dets;
  for (const auto& d : j) dets.push_back(determinant_from_json(d, m));
  return subspace(parent, std::move(dets));
}

}  // namespace gpcci
