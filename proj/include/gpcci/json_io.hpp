#pragma once

// JSON forms of the library's value types. Determinants are 1-based orbital
// lists, spaces are arrays of such lists.

#include "json.hpp"

#include "gpcci/ci.hpp"
#include "gpcci/fock.hpp"
#include "gpcci/gpc.hpp"
#include "gpcci/rdm.hpp"
#include "gpcci/selection.hpp"

namespace gpcci {

using json = nlohmann::ordered_json;

json to_json(const Determinant& d);
json to_json(const ConfigurationSpace& s);
json to_json(const ExcitationCensus& c);
/// {energy, determinants, coefficients}
json to_json(const CIVector& v);
/// {n, degeneracy_groups, trace, xi}
json to_json(const OccupationSpectrum& s);
json to_json(const PinningReport& r);
json to_json(const PinnedSolveResult& r);

Determinant determinant_from_json(const json& j, int m);
ConfigurationSpace space_from_json(const json& j, int N, int m);

}  // namespace gpcci
