#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gpcci/ci.hpp"
#include "gpcci/error.hpp"
#include "gpcci/gpc.hpp"
#include "gpcci/integrals.hpp"
#include "gpcci/json_io.hpp"
#include "gpcci/rdm.hpp"
#include "gpcci/selection.hpp"

namespace gpcci::cli {

namespace {

std::string num(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t w, bool right = false) {
  if (s.size() >= w) return s;
  return right ? std::string(w - s.size(), ' ') + s : s + std::string(w - s.size(), ' ');
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(Errc::parse_error, what + ": '" + s + "' is not a number");
  return v;
}

double jnum(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

struct Config {
  std::string command;
  std::string model = "hubbard";
  int sites = 3;
  double t = 1.0;
  double U = 2.0;
  bool periodic = false;
  int levels = 4;
  double spacing = 1.0;
  double G = 0.33;
  std::optional<int> N, sz2, rank;
  std::string constraints = "auto";
  std::vector<std::string> catalogs;
  TierThresholds tiers;
  std::string format = "table";
  std::uint64_t seed = 1;
  std::optional<double> e_ref;
  double tie_tol = kDefaultTieTolerance;
  std::string preset;
  std::string occ;
  int samples = 1000;
  std::string param = "U";
  double from = 0.0;
  double to = 8.0;
  int steps = 9;
  std::vector<std::string> files;
  int max_iter = 100;
};

TierThresholds parse_tiers(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw Error(Errc::parse_error, "--tiers expects three comma-separated thresholds");
  TierThresholds t{parse_double(parts[0], "--tiers"), parse_double(parts[1], "--tiers"),
                   parse_double(parts[2], "--tiers")};
  if (!(0.0 <= t.pinned && t.pinned <= t.strong && t.strong <= t.quasi)) {
    throw Error(Errc::invalid_argument, "--tiers must be nondecreasing and nonnegative");
  }
  return t;
}

// ---------------------------------------------------------------------------
// model and problem setup

struct Model {
  json description;
  SpatialIntegrals spatial;
  int default_N = 0;
  std::optional<int> default_sz2;
};

Model resolve_model(const std::string& spec, const Config& c) {
  Model m;
  if (spec == "hubbard") {
    if (c.sites < 2) throw Error(Errc::invalid_argument, "--sites must be at least 2");
    m.spatial = hubbard_chain(c.sites, c.t, c.U, c.periodic);
    m.default_N = c.sites;
    m.description = {{"kind", "hubbard"}, {"sites", c.sites}, {"t", c.t}, {"U", c.U}, {"periodic", c.periodic}};
    m.description["label"] = "hubbard(sites=" + std::to_string(c.sites) + ", t=" + num("%g", c.t) +
                             ", U=" + num("%g", c.U) + (c.periodic ? ", periodic)" : ", open)");
  } else if (spec == "pairing") {
    if (c.levels < 2) throw Error(Errc::invalid_argument, "--levels must be at least 2");
    m.spatial = pairing_model(c.levels, c.spacing, c.G);
    m.default_N = c.levels;
    m.description = {{"kind", "pairing"}, {"levels", c.levels}, {"spacing", c.spacing}, {"G", c.G}};
    m.description["label"] = "pairing(levels=" + std::to_string(c.levels) + ", spacing=" +
                             num("%g", c.spacing) + ", G=" + num("%g", c.G) + ")";
  } else if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    m.spatial = load_integral_file(path);
    m.default_N = m.spatial.nelec.value_or(0);
    m.default_sz2 = m.spatial.ms2;
    m.description = {{"kind", "file"}, {"path", path}, {"label", "file(" + path + ")"}};
  } else {
    throw Error(Errc::invalid_argument, "unknown model '" + spec + "' (hubbard, pairing or file:<path>)");
  }
  return m;
}

struct Problem {
  json model;
  SpinOrbitalIntegrals ints;
  ConfigurationSpace space;
  int N = 0;
  int m = 0;
  int sz2 = 0;
};

Problem setup(const Config& c, const std::string& model_spec) {
  Model model = resolve_model(model_spec, c);
  Problem p;
  p.model = model.description;
  p.ints = to_spin_orbitals(model.spatial, SpinOrdering::interleaved);
  if (c.rank) {
    if (*c.rank < 1 || *c.rank > p.ints.m()) {
      throw Error(Errc::invalid_argument, "--rank must lie in [1," + std::to_string(p.ints.m()) + "]");
    }
    p.ints = p.ints.truncated(*c.rank);
  }
  p.m = p.ints.m();
  p.N = c.N.value_or(model.default_N);
  if (p.N <= 0) throw Error(Errc::invalid_argument, "particle number unknown; pass --N");
  p.sz2 = c.sz2 ? *c.sz2 : model.default_sz2.value_or(p.N % 2);
  p.space = enumerate_space(p.N, p.m, p.ints.layout(), p.sz2);
  return p;
}

Catalog resolve_catalog(const Config& c, int N, int m) {
  Catalog cat;
  if (has_builtin_catalog(N, m)) {
    cat = catalog(N, m);
  } else {
    cat.N = N;
    cat.m = m;
    cat.source = CatalogSource::file;
  }
  for (const auto& path : c.catalogs) {
    const Catalog more = load_catalog_file(path);
    if (more.constraints.empty()) continue;
    if (more.N != N || more.m != m) {
      throw Error(Errc::inconsistent_width, path + " holds (N,m)=(" + std::to_string(more.N) + "," +
                                                std::to_string(more.m) + "), problem has (" +
                                                std::to_string(N) + "," + std::to_string(m) + ")");
    }
    append_catalog(cat, more);
  }
  return cat;
}

std::vector<GPConstraint> select_constraints(const std::string& selection, const Catalog& cat,
                                             const PinningReport* report) {
  std::vector<GPConstraint> out;
  auto add = [&](const GPConstraint& g) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  for (const auto& tok : split(selection, ',')) {
    if (tok == "auto") {
      if (!report) throw Error(Errc::invalid_argument, "'auto' needs an analyzed state");
      for (const auto& r : report->residuals)
        if (r.tier == Tier::pinned || r.tier == Tier::strong_quasipinned) add(r.constraint);
      for (const auto& e : cat.equalities) add(e);
    } else if (tok == "bd") {
      if (cat.equalities.empty()) throw Error(Errc::invalid_argument, "catalog has no equalities");
      for (const auto& e : cat.equalities) add(e);
    } else if (tok == "doubles") {
      add(doubles_only_operator(cat.N, cat.m));
    } else {
      char kind = 'D';
      std::string digits = tok;
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        kind = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
        digits = tok.substr(1);
      }
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        throw Error(Errc::parse_error, "bad constraint '" + tok + "'");
      }
      const int mu = std::stoi(digits);
      if (kind == 'D') {
        add(cat.at(mu));
      } else if (kind == 'E') {
        add(cat.equality(mu));
      } else if (kind == 'P') {
        auto it = std::find_if(cat.bounds.begin(), cat.bounds.end(), [&](const auto& b) { return b.mu == mu; });
        if (it == cat.bounds.end()) throw Error(Errc::invalid_argument, "catalog has no bound P" + digits);
        add(*it);
      } else {
        throw Error(Errc::parse_error, "bad constraint '" + tok + "'");
      }
    }
  }
  return out;
}

json labels(const std::vector<GPConstraint>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(c.label());
  return out;
}

json sector_json(const Problem& p) {
  return json{{"N", p.N}, {"m", p.m}, {"sz2", p.sz2}, {"dimension", p.space.size()}};
}

std::optional<std::string> regime_of(const OccupationSpectrum& spec, int sz2) {
  if (spec.m() != 6 || spec.N != 3 || std::abs(sz2) != 1) return std::nullopt;
  try {
    return std::string(to_string(classify_regime_36(spec, 1e-9)));
  } catch (const Error&) {
    return std::string("none");
  }
}

// ---------------------------------------------------------------------------
// commands produce json; renderers format it

struct Outcome {
  json doc;
  int code = kExitOk;
};

Outcome cmd_solve(const Config& c) {
  const Problem p = setup(c, c.model);
  const CIVector v = solve_ground(p.ints, p.space).front();
  const double eref = c.e_ref ? *c.e_ref : mean_field_energy(p.ints, p.space);
  const auto spec = natural_spectrum(one_rdm(v), c.tie_tol);
  json doc{{"command", "solve"}, {"model", p.model}, {"sector", sector_json(p)}};
  doc["energy"] = *v.energy;
  doc["reference_energy"] = eref;
  doc["correlation_mha"] = 1000.0 * (*v.energy - eref);
  doc["degenerate"] = v.degenerate;
  doc["spectrum"] = to_json(spec);
  doc["wavefunction"] = to_json(v);
  return {doc};
}

Outcome cmd_analyze(const Config& c) {
  const Problem p = setup(c, c.model);
  const CIVector v = solve_ground(p.ints, p.space).front();
  const auto spec = natural_spectrum(one_rdm(v), c.tie_tol);
  const Catalog cat = resolve_catalog(c, p.N, p.m);
  const PinningReport rep = evaluate(cat, spec, {c.tiers, false});
  json doc{{"command", "analyze"}, {"model", p.model}, {"sector", sector_json(p)}};
  doc["energy"] = *v.energy;
  doc["degenerate"] = v.degenerate;
  doc["spectrum"] = to_json(spec);
  if (auto r = regime_of(spec, p.sz2)) doc["regime"] = *r;
  doc["report"] = to_json(rep);
  return {doc, rep.representability_violation ? kExitViolation : kExitOk};
}

json census_row(const ConfigurationSpace& space, const std::vector<GPConstraint>& cs, const Determinant& ref) {
  const auto pinned = filter_pinned(space, cs);
  json row{{"constraints", labels(cs)}, {"size", pinned.survivors.size()}};
  row["census"] = pinned.survivors.empty() ? json{{"reference", to_json(ref)}, {"counts", json::object()},
                                                  {"total", 0}}
                                           : to_json(census(pinned.survivors, ref));
  row["determinants"] = to_json(pinned.survivors);
  return row;
}

json census_preset_json(const CensusPreset& p) {
  json doc{{"preset", p.name}, {"description", p.description}, {"N", p.N}, {"m", p.m}};
  doc["reference"] = to_json(p.reference);
  auto pinned = p.base_constraints;
  pinned.insert(pinned.end(), p.pinned_constraints.begin(), p.pinned_constraints.end());
  doc["rows"] = json::array({census_row(p.space, p.base_constraints, p.reference),
                             census_row(p.space, pinned, p.reference)});
  return doc;
}

Outcome cmd_census(const Config& c) {
  json doc{{"command", "census"}, {"tables", json::array()}};
  if (!c.preset.empty()) {
    const auto names = c.preset == "all" ? census_preset_names() : split(c.preset, ',');
    for (const auto& n : names) doc["tables"].push_back(census_preset_json(census_preset(n)));
  } else {
    if (!c.N || !c.rank) throw Error(Errc::invalid_argument, "census needs --preset or both --N and --rank");
    const int N = *c.N;
    const int m = *c.rank;
    const ConfigurationSpace space =
        c.sz2 ? enumerate_space(N, m, SpinOrbitalLayout::interleaved((m + 1) / 2).truncated(m), c.sz2)
              : enumerate_space(N, m);
    const Catalog cat = resolve_catalog(c, N, m);
    if (c.constraints == "auto") throw Error(Errc::invalid_argument, "census needs an explicit --constraints list");
    const auto cs = select_constraints(c.constraints, cat, nullptr);
    const Determinant ref = aufbau(N, m);
    json t{{"preset", nullptr}, {"description", "(" + std::to_string(N) + "," + std::to_string(m) + ")"}};
    t["N"] = N;
    t["m"] = m;
    t["reference"] = to_json(ref);
    t["rows"] = json::array({census_row(space, {}, ref), census_row(space, cs, ref)});
    doc["tables"].push_back(t);
  }
  for (const auto& t : doc["tables"]) {
    if (t["rows"].back()["size"].get<std::size_t>() == 0) return {doc, kExitNoSurvivors};
  }
  return {doc};
}

Outcome cmd_truncate(const Config& c) {
  const Problem p = setup(c, c.model);
  const Catalog cat = resolve_catalog(c, p.N, p.m);
  std::optional<PinningReport> rep;
  if (c.constraints.find("auto") != std::string::npos) {
    const CIVector v = solve_ground(p.ints, p.space).front();
    rep = evaluate(cat, natural_spectrum(one_rdm(v), c.tie_tol), {c.tiers, false});
  }
  const auto cs = select_constraints(c.constraints, cat, rep ? &*rep : nullptr);
  PinnedSolveControls ctl;
  ctl.max_iterations = c.max_iter;
  ctl.tie_tolerance = c.tie_tol;
  ctl.reference_energy = c.e_ref;
  const auto res = pinned_solve(p.ints, p.space, cs, ctl);
  json doc{{"command", "truncate"}, {"model", p.model}, {"sector", sector_json(p)}};
  doc["constraints"] = labels(cs);
  doc["result"] = to_json(res);
  return {doc};
}

// scan -----------------------------------------------------------------------

struct ScanPoint {
  json param;
  Config cfg;
  std::string model;
};

Outcome cmd_scan(const Config& c, std::ostream& err) {
  std::vector<ScanPoint> points;
  if (!c.files.empty()) {
    for (const auto& f : c.files) points.push_back({f, c, "file:" + f});
  } else {
    if (c.steps < 1) throw Error(Errc::invalid_argument, "--steps must be at least 1");
    if (c.model.rfind("file:", 0) == 0) throw Error(Errc::invalid_argument, "parameter scans need a built-in model");
    static const std::map<std::string, std::string> owner{
        {"t", "hubbard"}, {"U", "hubbard"}, {"G", "pairing"}, {"spacing", "pairing"}};
    auto it = owner.find(c.param);
    if (it == owner.end() || it->second != c.model) {
      throw Error(Errc::invalid_argument, "--param " + c.param + " does not belong to model " + c.model);
    }
    for (int k = 0; k < c.steps; ++k) {
      const double x = c.steps == 1 ? c.from : c.from + (c.to - c.from) * k / (c.steps - 1);
      Config pc = c;
      if (c.param == "t") pc.t = x;
      if (c.param == "U") pc.U = x;
      if (c.param == "G") pc.G = x;
      if (c.param == "spacing") pc.spacing = x;
      points.push_back({x, pc, c.model});
    }
  }

  // Column layout is fixed by the first point's (N,m) so failed points keep their row shape.
  const Problem first = setup(points.front().cfg, points.front().model);
  const Catalog cat = resolve_catalog(c, first.N, first.m);
  json columns = json::array({"param", "energy"});
  for (int i = 1; i <= first.m; ++i) columns.push_back("n" + std::to_string(i));
  for (const auto* set : {&cat.constraints, &cat.equalities, &cat.bounds})
    for (const auto& g : *set) columns.push_back(g.label());
  columns.push_back("xi");

  json rows = json::array();
  int failures = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    json row = json::array({points[k].param});
    try {
      const Problem p = setup(points[k].cfg, points[k].model);
      if (p.N != first.N || p.m != first.m) throw Error(Errc::dimension_mismatch, "point changes (N,m)");
      const CIVector v = solve_ground(p.ints, p.space).front();
      const auto spec = natural_spectrum(one_rdm(v), c.tie_tol);
      const auto rep = evaluate(cat, spec, {c.tiers, false});
      row.push_back(*v.energy);
      for (double x : spec.n) row.push_back(x);
      for (const auto* set : {&rep.residuals, &rep.equalities, &rep.bounds})
        for (const auto& r : *set) row.push_back(r.value);
      row.push_back(rep.xi);
    } catch (const Error& e) {
      ++failures;
      err << "warning: scan point " << k + 1 << " failed: " << e.what() << '\n';
      while (row.size() < columns.size()) row.push_back(nullptr);
    }
    rows.push_back(row);
  }
  json doc{{"command", "scan"}, {"columns", columns}, {"rows", rows}, {"failed_points", failures}};
  return {doc};
}

// polytope -------------------------------------------------------------------

Outcome cmd_polytope(const Config& c) {
  if (!c.occ.empty()) {
    std::vector<double> n;
    for (const auto& tok : split(c.occ, ',')) n.push_back(parse_double(tok, "--occ"));
    const int m = static_cast<int>(n.size());
    const int N = c.N ? *c.N : static_cast<int>(std::lround(std::accumulate(n.begin(), n.end(), 0.0)));
    const auto spec = OccupationSpectrum::from_occupations(n, N, c.tie_tol);
    const Catalog cat = resolve_catalog(c, N, m);
    const auto rep = evaluate(cat, spec, {c.tiers, false});
    json doc{{"command", "polytope"}, {"mode", "occupations"}};
    doc["spectrum"] = to_json(spec);
    if (auto r = regime_of(spec, c.sz2.value_or(1))) doc["regime"] = *r;
    doc["report"] = to_json(rep);
    return {doc, rep.representability_violation ? kExitViolation : kExitOk};
  }

  if (!c.N || !c.rank) throw Error(Errc::invalid_argument, "polytope needs --occ or both --N and --rank");
  if (c.samples < 1) throw Error(Errc::invalid_argument, "--random must be positive");
  const int N = *c.N;
  const int m = *c.rank;
  const ConfigurationSpace space =
      c.sz2 ? enumerate_space(N, m, SpinOrbitalLayout::interleaved((m + 1) / 2).truncated(m), c.sz2)
            : enumerate_space(N, m);
  const Catalog cat = resolve_catalog(c, N, m);

  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> gauss;
  std::vector<double> min_res(cat.constraints.size(), std::numeric_limits<double>::infinity());
  std::vector<std::size_t> pinned_count(cat.constraints.size(), 0);
  double max_equality = 0.0;
  std::size_t violations = 0;
  std::map<std::string, std::size_t> regimes;
  for (int s = 0; s < c.samples; ++s) {
    CIVector v;
    v.space = space;
    v.coeffs.resize(space.size());
    for (auto& x : v.coeffs) x = gauss(rng);
    const double nrm = v.norm();
    for (auto& x : v.coeffs) x /= nrm;
    const auto spec = natural_spectrum(one_rdm(v), c.tie_tol);
    const auto rep = evaluate(cat, spec, {c.tiers, false});
    for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
      min_res[k] = std::min(min_res[k], rep.residuals[k].value);
      if (rep.residuals[k].tier == Tier::pinned) ++pinned_count[k];
    }
    for (const auto& e : rep.equalities) max_equality = std::max(max_equality, std::abs(e.value));
    if (rep.representability_violation) ++violations;
    if (auto r = regime_of(spec, c.sz2.value_or(0))) ++regimes[*r];
  }

  json doc{{"command", "polytope"}, {"mode", "random"}, {"seed", c.seed}, {"samples", c.samples}};
  doc["N"] = N;
  doc["m"] = m;
  doc["sz2"] = c.sz2 ? json(*c.sz2) : json(nullptr);
  doc["dimension"] = space.size();
  json cons = json::array();
  for (std::size_t k = 0; k < cat.constraints.size(); ++k) {
    cons.push_back({{"label", cat.constraints[k].label()},
                    {"formula", cat.constraints[k].formula()},
                    {"min_residual", min_res[k]},
                    {"pinned_samples", pinned_count[k]}});
  }
  doc["constraints"] = cons;
  if (!cat.equalities.empty()) doc["max_equality_deviation"] = max_equality;
  if (!regimes.empty()) doc["regimes"] = regimes;
  doc["violations"] = violations;
  return {doc, violations ? kExitViolation : kExitOk};
}

// ---------------------------------------------------------------------------
// table and csv rendering

std::string degree_label(int d) {
  static const char* names[] = {"|0>", "S", "D", "T", "Q"};
  return d < 5 ? names[d] : std::to_string(d);
}

void render_spectrum(const json& spec, std::ostream& out) {
  out << "occupations ";
  for (const auto& x : spec["n"]) out << ' ' << num("%.10f", x.get<double>());
  out << '\n';
  out << "trace        " << num("%.10f", spec["trace"].get<double>()) << '\n';
  out << "xi           " << num("%.6e", spec["xi"].get<double>()) << '\n';
}

void render_report(const json& rep, std::ostream& out) {
  std::size_t w = 7;
  for (const auto* key : {"residuals", "equalities", "bounds"})
    for (const auto& r : rep[key]) w = std::max(w, r["formula"].get<std::string>().size());
  out << pad("mu", 6) << pad("constraint", w + 2) << pad("residual", 16, true) << "  tier\n";
  for (const auto* key : {"residuals", "equalities", "bounds"}) {
    for (const auto& r : rep[key]) {
      out << pad(r["label"].get<std::string>(), 6) << pad(r["formula"].get<std::string>(), w + 2)
          << pad(num("%.6e", r["value"].get<double>()), 16, true) << "  " << r["tier"].get<std::string>() << '\n';
    }
  }
  if (rep["degeneracy_warning"].get<bool>()) {
    out << "warning: degenerate occupations; residuals use the canonical ordering\n";
  }
  if (rep["representability_violation"].get<bool>()) out << "error: representability violation\n";
}

void render_header(const json& doc, std::ostream& out) {
  out << "model        " << doc["model"]["label"].get<std::string>() << '\n';
  const auto& s = doc["sector"];
  out << "sector       N=" << s["N"] << " m=" << s["m"] << " 2Sz=" << s["sz2"] << " dim=" << s["dimension"] << '\n';
}

void render_census_table(const json& t, std::ostream& out) {
  int maxdeg = 3;
  for (const auto& row : t["rows"])
    for (const auto& [k, v] : row["census"]["counts"].items()) maxdeg = std::max(maxdeg, std::stoi(k));
  std::size_t w = 12;
  for (const auto& row : t["rows"]) {
    std::string l;
    for (const auto& x : row["constraints"]) l += (l.empty() ? "" : " ") + x.get<std::string>();
    w = std::max(w, l.size() + 2);
  }
  if (!t["preset"].is_null()) out << t["preset"].get<std::string>() << ": ";
  out << t["description"].get<std::string>() << "   reference " << t["reference"].dump() << '\n';
  out << pad("constraints", w);
  for (int d = 0; d <= maxdeg; ++d) out << pad(degree_label(d), 6, true);
  out << pad("Total", 7, true) << '\n';
  for (const auto& row : t["rows"]) {
    std::string l;
    for (const auto& x : row["constraints"]) l += (l.empty() ? "" : " ") + x.get<std::string>();
    out << pad(l.empty() ? "(none)" : l, w);
    const auto& counts = row["census"]["counts"];
    for (int d = 0; d <= maxdeg; ++d) {
      const auto key = std::to_string(d);
      out << pad(std::to_string(counts.contains(key) ? counts[key].get<std::size_t>() : 0), 6, true);
    }
    out << pad(std::to_string(row["size"].get<std::size_t>()), 7, true) << '\n';
  }
}

std::string census_inline(const json& c) {
  std::string s;
  for (const auto& [k, v] : c["counts"].items()) {
    s += (s.empty() ? "" : " ") + degree_label(std::stoi(k)) + ":" + std::to_string(v.get<std::size_t>());
  }
  return s;
}

void render_table(const json& doc, std::ostream& out) {
  const std::string cmd = doc["command"];
  if (cmd == "solve") {
    render_header(doc, out);
    out << "energy       " << num("%.12f", doc["energy"].get<double>()) << " Eh"
        << (doc["degenerate"].get<bool>() ? "  (degenerate)" : "") << '\n';
    out << "reference    " << num("%.12f", doc["reference_energy"].get<double>()) << " Eh\n";
    out << "correlation  " << num("%.6f", doc["correlation_mha"].get<double>()) << " mHa\n";
    render_spectrum(doc["spectrum"], out);
    const auto& wf = doc["wavefunction"];
    std::vector<std::size_t> order(wf["coefficients"].size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(wf["coefficients"][a].get<double>()) > std::abs(wf["coefficients"][b].get<double>());
    });
    out << "leading determinants\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(10, order.size()); ++k) {
      if (std::abs(wf["coefficients"][order[k]].get<double>()) < 5e-11) break;
      out << "  " << pad(wf["determinants"][order[k]].dump(), 20)
          << pad(num("%.10f", wf["coefficients"][order[k]].get<double>()), 14, true) << '\n';
    }
  } else if (cmd == "analyze") {
    render_header(doc, out);
    out << "energy       " << num("%.12f", doc["energy"].get<double>()) << " Eh"
        << (doc["degenerate"].get<bool>() ? "  (degenerate)" : "") << '\n';
    render_spectrum(doc["spectrum"], out);
    if (doc.contains("regime")) out << "regime       " << doc["regime"].get<std::string>() << '\n';
    render_report(doc["report"], out);
  } else if (cmd == "census") {
    bool first = true;
    for (const auto& t : doc["tables"]) {
      if (!first) out << '\n';
      first = false;
      render_census_table(t, out);
    }
  } else if (cmd == "truncate") {
    render_header(doc, out);
    std::string l;
    for (const auto& x : doc["constraints"]) l += (l.empty() ? "" : " ") + x.get<std::string>();
    out << "constraints  " << (l.empty() ? "(none)" : l) << '\n';
    const auto& r = doc["result"];
    out << "reference    " << num("%.12f", r["reference_energy"].get<double>()) << " Eh\n";
    out << pad("", 13) << pad("energy (Eh)", 18, true) << pad("corr (mHa)", 14, true) << pad("dets", 7, true)
        << "  census\n";
    out << pad("full CI", 13) << pad(num("%.12f", r["full_energy"].get<double>()), 18, true)
        << pad(num("%.6f", r["full_correlation_mha"].get<double>()), 14, true)
        << pad(std::to_string(r["full_size"].get<std::size_t>()), 7, true) << "  " << census_inline(r["census_full"])
        << '\n';
    out << pad("pinned", 13) << pad(num("%.12f", r["pinned_energy"].get<double>()), 18, true)
        << pad(num("%.6f", r["pinned_correlation_mha"].get<double>()), 14, true)
        << pad(std::to_string(r["pinned_size"].get<std::size_t>()), 7, true) << "  "
        << census_inline(r["census_pinned"]) << '\n';
    out << "recovered    " << num("%.2f", 100.0 * r["recovered_fraction"].get<double>()) << "%\n";
    out << "iterations   " << r["iterations"] << (r["converged"].get<bool>() ? " (converged)" : " (not converged)")
        << '\n';
  } else if (cmd == "scan") {
    const auto& cols = doc["columns"];
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? " " : "") << pad(cols[k].get<std::string>(), 16, k > 0);
    out << '\n';
    for (const auto& row : doc["rows"]) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        std::string cell = row[k].is_string() ? row[k].get<std::string>()
                           : k == 0            ? num("%.6g", jnum(row[k]))
                                               : num("%.10f", jnum(row[k]));
        out << (k ? " " : "") << pad(cell, 16, k > 0);
      }
      out << '\n';
    }
  } else if (cmd == "polytope") {
    if (doc["mode"] == "occupations") {
      render_spectrum(doc["spectrum"], out);
      if (doc.contains("regime")) out << "regime       " << doc["regime"].get<std::string>() << '\n';
      render_report(doc["report"], out);
    } else {
      out << "samples      " << doc["samples"] << " (seed " << doc["seed"] << ")\n";
      out << "sector       N=" << doc["N"] << " m=" << doc["m"] << " 2Sz=" << doc["sz2"].dump()
          << " dim=" << doc["dimension"] << '\n';
      out << pad("mu", 6) << pad("min residual", 16, true) << pad("pinned", 9, true) << "  constraint\n";
      for (const auto& c : doc["constraints"]) {
        out << pad(c["label"].get<std::string>(), 6) << pad(num("%.6e", c["min_residual"].get<double>()), 16, true)
            << pad(std::to_string(c["pinned_samples"].get<std::size_t>()), 9, true) << "  "
            << c["formula"].get<std::string>() << '\n';
      }
      if (doc.contains("max_equality_deviation")) {
        out << "max |n_r + n_(m+1-r) - 1|  " << num("%.3e", doc["max_equality_deviation"].get<double>()) << '\n';
      }
      if (doc.contains("regimes")) {
        out << "regimes     ";
        for (const auto& [k, v] : doc["regimes"].items()) out << ' ' << k << '=' << v;
        out << '\n';
      }
      out << "violations   " << doc["violations"] << '\n';
    }
  }
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "nan";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  return num("%.12g", v.get<double>());
}

void render_csv(const json& doc, std::ostream& out) {
  const std::string cmd = doc["command"];
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  };
  if (cmd == "scan") {
    std::vector<std::string> head;
    for (const auto& c : doc["columns"]) head.push_back(c.get<std::string>());
    line(head);
    for (const auto& row : doc["rows"]) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(csv_cell(v));
      line(cells);
    }
  } else if (cmd == "analyze" || (cmd == "polytope" && doc["mode"] == "occupations")) {
    line({"label", "formula", "residual", "tier"});
    for (const auto* key : {"residuals", "equalities", "bounds"})
      for (const auto& r : doc["report"][key])
        line({csv_cell(r["label"]), csv_cell(r["formula"]), csv_cell(r["value"]), csv_cell(r["tier"])});
  } else if (cmd == "census") {
    line({"table", "constraints", "degree0", "degree1", "degree2", "degree3", "degree4", "total"});
    for (const auto& t : doc["tables"]) {
      const std::string name = t["preset"].is_null() ? t["description"].get<std::string>() : t["preset"].get<std::string>();
      for (const auto& row : t["rows"]) {
        std::string l;
        for (const auto& x : row["constraints"]) l += (l.empty() ? "" : " ") + x.get<std::string>();
        std::vector<std::string> cells{name, l};
        for (int d = 0; d <= 4; ++d) {
          const auto key = std::to_string(d);
          const auto& cnt = row["census"]["counts"];
          cells.push_back(std::to_string(cnt.contains(key) ? cnt[key].get<std::size_t>() : 0));
        }
        cells.push_back(std::to_string(row["size"].get<std::size_t>()));
        line(cells);
      }
    }
  } else if (cmd == "truncate") {
    const auto& r = doc["result"];
    line({"full_energy", "pinned_energy", "reference_energy", "full_correlation_mha", "pinned_correlation_mha",
          "recovered_fraction", "full_size", "pinned_size", "iterations", "converged"});
    line({csv_cell(r["full_energy"]), csv_cell(r["pinned_energy"]), csv_cell(r["reference_energy"]),
          csv_cell(r["full_correlation_mha"]), csv_cell(r["pinned_correlation_mha"]),
          csv_cell(r["recovered_fraction"]), csv_cell(r["full_size"]), csv_cell(r["pinned_size"]),
          csv_cell(r["iterations"]), csv_cell(r["converged"])});
  } else if (cmd == "solve") {
    std::vector<std::string> head{"energy", "reference_energy", "correlation_mha"};
    std::vector<std::string> cells{csv_cell(doc["energy"]), csv_cell(doc["reference_energy"]),
                                   csv_cell(doc["correlation_mha"])};
    for (std::size_t i = 0; i < doc["spectrum"]["n"].size(); ++i) {
      head.push_back("n" + std::to_string(i + 1));
      cells.push_back(csv_cell(doc["spectrum"]["n"][i]));
    }
    head.push_back("xi");
    cells.push_back(csv_cell(doc["spectrum"]["xi"]));
    line(head);
    line(cells);
  } else if (cmd == "polytope") {
    line({"label", "formula", "min_residual", "pinned_samples"});
    for (const auto& c : doc["constraints"])
      line({csv_cell(c["label"]), csv_cell(c["formula"]), csv_cell(c["min_residual"]),
            csv_cell(c["pinned_samples"])});
  }
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::representability_violation: return kExitViolation;
    case Errc::no_survivors: return kExitNoSurvivors;
    default: return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Configuration interaction with generalized Pauli constraint analysis", "gpcci"};
  app.require_subcommand(1);

  int N = 0, sz2 = 0, rank = 0;
  double e_ref = 0.0;
  std::string tiers;
  auto* oN = app.add_option("--N", N, "particle number");
  auto* oSz = app.add_option("--sz", sz2, "2 S_z (n_up - n_down)");
  auto* oRank = app.add_option("--rank", rank, "keep the first m spin orbitals");
  auto* oEref = app.add_option("--e-ref", e_ref, "reference energy for correlation energies (Eh)");
  app.add_option("--model", c.model, "hubbard, pairing or file:<path>");
  app.add_option("--sites", c.sites, "Hubbard sites");
  app.add_option("--t", c.t, "Hubbard hopping");
  app.add_option("--U", c.U, "Hubbard on-site repulsion");
  app.add_flag("--periodic", c.periodic, "close the Hubbard chain into a ring");
  app.add_option("--levels", c.levels, "pairing levels");
  app.add_option("--spacing", c.spacing, "pairing level spacing");
  app.add_option("--G", c.G, "pairing strength");
  app.add_option("--constraints", c.constraints, "comma list of mu, E<r>, P<r>, bd, doubles or auto");
  app.add_option("--catalog", c.catalogs, "extra constraint files");
  app.add_option("--tiers", tiers, "pinned,strong,quasi thresholds");
  app.add_option("--format", c.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--seed", c.seed, "seed for random sampling");
  app.add_option("--tie-tol", c.tie_tol, "occupation tie tolerance");
  app.add_option("--preset", c.preset, "census preset name, comma list or 'all'");
  app.add_option("--occ", c.occ, "comma list of occupations");
  app.add_option("--random", c.samples, "number of random CI vectors");
  app.add_option("--param", c.param, "scan parameter: U, t, G or spacing");
  app.add_option("--from", c.from, "scan start");
  app.add_option("--to", c.to, "scan end");
  app.add_option("--steps", c.steps, "scan points");
  app.add_option("--files", c.files, "integral files to scan over")->delimiter(',');
  app.add_option("--max-iter", c.max_iter, "natural-orbital iterations for truncate");

  const std::pair<const char*, const char*> commands[] = {
      {"solve", "full CI ground state, energies and wave function"},
      {"analyze", "natural occupations and constraint residuals of the ground state"},
      {"census", "determinant counts before and after imposing pinned constraints"},
      {"truncate", "pinned-space CI compared with full CI"},
      {"scan", "residuals along a model parameter or over integral files"},
      {"polytope", "residuals of given occupations or of random CI vectors"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (oN->count()) c.N = N;
    if (oSz->count()) c.sz2 = sz2;
    if (oRank->count()) c.rank = rank;
    if (oEref->count()) c.e_ref = e_ref;
    if (!tiers.empty()) c.tiers = parse_tiers(tiers);
    c.command = app.get_subcommands().front()->get_name();

    Outcome o;
    if (c.command == "solve") o = cmd_solve(c);
    else if (c.command == "analyze") o = cmd_analyze(c);
    else if (c.command == "census") o = cmd_census(c);
    else if (c.command == "truncate") o = cmd_truncate(c);
    else if (c.command == "scan") o = cmd_scan(c, err);
    else o = cmd_polytope(c);

    if (c.format == "json") {
      out << o.doc.dump(2) << '\n';
    } else if (c.format == "csv") {
      render_csv(o.doc, out);
    } else {
      render_table(o.doc, out);
    }
    if (o.code == kExitNoSurvivors) err << "error: imposed constraints remove every determinant\n";
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace gpcci::cli
