#include "gpcci/gpc.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gpcci/error.hpp"
#include "gpcci/kernels/forms.hpp"

namespace gpcci {

double GPConstraint::value(std::span<const double> n) const {
  double acc = static_cast<double>(kappa0);
  for (std::size_t i = 0; i < kappa.size() && i < n.size(); ++i) acc = acc + static_cast<double>(kappa[i]) * n[i];
  return acc;
}

std::string GPConstraint::label() const {
  switch (kind) {
    case ConstraintKind::inequality: return "D" + std::to_string(mu);
    case ConstraintKind::equality: return "E" + std::to_string(mu);
    case ConstraintKind::bound: return "P" + std::to_string(mu);
  }
  return "?";
}

std::string GPConstraint::formula() const {
  std::ostringstream os;
  bool first = true;
  if (kappa0 != 0) {
    os << kappa0;
    first = false;
  }
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    const std::int64_t k = kappa[i];
    if (k == 0) continue;
    const std::int64_t mag = k < 0 ? -k : k;
    if (first) {
      if (k < 0) os << '-';
    } else {
      os << (k < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag << ' ';
    os << 'n' << i + 1;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------

const GPConstraint* Catalog::find(int mu) const {
  for (const auto& c : constraints)
    if (c.mu == mu) return &c;
  return nullptr;
}

const GPConstraint& Catalog::at(int mu) const {
  if (const auto* c = find(mu)) return *c;
  throw Error(Errc::invalid_argument, "catalog (" + std::to_string(N) + "," + std::to_string(m) +
                                          ") has no constraint mu=" + std::to_string(mu));
}

const GPConstraint& Catalog::equality(int r) const {
  for (const auto& c : equalities)
    if (c.mu == r) return c;
  throw Error(Errc::invalid_argument, "catalog has no equality E" + std::to_string(r));
}

// ---------------------------------------------------------------------------

Catalog parse_catalog(std::istream& in, const std::string& source) {
  Catalog cat;
  cat.source = CatalogSource::file;
  std::set<std::tuple<int, int, int>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ss(line);
    std::vector<long long> values;
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw Error(Errc::parse_error, source + ":" + std::to_string(line_no) + ": '" + tok +
                                           "' is not an integer");
      }
      values.push_back(v);
    }
    if (values.empty()) continue;
    if (values.size() < 4) {
      throw Error(Errc::parse_error, source + ":" + std::to_string(line_no) +
                                         ": expected 'N m mu kappa0 kappa1 ... kappam'");
    }
    GPConstraint c;
    c.N = static_cast<int>(values[0]);
    c.m = static_cast<int>(values[1]);
    c.mu = static_cast<int>(values[2]);
    c.kappa0 = values[3];
    if (c.N <= 0 || c.m <= 0 || c.m > kMaxOrbitals || c.N > c.m) {
      throw Error(Errc::parse_error, source + ":" + std::to_string(line_no) + ": bad (N,m)");
    }
    if (values.size() != static_cast<std::size_t>(4 + c.m)) {
      throw Error(Errc::inconsistent_width, source + ":" + std::to_string(line_no) + ": expected " +
                                                std::to_string(c.m) + " coefficients, got " +
                                                std::to_string(values.size() - 4));
    }
    if (cat.m != 0 && (c.N != cat.N || c.m != cat.m)) {
      throw Error(Errc::inconsistent_width, source + ":" + std::to_string(line_no) +
                                                ": constraint for a different (N,m) than earlier lines");
    }
    if (!seen.insert({c.N, c.m, c.mu}).second) {
      throw Error(Errc::duplicate_constraint, source + ":" + std::to_string(line_no) + ": mu=" +
                                                  std::to_string(c.mu) + " repeated");
    }
    c.kappa.assign(values.begin() + 4, values.end());
    cat.N = c.N;
    cat.m = c.m;
    cat.constraints.push_back(std::move(c));
  }
  return cat;
}

Catalog load_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open catalog file " + path.string());
  return parse_catalog(in, path.string());
}

void write_catalog(std::ostream& out, const Catalog& cat) {
  for (const auto& c : cat.constraints) {
    out << c.N << ' ' << c.m << ' ' << c.mu << ' ' << c.kappa0;
    for (auto k : c.kappa) out << ' ' << k;
    out << '\n';
  }
}

void append_catalog(Catalog& into, const Catalog& more) {
  if (more.constraints.empty()) return;
  if (into.m != 0 && (into.N != more.N || into.m != more.m)) {
    throw Error(Errc::inconsistent_width, "cannot merge catalogs of different (N,m)");
  }
  for (const auto& c : more.constraints) {
    if (into.find(c.mu)) {
      throw Error(Errc::duplicate_constraint, "mu=" + std::to_string(c.mu) + " already in catalog");
    }
  }
  into.N = more.N;
  into.m = more.m;
  into.constraints.insert(into.constraints.end(), more.constraints.begin(), more.constraints.end());
}

// ---------------------------------------------------------------------------

const char* to_string(Tier t) noexcept {
  switch (t) {
    case Tier::pinned: return "pinned";
    case Tier::strong_quasipinned: return "strong-quasipinned";
    case Tier::quasipinned: return "quasipinned";
    case Tier::unpinned: return "unpinned";
  }
  return "?";
}

Tier classify_tier(double r, const TierThresholds& th) noexcept {
  const double a = std::abs(r);
  if (a <= th.pinned) return Tier::pinned;
  if (a <= th.strong) return Tier::strong_quasipinned;
  if (a <= th.quasi) return Tier::quasipinned;
  return Tier::unpinned;
}

namespace {

std::vector<Residual> evaluate_set(const std::vector<GPConstraint>& set, const std::vector<double>& n,
                                   const TierThresholds& th) {
  std::vector<Residual> out;
  if (set.empty()) return out;
  const std::size_t m = n.size();
  std::vector<double> coeffs(set.size() * m), offsets(set.size()), values(set.size());
  for (std::size_t c = 0; c < set.size(); ++c) {
    offsets[c] = static_cast<double>(set[c].kappa0);
    for (std::size_t i = 0; i < m; ++i) coeffs[c * m + i] = static_cast<double>(set[c].kappa[i]);
  }
  kernels::affine_forms(coeffs, offsets, n, values);
  for (std::size_t c = 0; c < set.size(); ++c) out.push_back({set[c], values[c], classify_tier(values[c], th)});
  return out;
}

bool unequal_inside_group(const GPConstraint& c, const std::vector<std::vector<int>>& groups) {
  for (const auto& g : groups) {
    for (int i : g)
      if (c.kappa[i] != c.kappa[g.front()]) return true;
  }
  return false;
}

}  // namespace

PinningReport evaluate(const Catalog& cat, const OccupationSpectrum& spec, const EvaluateOptions& opt) {
  if (spec.m() != cat.m) {
    throw Error(Errc::dimension_mismatch, "spectrum has " + std::to_string(spec.m()) +
                                              " occupations, catalog expects " + std::to_string(cat.m));
  }
  // tie groups may be reordered by eigenvector, so small inversions inside a group are allowed
  std::vector<int> group_of(spec.m(), -1);
  for (std::size_t g = 0; g < spec.degeneracy_groups.size(); ++g)
    for (int i : spec.degeneracy_groups[g]) group_of[i] = static_cast<int>(g);
  for (int i = 0; i + 1 < spec.m(); ++i) {
    if (spec.n[i + 1] > spec.n[i] && (group_of[i] < 0 || group_of[i] != group_of[i + 1])) {
      throw Error(Errc::unsorted_spectrum, "occupations must be in decreasing order");
    }
  }

  PinningReport rep;
  rep.N = cat.N;
  rep.m = cat.m;
  rep.residuals = evaluate_set(cat.constraints, spec.n, opt.tiers);
  rep.equalities = evaluate_set(cat.equalities, spec.n, opt.tiers);
  rep.bounds = evaluate_set(cat.bounds, spec.n, opt.tiers);
  rep.xi = hf_distance(spec);

  for (const auto* set : {&rep.residuals, &rep.equalities, &rep.bounds}) {
    for (const auto& r : *set) {
      if (unequal_inside_group(r.constraint, spec.degeneracy_groups)) rep.degeneracy_warning = true;
    }
  }

  std::string what;
  for (const auto* set : {&rep.residuals, &rep.bounds}) {
    for (const auto& r : *set) {
      if (r.value < -kViolationTolerance) what += " " + r.constraint.label() + "=" + std::to_string(r.value);
    }
  }
  for (const auto& r : rep.equalities) {
    if (std::abs(r.value) > kViolationTolerance) what += " " + r.constraint.label() + "=" + std::to_string(r.value);
  }
  if (!what.empty()) {
    rep.representability_violation = true;
    if (opt.throw_on_violation) throw Error(Errc::representability_violation, "violated:" + what);
  }
  return rep;
}

// ---------------------------------------------------------------------------

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::weak: return "weak";
    case Regime::strong: return "strong";
    case Regime::border: return "border";
  }
  return "?";
}

Regime classify_regime_36(const OccupationSpectrum& spec, double tol) {
  if (spec.m() != 6 || spec.N != 3) throw Error(Errc::wrong_rank, "regime classification needs (N,m)=(3,6)");
  const auto& n = spec.n;
  const bool weak = std::abs(n[0] + n[1] + n[3] - 2.0) <= tol;
  const bool strong = std::abs(n[0] + n[1] + n[2] - 2.0) <= tol;
  if (weak && strong) return Regime::border;
  if (weak) return Regime::weak;
  if (strong) return Regime::strong;
  throw Error(Errc::not_spin_compensated, "neither n1+n2+n4=2 nor n1+n2+n3=2 holds");
}

}  // namespace gpcci
