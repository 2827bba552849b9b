#include "gpcci/integrals.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "gpcci/error.hpp"

namespace gpcci {

SpatialIntegrals::SpatialIntegrals(int n_spatial)
    : h(Eigen::MatrixXd::Zero(n_spatial, n_spatial)),
      n_(n_spatial),
      g_(static_cast<std::size_t>(n_spatial) * n_spatial * n_spatial * n_spatial, 0.0) {
  if (n_spatial <= 0) throw Error(Errc::invalid_argument, "n_spatial must be positive");
}

void SpatialIntegrals::set_g(int i, int j, int k, int l, double v) {
  for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
    for (auto [c, d] : {std::pair{k, l}, std::pair{l, k}}) {
      g_[index(a, b, c, d)] = v;
      g_[index(c, d, a, b)] = v;
    }
  }
}

void SpatialIntegrals::set_h(int i, int j, double v) {
  h(i, j) = v;
  h(j, i) = v;
}

double SpatialIntegrals::symmetry_error() const {
  double err = (h - h.transpose()).cwiseAbs().maxCoeff();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          const double v = g(i, j, k, l);
          for (double w : {g(j, i, k, l), g(i, j, l, k), g(k, l, i, j)}) {
            err = std::max(err, std::abs(v - w));
          }
        }
  return err;
}

// ---------------------------------------------------------------------------

SpinOrbitalIntegrals::SpinOrbitalIntegrals(int m, SpinOrbitalLayout layout)
    : h(Eigen::MatrixXd::Zero(m, m)),
      m_(m),
      layout_(std::move(layout)),
      g_(static_cast<std::size_t>(m) * m * m * m, 0.0) {
  if (layout_.m() != m) throw Error(Errc::dimension_mismatch, "layout width differs from m");
}

SpinOrbitalIntegrals SpinOrbitalIntegrals::truncated(int m_new) const {
  if (m_new <= 0 || m_new > m_) {
    throw Error(Errc::invalid_argument, "rank " + std::to_string(m_new) + " outside 1.." +
                                            std::to_string(m_));
  }
  SpinOrbitalIntegrals out(m_new, layout_.truncated(m_new));
  out.core_energy = core_energy;
  out.h = h.topLeftCorner(m_new, m_new);
  for (int p = 0; p < m_new; ++p)
    for (int q = 0; q < m_new; ++q)
      for (int r = 0; r < m_new; ++r)
        for (int s = 0; s < m_new; ++s) out.set_anti(p, q, r, s, anti(p, q, r, s));
  return out;
}

SpinOrbitalIntegrals SpinOrbitalIntegrals::rotated(const OrbitalRotation& rot) const {
  if (rot.m() != m_) throw Error(Errc::dimension_mismatch, "rotation width differs from integrals");
  const Eigen::MatrixXd& U = rot.U;
  SpinOrbitalIntegrals out(m_, rot.target_layout ? *rot.target_layout : layout_);
  out.core_energy = core_energy;
  out.h = U * h * U.transpose();

  // Four quarter transformations, one index at a time.
  const std::size_t n = m_;
  std::vector<double> a = g_, b(a.size(), 0.0);
  for (int pos = 0; pos < 4; ++pos) {
    std::fill(b.begin(), b.end(), 0.0);
    std::array<std::size_t, 4> stride{n * n * n, n * n, n, 1};
    const std::size_t st = stride[pos];
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
      const std::size_t old_k = (idx / st) % n;
      const std::size_t base = idx - old_k * st;
      const double v = a[idx];
      if (v == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const double u = U(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(old_k));
        if (u != 0.0) b[base + k * st] += u * v;
      }
    }
    std::swap(a, b);
  }
  out.g_ = std::move(a);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void parse_fail(const std::string& source, int line_no, const std::string& msg) {
  throw Error(Errc::parse_error, source + ":" + std::to_string(line_no) + ": " + msg);
}

template <class T>
bool parse_number(const std::string& tok, T& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

SpatialIntegrals parse_integrals(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;

  // Header: "NORB=.. NELEC=.. MS2=.." on one line, or an &FCI ... &END namelist.
  std::string header;
  int header_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    header = body;
    header_line = line_no;
    if (body.find("&FCI") != std::string::npos) {
      auto closed = [](const std::string& s) {
        return s.find("&END") != std::string::npos || s.find('/') != std::string::npos;
      };
      while (!closed(header) && std::getline(in, line)) {
        ++line_no;
        header += " " + strip_comment(line);
      }
    }
    break;
  }
  if (header.empty()) parse_fail(source, line_no, "missing NORB header");

  std::map<std::string, int> keys;
  static const std::regex kv(R"((NORB|NELEC|MS2)\s*=\s*([-+]?\d+))", std::regex::icase);
  for (auto it = std::sregex_iterator(header.begin(), header.end(), kv); it != std::sregex_iterator();
       ++it) {
    std::string key = (*it)[1];
    std::transform(key.begin(), key.end(), key.begin(), ::toupper);
    keys[key] = std::stoi((*it)[2]);
  }
  if (!keys.count("NORB") || keys["NORB"] <= 0) parse_fail(source, header_line, "missing NORB header");

  const int n = keys["NORB"];
  SpatialIntegrals ints(n);
  if (keys.count("NELEC")) ints.nelec = keys["NELEC"];
  if (keys.count("MS2")) ints.ms2 = keys["MS2"];

  // Canonical key -> value, for conflict detection among duplicates.
  std::map<std::array<int, 4>, double> seen;
  auto record = [&](std::array<int, 4> key, double v) {
    auto [it, inserted] = seen.emplace(key, v);
    if (!inserted && std::abs(it->second - v) > 1e-10) {
      throw Error(Errc::symmetry_violation,
                  source + ":" + std::to_string(line_no) + ": conflicting duplicate entry");
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream ss(body);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.size() != 5) parse_fail(source, line_no, "expected '<value> i j k l'");
    double v = 0.0;
    std::array<int, 4> idx{};
    if (!parse_number(tok[0], v)) parse_fail(source, line_no, "bad value '" + tok[0] + "'");
    for (int c = 0; c < 4; ++c) {
      if (!parse_number(tok[c + 1], idx[c]) || idx[c] < 0 || idx[c] > n) {
        parse_fail(source, line_no, "bad orbital index '" + tok[c + 1] + "'");
      }
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      record({0, 0, 0, 0}, v);
      ints.core_energy = v;
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      std::pair<int, int> a{std::max(i, j), std::min(i, j)};
      std::pair<int, int> b{std::max(k, l), std::min(k, l)};
      if (a < b) std::swap(a, b);
      record({a.first, a.second, b.first, b.second}, v);
      ints.set_g(i - 1, j - 1, k - 1, l - 1, v);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      record({std::max(i, j), std::min(i, j), 0, 0}, v);
      ints.set_h(i - 1, j - 1, v);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // Orbital energy line ("e i 0 0 0"); carries no Hamiltonian information.
    } else {
      parse_fail(source, line_no, "unsupported index pattern");
    }
  }
  return ints;
}

SpatialIntegrals load_integral_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open integral file " + path.string());
  return parse_integrals(in, path.string());
}

void write_integrals(std::ostream& out, const SpatialIntegrals& ints, int nelec, int ms2) {
  const int n = ints.n_spatial();
  char buf[64];
  auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << ' ' << i << ' ' << j << ' ' << k << ' ' << l << '\n';
  };
  out << "NORB=" << n << " NELEC=" << nelec << " MS2=" << ms2 << '\n';
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          const double v = ints.g(i, j, k, l);
          if (v != 0.0) emit(v, i + 1, j + 1, k + 1, l + 1);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (ints.h(i, j) != 0.0) emit(ints.h(i, j), i + 1, j + 1, 0, 0);
  emit(ints.core_energy, 0, 0, 0, 0);
}

void write_integral_file(const std::filesystem::path& path, const SpatialIntegrals& ints, int nelec,
                         int ms2) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_integrals(out, ints, nelec, ms2);
}

SpatialIntegrals hubbard_chain(int sites, double t, double U, bool periodic) {
  if (sites < 2) throw Error(Errc::invalid_argument, "hubbard chain needs at least 2 sites");
  SpatialIntegrals ints(sites);
  for (int i = 0; i + 1 < sites; ++i) ints.set_h(i, i + 1, -t);
  // Two sites wrap onto the bond that already exists.
  if (periodic && sites > 2) ints.set_h(sites - 1, 0, -t);
  for (int i = 0; i < sites; ++i) ints.set_g(i, i, i, i, U);
  return ints;
}

SpatialIntegrals pairing_model(int levels, double spacing, double G) {
  if (levels < 2) throw Error(Errc::invalid_argument, "pairing model needs at least 2 levels");
  if (G < 0) throw Error(Errc::invalid_argument, "pairing strength G must be >= 0");
  SpatialIntegrals ints(levels);
  for (int k = 0; k < levels; ++k) ints.h(k, k) = (k + 1) * spacing;
  for (int k = 0; k < levels; ++k)
    for (int l = 0; l < levels; ++l)
      if (G != 0.0) ints.set_g(k, l, k, l, -G);
  return ints;
}

SpinOrbitalIntegrals to_spin_orbitals(const SpatialIntegrals& s, SpinOrdering ordering) {
  const int n = s.n_spatial();
  SpinOrbitalLayout layout = ordering == SpinOrdering::interleaved ? SpinOrbitalLayout::interleaved(n)
                                                                   : SpinOrbitalLayout::blocked(n);
  const int m = 2 * n;
  SpinOrbitalIntegrals out(m, layout);
  out.core_energy = s.core_energy;
  const auto& sp = layout.spatial_of;
  const auto& sg = layout.spin_of;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      if (sg[p] == sg[q]) out.h(p, q) = s.h(sp[p], sp[q]);

  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int t = 0; t < m; ++t) {
          double v = 0.0;
          if (sg[p] == sg[r] && sg[q] == sg[t]) v += s.g(sp[p], sp[r], sp[q], sp[t]);
          if (sg[p] == sg[t] && sg[q] == sg[r]) v -= s.g(sp[p], sp[t], sp[q], sp[r]);
          out.set_anti(p, q, r, t, v);
        }
  return out;
}

}  // namespace gpcci
