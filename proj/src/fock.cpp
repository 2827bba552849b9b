#include "gpcci/fock.hpp"

#include <algorithm>
#include <sstream>

#include "gpcci/error.hpp"

namespace gpcci {

namespace {

std::uint64_t width_mask(int m) {
  return m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
}

void check_width(int m) {
  if (m > kMaxOrbitals) {
    throw Error(Errc::width_overflow, "m=" + std::to_string(m) + " exceeds 64 spin orbitals");
  }
  if (m <= 0) throw Error(Errc::invalid_argument, "m must be positive");
}

bool in_sector(std::uint64_t mask, std::uint64_t up_mask, std::uint64_t down_mask, int sz2) {
  return std::popcount(mask & up_mask) - std::popcount(mask & down_mask) == sz2;
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t SpinOrbitalLayout::spin_mask(Spin s) const noexcept {
  std::uint64_t out = 0;
  for (int i = 0; i < m(); ++i) {
    if (spin_of[i] == s) out |= std::uint64_t{1} << i;
  }
  return out;
}

void SpinOrbitalLayout::validate() const {
  if (spin_of.size() != spatial_of.size()) {
    throw Error(Errc::invalid_argument, "layout: spin_of and spatial_of differ in length");
  }
  if (m() > kMaxOrbitals) throw Error(Errc::width_overflow, "layout wider than 64");
  std::map<int, std::pair<int, int>> seen;
  for (int i = 0; i < m(); ++i) {
    auto& [up, down] = seen[spatial_of[i]];
    (spin_of[i] == Spin::up ? up : down) += 1;
    if (up > 1 || down > 1) {
      throw Error(Errc::invalid_argument, "layout: spatial orbital " +
                                              std::to_string(spatial_of[i] + 1) +
                                              " carries a repeated spin");
    }
  }
}

SpinOrbitalLayout SpinOrbitalLayout::interleaved(int n_spatial) {
  SpinOrbitalLayout l;
  for (int p = 0; p < n_spatial; ++p) {
    l.spin_of.push_back(Spin::up);
    l.spatial_of.push_back(p);
    l.spin_of.push_back(Spin::down);
    l.spatial_of.push_back(p);
  }
  return l;
}

SpinOrbitalLayout SpinOrbitalLayout::blocked(int n_spatial) {
  SpinOrbitalLayout l;
  for (Spin s : {Spin::up, Spin::down}) {
    for (int p = 0; p < n_spatial; ++p) {
      l.spin_of.push_back(s);
      l.spatial_of.push_back(p);
    }
  }
  return l;
}

SpinOrbitalLayout SpinOrbitalLayout::from_up_set(int m, std::span<const int> up) {
  check_width(m);
  SpinOrbitalLayout l;
  l.spin_of.assign(m, Spin::down);
  l.spatial_of.resize(m);
  for (int i = 0; i < m; ++i) l.spatial_of[i] = i;
  for (int i : up) {
    if (i < 0 || i >= m) throw Error(Errc::invalid_argument, "layout: orbital index out of range");
    l.spin_of[i] = Spin::up;
  }
  return l;
}

SpinOrbitalLayout SpinOrbitalLayout::truncated(int m_new) const {
  if (m_new > m()) throw Error(Errc::invalid_argument, "cannot truncate layout to a larger width");
  SpinOrbitalLayout l;
  l.spin_of.assign(spin_of.begin(), spin_of.begin() + m_new);
  l.spatial_of.assign(spatial_of.begin(), spatial_of.begin() + m_new);
  return l;
}

// ---------------------------------------------------------------------------

Determinant::Determinant(std::uint64_t mask, int m) : mask_(mask), m_(m) {
  check_width(m);
  if ((mask & ~width_mask(m)) != 0) {
    throw Error(Errc::invalid_argument, "determinant mask has bits beyond width m");
  }
}

Determinant Determinant::from_orbitals(std::span<const int> one_based, int m) {
  check_width(m);
  std::uint64_t mask = 0;
  for (int i : one_based) {
    if (i < 1 || i > m) {
      throw Error(Errc::invalid_argument, "orbital " + std::to_string(i) + " outside 1.." +
                                              std::to_string(m));
    }
    const std::uint64_t bit = std::uint64_t{1} << (i - 1);
    if (mask & bit) throw Error(Errc::invalid_argument, "orbital listed twice");
    mask |= bit;
  }
  return Determinant(mask, m);
}

Determinant Determinant::from_orbitals(std::initializer_list<int> one_based, int m) {
  return from_orbitals(std::span<const int>(one_based.begin(), one_based.size()), m);
}

std::vector<int> Determinant::orbitals() const {
  std::vector<int> out;
  out.reserve(count());
  for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

std::string Determinant::to_string() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (int i : orbitals()) {
    if (!first) os << ',';
    os << i + 1;
    first = false;
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> ConfigurationSpace::index_of(std::uint64_t mask) const {
  auto it = std::lower_bound(dets.begin(), dets.end(), mask,
                             [](const Determinant& d, std::uint64_t v) { return d.mask() < v; });
  if (it == dets.end() || it->mask() != mask) return std::nullopt;
  return static_cast<std::size_t>(it - dets.begin());
}

ConfigurationSpace enumerate_space(int N, int m, const std::optional<SpinOrbitalLayout>& layout,
                                   std::optional<int> sz2) {
  check_width(m);
  if (N <= 0 || N > m) {
    throw Error(Errc::invalid_argument, "need 0 < N <= m (N=" + std::to_string(N) +
                                            ", m=" + std::to_string(m) + ")");
  }
  if (sz2 && !layout) throw Error(Errc::invalid_argument, "an S_z sector requires a spin layout");
  if (layout) {
    layout->validate();
    if (layout->m() != m) throw Error(Errc::mismatched_width, "layout width differs from m");
  }

  ConfigurationSpace space;
  space.N = N;
  space.m = m;
  space.layout = layout;
  space.sz2 = sz2;

  const std::uint64_t up = layout ? layout->spin_mask(Spin::up) : 0;
  const std::uint64_t down = layout ? layout->spin_mask(Spin::down) : 0;
  const std::uint64_t top = width_mask(m);

  // Gosper's hack walks N-subsets in increasing numeric order.
  std::uint64_t x = (N == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << N) - 1);
  while (true) {
    if (!sz2 || in_sector(x, up, down, *sz2)) space.dets.emplace_back(x, m);
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    if (r == 0) break;
    const std::uint64_t next = (((r ^ x) >> 2) / c) | r;
    if ((next & ~top) != 0 || next < x) break;
    x = next;
  }

  if (space.dets.empty()) {
    throw Error(Errc::invalid_sector, "no determinant with N=" + std::to_string(N) +
                                          " in sector 2S_z=" + std::to_string(sz2.value_or(0)));
  }
  return space;
}

ConfigurationSpace subspace(const ConfigurationSpace& parent, std::vector<Determinant> dets) {
  ConfigurationSpace out;
  out.N = parent.N;
  out.m = parent.m;
  out.layout = parent.layout;
  out.sz2 = parent.sz2;
  std::sort(dets.begin(), dets.end());
  dets.erase(std::unique(dets.begin(), dets.end()), dets.end());
  for (const auto& d : dets) {
    if (d.m() != parent.m) throw Error(Errc::mismatched_width, "determinant width differs");
    if (d.count() != parent.N) {
      throw Error(Errc::mismatched_particle_number, "determinant " + d.to_string() +
                                                        " has the wrong particle number");
    }
    if (parent.layout && parent.sz2) {
      int up = 0;
      for (int i = 0; i < d.m(); ++i)
        if (d.occupied(i)) up += parent.layout->spin_of[i] == Spin::up ? 1 : -1;
      if (up != *parent.sz2) throw Error(Errc::sector_violation, "determinant " + d.to_string() + " is outside the S_z sector");
    }
  }
  out.dets = std::move(dets);
  return out;
}

ConfigurationSpace closure(const ConfigurationSpace& space) {
  return enumerate_space(space.N, space.m, space.layout, space.sz2);
}

int excitation_degree(const Determinant& reference, const Determinant& det) {
  if (reference.m() != det.m()) throw Error(Errc::mismatched_width, "determinant widths differ");
  if (reference.count() != det.count()) {
    throw Error(Errc::mismatched_particle_number, "determinant particle numbers differ");
  }
  return std::popcount(reference.mask() ^ det.mask()) / 2;
}

std::size_t ExcitationCensus::at(int degree) const {
  auto it = counts.find(degree);
  return it == counts.end() ? 0 : it->second;
}

std::size_t ExcitationCensus::total() const {
  std::size_t sum = 0;
  for (const auto& [d, c] : counts) sum += c;
  return sum;
}

ExcitationCensus census(const ConfigurationSpace& space, const Determinant& reference) {
  if (space.empty()) throw Error(Errc::empty_space, "census of an empty space");
  ExcitationCensus out;
  out.reference = reference;
  for (const auto& d : space.dets) ++out.counts[excitation_degree(reference, d)];
  return out;
}

Determinant aufbau(int N, int m) {
  check_width(m);
  if (N < 0 || N > m) throw Error(Errc::invalid_argument, "aufbau: need 0 <= N <= m");
  return Determinant(N == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << N) - 1), m);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  // 128-bit intermediate keeps C(64,32) exact
  for (int i = 1; i <= k; ++i)
    r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * static_cast<unsigned>(n - k + i) / i);
  return r;
}

}  // namespace gpcci
