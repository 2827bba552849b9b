#include "gpcci/rdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpcci/error.hpp"

namespace gpcci {

namespace {

struct NaturalOrbital {
  double occupation;
  Eigen::VectorXd vector;  // in the original basis
  Spin spin;
  int anchor;  // original index of the dominant component
};

int dominant_index(const Eigen::VectorXd& v) {
  int best = 0;
  double mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Strict comparison keeps the lowest index among equal magnitudes.
    if (std::abs(v(i)) > mag + 1e-12) {
      mag = std::abs(v(i));
      best = static_cast<int>(i);
    }
  }
  return best;
}

double clamp_occupation(double x) {
  if (x < -kClampWindow || x > 1.0 + kClampWindow) {
    throw Error(Errc::spectral_out_of_range, "occupation " + std::to_string(x) + " outside [0,1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

std::vector<std::vector<int>> group_ties(const std::vector<double>& n, double tol) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(n.size()); ++i) {
    if (!groups.empty() && std::abs(n[i - 1] - n[i]) < tol) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }
  return groups;
}

}  // namespace

double OneRDM::spin_trace(Spin s) const {
  if (!layout) throw Error(Errc::invalid_argument, "spin trace needs a spin layout");
  double t = 0.0;
  for (int i = 0; i < m(); ++i)
    if (layout->spin_of[i] == s) t += rho(i, i);
  return t;
}

double OccupationSpectrum::trace() const { return std::accumulate(n.begin(), n.end(), 0.0); }

OccupationSpectrum OccupationSpectrum::from_occupations(std::vector<double> n, int N, double tie_tolerance) {
  const int m = static_cast<int>(n.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return n[a] > n[b]; });

  OccupationSpectrum s;
  s.N = N;
  s.natural_rotation.U = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    s.n.push_back(n[order[k]]);
    s.natural_rotation.U(k, order[k]) = 1.0;
  }
  s.degeneracy_groups = group_ties(s.n, tie_tolerance);
  return s;
}

OneRDM one_rdm(const CIVector& v) {
  const double nrm = v.norm();
  if (std::abs(nrm - 1.0) > 1e-10) {
    throw Error(Errc::unnormalized_input, "CI vector norm " + std::to_string(nrm));
  }
  const auto& space = v.space;
  const int m = space.m;
  OneRDM out;
  out.N = space.N;
  out.layout = space.layout;
  out.rho = Eigen::MatrixXd::Zero(m, m);

  for (std::size_t L = 0; L < space.size(); ++L) {
    const double cL = v.coeffs[L];
    if (cL == 0.0) continue;
    const std::uint64_t mask = space.dets[L].mask();
    for (std::uint64_t occ = mask; occ; occ &= occ - 1) {
      const int q = std::countr_zero(occ);
      out.rho(q, q) += cL * cL;
      // a+_p a_q |L> for p unoccupied in L.
      const std::uint64_t without = mask & ~(std::uint64_t{1} << q);
      const int sq = annihilation_sign(mask, q);
      for (int p = 0; p < m; ++p) {
        if ((mask >> p) & 1U) continue;
        const std::uint64_t K = without | (std::uint64_t{1} << p);
        const auto k = space.index_of(K);
        if (!k) continue;
        const int sign = sq * annihilation_sign(without, p);
        // <Psi|a+_p a_q|Psi> contributes to rho(q,p)
        out.rho(q, p) += sign * v.coeffs[*k] * cL;
      }
    }
  }
  // Symmetrize away round-off from the two accumulation orders.
  out.rho = 0.5 * (out.rho + out.rho.transpose()).eval();

  if (out.layout) {
    bool blocked = true;
    for (int p = 0; p < m && blocked; ++p)
      for (int q = 0; q < m; ++q)
        if (out.layout->spin_of[p] != out.layout->spin_of[q] && std::abs(out.rho(p, q)) > 1e-12) {
          blocked = false;
          break;
        }
    out.spin_blocked = blocked;
  }
  return out;
}

OccupationSpectrum natural_spectrum(const OneRDM& rdm, double tie_tolerance) {
  const int m = rdm.m();
  std::vector<NaturalOrbital> orbitals;

  auto diagonalize = [&](const std::vector<int>& idx, Spin spin) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    if (n == 0) return;
    Eigen::MatrixXd block(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) block(i, j) = rdm.rho(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    if (es.info() != Eigen::Success) throw Error(Errc::eigensolver_failure, "1-RDM diagonalization failed");
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::VectorXd full = Eigen::VectorXd::Zero(m);
      for (Eigen::Index i = 0; i < n; ++i) full(idx[i]) = es.eigenvectors()(i, k);
      const int anchor = dominant_index(full);
      if (full(anchor) < 0) full = -full;
      orbitals.push_back({clamp_occupation(es.eigenvalues()(k)), full, spin, anchor});
    }
  };

  if (rdm.spin_blocked && rdm.layout) {
    std::vector<int> up, down;
    for (int i = 0; i < m; ++i) (rdm.layout->spin_of[i] == Spin::up ? up : down).push_back(i);
    diagonalize(up, Spin::up);
    diagonalize(down, Spin::down);
  } else {
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    diagonalize(all, Spin::up);
  }

  // Decreasing occupation; inside a tie group the vectors go in ascending
  // original index while n stays sorted by value.
  std::sort(orbitals.begin(), orbitals.end(), [](const auto& a, const auto& b) {
    return a.occupation > b.occupation;
  });
  std::vector<double> sorted;
  for (const auto& o : orbitals) sorted.push_back(o.occupation);
  const auto groups = group_ties(sorted, tie_tolerance);
  for (const auto& g : groups) {
    std::stable_sort(orbitals.begin() + g.front(), orbitals.begin() + g.back() + 1,
                     [](const auto& a, const auto& b) { return a.anchor < b.anchor; });
  }

  OccupationSpectrum s;
  s.N = rdm.N;
  s.degeneracy_groups = groups;
  s.natural_rotation.U.resize(m, m);
  for (int k = 0; k < m; ++k) {
    s.n.push_back(sorted[k]);
    s.natural_rotation.U.row(k) = orbitals[k].vector.transpose();
  }
  if (rdm.spin_blocked && rdm.layout) {
    s.natural_rotation.spin_blocked = true;
    SpinOrbitalLayout target;
    for (int k = 0; k < m; ++k) {
      target.spin_of.push_back(orbitals[k].spin);
      target.spatial_of.push_back(k);
    }
    s.natural_rotation.target_layout = std::move(target);
  }
  return s;
}

SmithCheck smith_check(const OccupationSpectrum& spec, double tol) {
  if (spec.m() % 2 != 0) throw Error(Errc::odd_m, "Smith pairing needs an even number of occupations");
  SmithCheck out;
  for (int i = 0; i + 1 < spec.m(); i += 2) {
    out.max_deviation = std::max(out.max_deviation, std::abs(spec.n[i] - spec.n[i + 1]));
  }
  out.holds = out.max_deviation <= tol;
  return out;
}

double hf_distance(const OccupationSpectrum& spec) {
  double s = 0.0;
  for (int i = 0; i < spec.N && i < spec.m(); ++i) s += (1.0 - spec.n[i]) * (1.0 - spec.n[i]);
  return std::sqrt(s);
}

}  // namespace gpcci
