#include <cmath>
#include <limits>

#include "gpcci/ci.hpp"
#include "gpcci/error.hpp"

namespace gpcci {

namespace {

struct Block {
  std::vector<int> orbitals;
  int electrons = 0;
};

std::vector<Block> occupation_blocks(const ConfigurationSpace& space) {
  if (space.layout && space.sz2) {
    Block up, down;
    for (int i = 0; i < space.m; ++i) {
      (space.layout->spin_of[i] == Spin::up ? up : down).orbitals.push_back(i);
    }
    up.electrons = (space.N + *space.sz2) / 2;
    down.electrons = (space.N - *space.sz2) / 2;
    return {up, down};
  }
  Block all;
  for (int i = 0; i < space.m; ++i) all.orbitals.push_back(i);
  all.electrons = space.N;
  return {all};
}

Eigen::MatrixXd fock(const SpinOrbitalIntegrals& ints, const Eigen::MatrixXd& D) {
  const int m = ints.m();
  Eigen::MatrixXd F = ints.h;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      double v = 0.0;
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
          if (D(s, r) != 0.0) v += ints.anti(p, r, q, s) * D(s, r);
      F(p, q) += v;
    }
  return F;
}

double energy(const SpinOrbitalIntegrals& ints, const Eigen::MatrixXd& D) {
  const Eigen::MatrixXd F = fock(ints, D);
  // E = core + tr(hD) + 1/2 tr((F-h)D)
  return ints.core_energy + 0.5 * ((ints.h + F).cwiseProduct(D.transpose())).sum();
}

/// Aufbau density from F diagonalized inside each block.
Eigen::MatrixXd aufbau_density(const Eigen::MatrixXd& F, const std::vector<Block>& blocks) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(F.rows(), F.cols());
  for (const auto& b : blocks) {
    if (b.electrons == 0) continue;
    const auto n = static_cast<Eigen::Index>(b.orbitals.size());
    Eigen::MatrixXd Fb(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) Fb(i, j) = F(b.orbitals[i], b.orbitals[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Fb);
    const Eigen::MatrixXd C = es.eigenvectors().leftCols(b.electrons);
    const Eigen::MatrixXd Db = C * C.transpose();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) D(b.orbitals[i], b.orbitals[j]) = Db(i, j);
  }
  return D;
}

double run_scf(const SpinOrbitalIntegrals& ints, const std::vector<Block>& blocks,
               const Eigen::MatrixXd& guess_fock) {
  Eigen::MatrixXd D = aufbau_density(guess_fock, blocks);
  double best = energy(ints, D);
  double previous = best;
  for (int it = 0; it < 400; ++it) {
    const Eigen::MatrixXd Dnew = aufbau_density(fock(ints, D), blocks);
    const double e = energy(ints, Dnew);
    best = std::min(best, e);
    const double change = (Dnew - D).cwiseAbs().maxCoeff();
    D = 0.5 * (D + Dnew);
    if (change < 1e-10 && std::abs(e - previous) < 1e-13) break;
    previous = e;
  }
  return best;
}

}  // namespace

double mean_field_energy(const SpinOrbitalIntegrals& ints, const ConfigurationSpace& space) {
  if (ints.m() != space.m) throw Error(Errc::dimension_mismatch, "integrals and space differ in m");
  const auto blocks = occupation_blocks(space);
  const int m = ints.m();

  double best = std::numeric_limits<double>::infinity();
  // Core guess plus a few deterministic symmetry-breaking starts.
  for (int start = 0; start < 4; ++start) {
    Eigen::MatrixXd F = ints.h;
    if (start > 0) {
      const double amp = 0.25 * start;
      for (int i = 0; i < m; ++i) {
        const int spatial = space.layout ? space.layout->spatial_of[i] : i;
        const bool up = !space.layout || space.layout->spin_of[i] == Spin::up;
        const double stagger = (spatial % 2 == 0) ? 1.0 : -1.0;
        F(i, i) += amp * stagger * (up ? 1.0 : -1.0) + 1e-3 * amp * i;
      }
    }
    best = std::min(best, run_scf(ints, blocks, F));
  }
  return best;
}

}  // namespace gpcci
