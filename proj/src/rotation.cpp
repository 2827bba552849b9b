#include "gpcci/rotation.hpp"

#include <cmath>

#include "gpcci/error.hpp"

namespace gpcci {

OrbitalRotation OrbitalRotation::identity(int m, const std::optional<SpinOrbitalLayout>& layout) {
  OrbitalRotation r;
  r.U = Eigen::MatrixXd::Identity(m, m);
  r.spin_blocked = layout.has_value();
  r.target_layout = layout;
  return r;
}

void OrbitalRotation::check_orthogonal(double tol) const {
  if (U.rows() != U.cols()) throw Error(Errc::non_orthogonal_rotation, "rotation is not square");
  const double dev = (U.transpose() * U - Eigen::MatrixXd::Identity(U.rows(), U.cols()))
                         .cwiseAbs()
                         .maxCoeff();
  if (!(dev <= tol)) {
    throw Error(Errc::non_orthogonal_rotation,
                "max |U^T U - 1| = " + std::to_string(dev));
  }
}

void OrbitalRotation::check_spin_blocks(const SpinOrbitalLayout& source, double tol) const {
  if (!spin_blocked || !target_layout) {
    throw Error(Errc::sector_violation, "rotation of a sector-restricted vector must be spin-blocked");
  }
  if (source.m() != m() || target_layout->m() != m()) {
    throw Error(Errc::dimension_mismatch, "rotation width differs from layout width");
  }
  for (int k = 0; k < m(); ++k) {
    for (int l = 0; l < m(); ++l) {
      if (target_layout->spin_of[k] != source.spin_of[l] && std::abs(U(k, l)) > tol) {
        throw Error(Errc::sector_violation, "rotation mixes spin up and spin down orbitals");
      }
    }
  }
}

OrbitalRotation OrbitalRotation::then(const OrbitalRotation& next) const {
  if (next.m() != m()) throw Error(Errc::dimension_mismatch, "composing rotations of different width");
  OrbitalRotation out;
  out.U = next.U * U;
  out.spin_blocked = spin_blocked && next.spin_blocked;
  out.target_layout = next.target_layout ? next.target_layout : target_layout;
  return out;
}

}  // namespace gpcci
