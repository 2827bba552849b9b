#include "gpcci/ci.hpp"

#include <cmath>

#include "gpcci/error.hpp"

namespace gpcci {

namespace {

constexpr std::uint64_t bit(int p) { return std::uint64_t{1} << p; }

int lowest(std::uint64_t x) { return std::countr_zero(x); }
int second_lowest(std::uint64_t x) { return std::countr_zero(x & (x - 1)); }

}  // namespace

double CIVector::norm() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return std::sqrt(s);
}

double CIVector::coefficient(const Determinant& d) const {
  const auto i = space.index_of(d.mask());
  return i ? coeffs[*i] : 0.0;
}

double matrix_element(const SpinOrbitalIntegrals& ints, const Determinant& bra,
                      const Determinant& ket) {
  const std::uint64_t K = bra.mask();
  const std::uint64_t L = ket.mask();
  const int degree = std::popcount(K ^ L) / 2;

  if (degree == 0) {
    double e = ints.core_energy;
    for (std::uint64_t a = L; a; a &= a - 1) {
      const int i = lowest(a);
      e += ints.h(i, i);
      for (std::uint64_t b = a & (a - 1); b; b &= b - 1) e += ints.anti(i, lowest(b), i, lowest(b));
    }
    return e;
  }

  if (degree == 1) {
    const int q = lowest(L & ~K);
    const int p = lowest(K & ~L);
    const std::uint64_t common = L & ~bit(q);
    const int sign = annihilation_sign(L, q) * annihilation_sign(common, p);
    double v = ints.h(p, q);
    for (std::uint64_t a = common; a; a &= a - 1) v += ints.anti(p, lowest(a), q, lowest(a));
    return sign * v;
  }

  if (degree == 2) {
    const std::uint64_t holes = L & ~K;
    const std::uint64_t parts = K & ~L;
    const int r = lowest(holes), s = second_lowest(holes);
    const int p = lowest(parts), q = second_lowest(parts);
    // a+_p a+_q a_s a_r |L>, rightmost operator first.
    std::uint64_t x = L;
    int sign = annihilation_sign(x, r);
    x ^= bit(r);
    sign *= annihilation_sign(x, s);
    x ^= bit(s);
    sign *= annihilation_sign(x, q);
    x |= bit(q);
    sign *= annihilation_sign(x, p);
    return sign * ints.anti(p, q, r, s);
  }
  return 0.0;
}

Eigen::MatrixXd build_hamiltonian(const SpinOrbitalIntegrals& ints, const ConfigurationSpace& space) {
  if (ints.m() != space.m) {
    throw Error(Errc::dimension_mismatch, "integrals have m=" + std::to_string(ints.m()) +
                                              ", space has m=" + std::to_string(space.m));
  }
  const auto n = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd H(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = matrix_element(ints, space.dets[i], space.dets[j]);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

std::vector<CIVector> solve_ground(const SpinOrbitalIntegrals& ints, const ConfigurationSpace& space,
                                   int k) {
  if (space.size() > kMaxDenseDimension) {
    throw Error(Errc::space_too_large, std::to_string(space.size()) + " determinants exceed the dense budget of " +
                                           std::to_string(kMaxDenseDimension));
  }
  if (k < 1 || static_cast<std::size_t>(k) > space.size()) {
    throw Error(Errc::invalid_argument, "requested " + std::to_string(k) + " states from a space of " +
                                            std::to_string(space.size()));
  }
  const Eigen::MatrixXd H = build_hamiltonian(ints, space);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw Error(Errc::eigensolver_failure, "dense eigensolver did not converge");

  const Eigen::VectorXd& w = es.eigenvalues();
  std::vector<CIVector> out;
  for (int s = 0; s < k; ++s) {
    CIVector v;
    v.space = space;
    Eigen::VectorXd c = es.eigenvectors().col(s);
    Eigen::Index imax = 0;
    c.cwiseAbs().maxCoeff(&imax);
    if (c(imax) < 0) c = -c;
    v.coeffs.assign(c.data(), c.data() + c.size());
    v.energy = w(s);
    const bool below = s > 0 && w(s) - w(s - 1) < kDegeneracyGap;
    const bool above = s + 1 < w.size() && w(s + 1) - w(s) < kDegeneracyGap;
    v.degenerate = below || above;
    out.push_back(std::move(v));
  }
  return out;
}

double expectation(const SpinOrbitalIntegrals& ints, const CIVector& v) {
  const Eigen::MatrixXd H = build_hamiltonian(ints, v.space);
  const Eigen::Map<const Eigen::VectorXd> c(v.coeffs.data(), static_cast<Eigen::Index>(v.coeffs.size()));
  return c.dot(H * c);
}

CIVector rotate_ci(const CIVector& v, const OrbitalRotation& rot) {
  if (rot.m() != v.space.m) throw Error(Errc::dimension_mismatch, "rotation width differs from space");
  rot.check_orthogonal();
  if (v.space.sz2) rot.check_spin_blocks(*v.space.layout);

  ConfigurationSpace target = closure(v.space);
  if (rot.target_layout && v.space.layout) {
    target = enumerate_space(v.space.N, v.space.m, rot.target_layout, v.space.sz2);
  }

  const int N = v.space.N;
  std::vector<std::vector<int>> occ_old;
  occ_old.reserve(v.space.size());
  for (const auto& d : v.space.dets) occ_old.push_back(d.orbitals());

  CIVector out;
  out.energy = v.energy;
  out.degenerate = v.degenerate;
  out.coeffs.assign(target.size(), 0.0);
  Eigen::MatrixXd sub(N, N);
  for (std::size_t K = 0; K < target.size(); ++K) {
    const auto rows = target.dets[K].orbitals();
    double acc = 0.0;
    for (std::size_t L = 0; L < v.space.size(); ++L) {
      if (v.coeffs[L] == 0.0) continue;
      const auto& cols = occ_old[L];
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) sub(a, b) = rot.U(rows[a], cols[b]);
      acc += sub.determinant() * v.coeffs[L];
    }
    out.coeffs[K] = acc;
  }
  out.space = std::move(target);
  return out;
}

}  // namespace gpcci
