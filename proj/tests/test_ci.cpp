#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gpcci/ci.hpp"
#include "gpcci/error.hpp"
#include "gpcci/integrals.hpp"
#include "gpcci/json_io.hpp"
#include "gpcci/rdm.hpp"
#include "oracles.hpp"

using namespace gpcci;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::io_error;
}

OrbitalRotation rotation(const Eigen::MatrixXd& U, bool blocked = false) {
  OrbitalRotation r;
  r.U = U;
  r.spin_blocked = blocked;
  if (blocked) r.target_layout = SpinOrbitalLayout::interleaved(static_cast<int>(U.rows()) / 2);
  return r;
}

}  // namespace

TEST(Hamiltonian, TwoSiteHubbardByHand) {
  const double t = 1.0, U = 4.0;
  const auto ints = to_spin_orbitals(hubbard_chain(2, t, U, false), SpinOrdering::interleaved);
  ConfigurationSpace parent = enumerate_space(2, 4, ints.layout(), 0);
  // 1up=0 1dn=1 2up=2 2dn=3
  const auto d11 = Determinant::from_orbitals({1, 2}, 4);
  const auto d22 = Determinant::from_orbitals({3, 4}, 4);
  const auto d12 = Determinant::from_orbitals({1, 4}, 4);
  const auto d21 = Determinant::from_orbitals({2, 3}, 4);
  const auto space = subspace(parent, {d11, d22, d12, d21});
  const auto H = build_hamiltonian(ints, space);
  auto at = [&](const Determinant& a, const Determinant& b) {
    return H(*space.index_of(a.mask()), *space.index_of(b.mask()));
  };
  EXPECT_EQ(at(d11, d11), U);
  EXPECT_EQ(at(d22, d22), U);
  EXPECT_EQ(at(d12, d12), 0.0);
  EXPECT_EQ(at(d21, d21), 0.0);
  EXPECT_EQ(std::abs(at(d11, d12)), t);
  EXPECT_EQ(std::abs(at(d11, d21)), t);
  EXPECT_EQ(std::abs(at(d22, d12)), t);
  EXPECT_EQ(at(d11, d22), 0.0);
  EXPECT_EQ(at(d12, d21), 0.0);
  // a+_{1up} a_{2up} |2up 1dn> = a+_{1up} (-1)|1dn> ... sign fixed by the oracle
  const auto O = oracle::hamiltonian(hubbard_chain(2, t, U, false), ints.layout(), space);
  EXPECT_LT((H - O).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Hamiltonian, MatchesSecondQuantizationOracle) {
  std::mt19937_64 rng(2024);
  for (int n : {2, 3, 4}) {
    const auto s = oracle::random_integrals(n, rng);
    for (auto ordering : {SpinOrdering::interleaved, SpinOrdering::blocked}) {
      const auto ints = to_spin_orbitals(s, ordering);
      for (int N = 1; N <= 2 * n; ++N) {
        const auto space = enumerate_space(N, 2 * n);
        if (space.size() > 70) continue;
        const auto H = build_hamiltonian(ints, space);
        const auto O = oracle::hamiltonian(s, ints.layout(), space);
        EXPECT_LT((H - O).cwiseAbs().maxCoeff(), 1e-12) << n << " " << N;
      }
    }
  }
}

TEST(Hamiltonian, ExactlySymmetric) {
  std::mt19937_64 rng(3);
  const auto ints = to_spin_orbitals(oracle::random_integrals(4, rng), SpinOrdering::interleaved);
  const auto H = build_hamiltonian(ints, enumerate_space(4, 8));
  EXPECT_EQ((H - H.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Hamiltonian, NoninteractingEigenvaluesAreOrbitalSums) {
  const auto s = hubbard_chain(3, 1.0, 0.0, false);
  const auto ints = to_spin_orbitals(s, SpinOrdering::interleaved);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> one(s.h);
  const auto space = enumerate_space(2, 6, ints.layout(), 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> many(build_hamiltonian(ints, space));
  std::vector<double> expect;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) expect.push_back(one.eigenvalues()(a) + one.eigenvalues()(b));
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(many.eigenvalues()(i), expect[i], 1e-12);
}

TEST(Hamiltonian, DimensionMismatch) {
  const auto ints = to_spin_orbitals(hubbard_chain(2, 1, 1, false), SpinOrdering::interleaved);
  EXPECT_EQ(code_of([&] { build_hamiltonian(ints, enumerate_space(2, 6)); }), Errc::dimension_mismatch);
}

TEST(Solve, GroundStateConventions) {
  std::mt19937_64 rng(4);
  const auto ints = to_spin_orbitals(oracle::random_integrals(3, rng), SpinOrdering::interleaved);
  const auto space = enumerate_space(3, 6);
  const auto states = solve_ground(ints, space, 4);
  ASSERT_EQ(states.size(), 4u);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::hamiltonian(
      [&] {
        std::mt19937_64 again(4);
        return oracle::random_integrals(3, again);
      }(),
      ints.layout(), space));
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(*states[k].energy, es.eigenvalues()(k), 1e-12);
    EXPECT_NEAR(states[k].norm(), 1.0, 1e-12);
    EXPECT_NEAR(expectation(ints, states[k]), *states[k].energy, 1e-12);
    const auto big = std::max_element(states[k].coeffs.begin(), states[k].coeffs.end(),
                                      [](double a, double b) { return std::abs(a) < std::abs(b); });
    EXPECT_GT(*big, 0.0);
    if (k) EXPECT_LE(*states[k - 1].energy, *states[k].energy);
  }
}

TEST(Solve, SingleDeterminantSpace) {
  const auto ints = to_spin_orbitals(hubbard_chain(3, 1.0, 2.0, false), SpinOrdering::interleaved);
  const auto d = Determinant::from_orbitals({1, 2, 3}, 6);
  const auto space = subspace(enumerate_space(3, 6), {d});
  const auto v = solve_ground(ints, space).front();
  EXPECT_EQ(*v.energy, matrix_element(ints, d, d));
  EXPECT_EQ(v.coeffs.front(), 1.0);
}

TEST(Solve, Errors) {
  const auto ints = to_spin_orbitals(hubbard_chain(10, 1.0, 1.0, false), SpinOrdering::interleaved);
  EXPECT_EQ(code_of([&] { solve_ground(ints, enumerate_space(10, 20)); }), Errc::space_too_large);
  const auto small = to_spin_orbitals(hubbard_chain(2, 1.0, 1.0, false), SpinOrdering::interleaved);
  EXPECT_THROW(solve_ground(small, enumerate_space(2, 4), 7), Error);
  EXPECT_THROW(solve_ground(small, enumerate_space(2, 4), 0), Error);
}

TEST(Solve, DegeneracyFlag) {
  // open-shell periodic 3-site ring at odd filling: degenerate momentum doublet
  const auto ring = to_spin_orbitals(hubbard_chain(3, 1.0, 2.0, true), SpinOrdering::interleaved);
  EXPECT_TRUE(solve_ground(ring, enumerate_space(3, 6, ring.layout(), 1)).front().degenerate);
  const auto chain = to_spin_orbitals(hubbard_chain(3, 1.0, 2.0, false), SpinOrdering::interleaved);
  EXPECT_FALSE(solve_ground(chain, enumerate_space(3, 6, chain.layout(), 1)).front().degenerate);
}

TEST(Solve, VariationalOrderingOnNestedSpaces) {
  std::mt19937_64 rng(12);
  for (double U : {1.0, 4.0}) {
    const auto ints = to_spin_orbitals(hubbard_chain(4, 1.0, U, false), SpinOrdering::interleaved);
    const auto full = enumerate_space(4, 8, ints.layout(), 0);
    const double e_full = *solve_ground(ints, full).front().energy;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Determinant> a;
      for (const auto& d : full.dets)
        if (rng() % 2) a.push_back(d);
      if (a.empty()) continue;
      std::vector<Determinant> b = a;
      for (const auto& d : full.dets)
        if (rng() % 2) b.push_back(d);
      const double ea = *solve_ground(ints, subspace(full, a)).front().energy;
      const double eb = *solve_ground(ints, subspace(full, b)).front().energy;
      EXPECT_GE(ea, eb - 1e-12);
      EXPECT_GE(eb, e_full - 1e-12);
    }
  }
}

TEST(Rotate, IdentityAndPermutation) {
  std::mt19937_64 rng(13);
  const auto space = enumerate_space(3, 5);
  const auto v = oracle::random_vector(space, rng);
  const auto same = rotate_ci(v, rotation(Eigen::MatrixXd::Identity(5, 5)));
  for (std::size_t i = 0; i < space.size(); ++i) EXPECT_NEAR(same.coeffs[i], v.coeffs[i], 1e-15);

  // new orbital 0 = old orbital 1 and vice versa
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(5, 5);
  P(0, 0) = P(1, 1) = 0.0;
  P(0, 1) = P(1, 0) = 1.0;
  const auto w = rotate_ci(v, rotation(P));
  for (const auto& d : space.dets) {
    std::uint64_t m = d.mask();
    const bool b0 = m & 1, b1 = m & 2;
    std::uint64_t swapped = (m & ~3ull) | (b0 ? 2 : 0) | (b1 ? 1 : 0);
    const double sign = (b0 && b1) ? -1.0 : 1.0;
    EXPECT_NEAR(w.coefficient(Determinant(swapped, 5)), sign * v.coefficient(d), 1e-14);
  }
}

TEST(Rotate, NormAndEnergyInvariance) {
  std::mt19937_64 rng(14);
  const auto s = oracle::random_integrals(3, rng);
  const auto ints = to_spin_orbitals(s, SpinOrdering::interleaved);
  const auto space = enumerate_space(3, 6, ints.layout(), 1);
  const auto v = solve_ground(ints, space).front();
  for (int trial = 0; trial < 10; ++trial) {
    const auto R = rotation(oracle::random_spin_block_orthogonal(ints.layout(), rng), true);
    const auto w = rotate_ci(v, R);
    EXPECT_NEAR(w.norm(), 1.0, 1e-10);
    EXPECT_NEAR(expectation(ints.rotated(R), w), *v.energy, 1e-9);
    // 1-RDM transforms as R rho R^T
    const Eigen::MatrixXd lhs = one_rdm(w).rho;
    const Eigen::MatrixXd rhs = R.U * one_rdm(v).rho * R.U.transpose();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
  }
  // full (no sector) space with a general rotation
  const auto full = enumerate_space(3, 6);
  const auto u = solve_ground(ints, full).front();
  const auto R = rotation(oracle::random_orthogonal(6, rng));
  const auto w = rotate_ci(u, R);
  EXPECT_NEAR(w.norm(), 1.0, 1e-10);
  EXPECT_NEAR(expectation(ints.rotated(R), w), *u.energy, 1e-9);
}

TEST(Rotate, Errors) {
  std::mt19937_64 rng(15);
  const auto layout = SpinOrbitalLayout::interleaved(3);
  const auto v = oracle::random_vector(enumerate_space(3, 6, layout, 1), rng);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(6, 6);
  bad(0, 1) = 0.3;
  EXPECT_EQ(code_of([&] { rotate_ci(v, rotation(bad)); }), Errc::non_orthogonal_rotation);
  EXPECT_EQ(code_of([&] { rotate_ci(v, rotation(oracle::random_orthogonal(6, rng))); }), Errc::sector_violation);
  EXPECT_THROW(rotate_ci(v, rotation(Eigen::MatrixXd::Identity(5, 5))), Error);
}

TEST(CIJson, Layout) {
  const auto ints = to_spin_orbitals(hubbard_chain(2, 1.0, 4.0, false), SpinOrdering::interleaved);
  const auto v = solve_ground(ints, enumerate_space(2, 4, ints.layout(), 0)).front();
  const auto j = to_json(v);
  EXPECT_NEAR(j["energy"].get<double>(), 2 - 2 * std::sqrt(2.0), 1e-12);
  EXPECT_EQ(j["determinants"].size(), 4u);
  EXPECT_EQ(j["determinants"][0].dump(), "[1,2]");
  EXPECT_EQ(j["coefficients"].size(), 4u);
}
