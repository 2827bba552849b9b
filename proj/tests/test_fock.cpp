#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gpcci/error.hpp"
#include "gpcci/fock.hpp"
#include "gpcci/json_io.hpp"

using namespace gpcci;

namespace {

// Brute-force enumeration over all masks, independent of Gosper iteration.
std::vector<std::uint64_t> all_masks(int N, int m, const SpinOrbitalLayout* layout = nullptr, int sz2 = 0) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    if (std::popcount(x) != N) continue;
    if (layout) {
      const int up = std::popcount(x & layout->spin_mask(Spin::up));
      if (up - (N - up) != sz2) continue;
    }
    out.push_back(x);
  }
  return out;
}

std::vector<std::uint64_t> masks_of(const ConfigurationSpace& s) {
  std::vector<std::uint64_t> out;
  for (const auto& d : s.dets) out.push_back(d.mask());
  return out;
}

}  // namespace

TEST(Determinant, FromOrbitalsAndText) {
  const auto d = Determinant::from_orbitals({1, 4, 5}, 6);
  EXPECT_EQ(d.mask(), 0b11001u);
  EXPECT_EQ(d.count(), 3);
  EXPECT_EQ(d.to_string(), "[1,4,5]");
  EXPECT_EQ(d.orbitals(), (std::vector<int>{0, 3, 4}));
  EXPECT_EQ(to_json(d).dump(), "[1,4,5]");
  EXPECT_EQ(determinant_from_json(json::parse("[5,1,4]"), 6), d);
}

TEST(Determinant, RejectsBadIndices) {
  EXPECT_THROW(Determinant::from_orbitals({0, 1}, 4), Error);
  EXPECT_THROW(Determinant::from_orbitals({1, 5}, 4), Error);
  EXPECT_THROW(Determinant::from_orbitals({2, 2}, 4), Error);
  EXPECT_THROW(Determinant(0b10000, 4), Error);
}

TEST(Determinant, AnnihilationSign) {
  EXPECT_EQ(annihilation_sign(0b1011, 0), 1);
  EXPECT_EQ(annihilation_sign(0b1011, 1), -1);
  EXPECT_EQ(annihilation_sign(0b1011, 3), 1);
  EXPECT_EQ(annihilation_sign(0b1011, 2), 1);
}

TEST(Layout, InterleavedAndBlocked) {
  const auto a = SpinOrbitalLayout::interleaved(3);
  EXPECT_EQ(a.m(), 6);
  EXPECT_EQ(a.spin_of[1], Spin::down);
  EXPECT_EQ(a.spatial_of[5], 2);
  EXPECT_EQ(a.spin_mask(Spin::up), 0b010101u);
  const auto b = SpinOrbitalLayout::blocked(3);
  EXPECT_EQ(b.spin_mask(Spin::up), 0b000111u);
  EXPECT_EQ(b.spatial_of[3], 0);
  EXPECT_NO_THROW(a.validate());
  EXPECT_EQ(a.truncated(5).m(), 5);
}

TEST(Layout, ValidateRejectsDoubleSpinPerSpatial) {
  SpinOrbitalLayout bad;
  bad.spin_of = {Spin::up, Spin::up};
  bad.spatial_of = {0, 0};
  EXPECT_THROW(bad.validate(), Error);
  bad.spatial_of = {0};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Enumerate, FullSpaces) {
  EXPECT_EQ(enumerate_space(3, 6).size(), 20u);
  EXPECT_EQ(enumerate_space(3, 7).size(), 35u);
  EXPECT_EQ(enumerate_space(3, 8).size(), 56u);
  EXPECT_EQ(enumerate_space(4, 8).size(), 70u);
  for (int m = 1; m <= 10; ++m)
    for (int N = 1; N <= m; ++N) EXPECT_EQ(masks_of(enumerate_space(N, m)), all_masks(N, m)) << N << "," << m;
}

TEST(Enumerate, SectorSizes) {
  const auto l3 = SpinOrbitalLayout::interleaved(3);
  EXPECT_EQ(enumerate_space(3, 6, l3, 1).size(), 9u);
  EXPECT_EQ(enumerate_space(4, 8, SpinOrbitalLayout::interleaved(4), 2).size(), 16u);
  for (int n = 2; n <= 4; ++n) {
    const auto l = SpinOrbitalLayout::interleaved(n);
    for (int N = 1; N <= 2 * n; ++N)
      for (int sz2 = -N; sz2 <= N; sz2 += 2) {
        if (all_masks(N, 2 * n, &l, sz2).empty()) {
          EXPECT_THROW(enumerate_space(N, 2 * n, l, sz2), Error);
          continue;
        }
        EXPECT_EQ(masks_of(enumerate_space(N, 2 * n, l, sz2)), all_masks(N, 2 * n, &l, sz2));
      }
  }
}

TEST(Enumerate, ProductRuleForFactorizedSector) {
  // one electron among 3 up orbitals, two among 4 down orbitals: 3 * 6
  const int up[] = {0, 1, 2};
  const auto layout = SpinOrbitalLayout::from_up_set(7, up);
  const auto s = enumerate_space(3, 7, layout, -1);
  EXPECT_EQ(s.size(), binomial(3, 1) * binomial(4, 2));
  EXPECT_EQ(s.size(), 18u);
}

TEST(Enumerate, Errors) {
  EXPECT_THROW(enumerate_space(3, 65), Error);
  try {
    enumerate_space(3, 65);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::width_overflow);
  }
  try {
    enumerate_space(2, 4, SpinOrbitalLayout::interleaved(2), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_sector);
  }
  EXPECT_THROW(enumerate_space(0, 4), Error);
  EXPECT_THROW(enumerate_space(5, 4), Error);
  EXPECT_THROW(enumerate_space(2, 4, std::nullopt, 0), Error);
}

TEST(Enumerate, DeterministicAndSorted) {
  const auto a = enumerate_space(4, 9);
  const auto b = enumerate_space(4, 9);
  EXPECT_EQ(masks_of(a), masks_of(b));
  EXPECT_TRUE(std::is_sorted(a.dets.begin(), a.dets.end()));
  EXPECT_EQ(std::adjacent_find(a.dets.begin(), a.dets.end()), a.dets.end());
}

TEST(Enumerate, WideMasks) {
  const auto s = enumerate_space(1, 64);
  EXPECT_EQ(s.size(), 64u);
  EXPECT_EQ(s.dets.back().mask(), std::uint64_t{1} << 63);
  EXPECT_EQ(enumerate_space(63, 64).size(), 64u);
  EXPECT_EQ(enumerate_space(64, 64).size(), 1u);
}

TEST(Excitation, Degrees) {
  const auto ref = Determinant::from_orbitals({1, 2, 3}, 6);
  EXPECT_EQ(excitation_degree(ref, ref), 0);
  EXPECT_EQ(excitation_degree(ref, Determinant::from_orbitals({1, 4, 5}, 6)), 2);
  EXPECT_EQ(excitation_degree(ref, Determinant::from_orbitals({4, 5, 6}, 6)), 3);
  EXPECT_EQ(excitation_degree(ref, Determinant::from_orbitals({1, 2, 6}, 6)), 1);
}

TEST(Excitation, Errors) {
  const auto ref = Determinant::from_orbitals({1, 2, 3}, 6);
  try {
    excitation_degree(ref, Determinant::from_orbitals({1, 2, 3}, 7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::mismatched_width);
  }
  try {
    excitation_degree(ref, Determinant::from_orbitals({1, 2}, 6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::mismatched_particle_number);
  }
}

TEST(Census, StructuredRankSixSpace) {
  // |123>, |145>, |246> and the 5 other determinants with one orbital from
  // each pair (1,6), (2,5), (3,4)
  ConfigurationSpace parent = enumerate_space(3, 6);
  std::vector<Determinant> dets;
  for (const auto& d : parent.dets) {
    const bool ok = d.occupied(0) != d.occupied(5) && d.occupied(1) != d.occupied(4) && d.occupied(2) != d.occupied(3);
    if (ok) dets.push_back(d);
  }
  const auto s = subspace(parent, dets);
  ASSERT_EQ(s.size(), 8u);
  const auto c = census(s, aufbau(3, 6));
  EXPECT_EQ(c.at(0), 1u);
  EXPECT_EQ(c.at(1), 3u);
  EXPECT_EQ(c.at(2), 3u);
  EXPECT_EQ(c.at(3), 1u);
  EXPECT_EQ(c.total(), 8u);
}

TEST(Census, ReferenceOnlyAndEmpty) {
  ConfigurationSpace parent = enumerate_space(3, 6);
  const auto s = subspace(parent, {aufbau(3, 6)});
  const auto c = census(s, aufbau(3, 6));
  EXPECT_EQ(c.counts.size(), 1u);
  EXPECT_EQ(c.at(0), 1u);
  EXPECT_EQ(c.at(2), 0u);
  try {
    census(subspace(parent, {}), aufbau(3, 6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_space);
  }
}

TEST(Census, SumsToSpaceSize) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto full = enumerate_space(4, 9);
    std::vector<Determinant> pick;
    for (const auto& d : full.dets)
      if (rng() % 3 == 0) pick.push_back(d);
    if (pick.empty()) continue;
    const auto s = subspace(full, pick);
    EXPECT_EQ(census(s, aufbau(4, 9)).total(), s.size());
  }
}

TEST(Space, IndexOfAndClosure) {
  const auto l = SpinOrbitalLayout::interleaved(3);
  const auto full = enumerate_space(3, 6, l, 1);
  for (std::size_t i = 0; i < full.size(); ++i) EXPECT_EQ(full.index_of(full.dets[i].mask()), i);
  EXPECT_FALSE(full.index_of(0b111000).has_value() && !full.contains(Determinant(0b111000, 6)));
  const auto sub = subspace(full, {full.dets[3], full.dets[0], full.dets[3]});
  EXPECT_EQ(sub.size(), 2u);
  EXPECT_EQ(masks_of(closure(sub)), masks_of(full));
  EXPECT_THROW(subspace(full, {Determinant::from_orbitals({1, 3, 5}, 6)}), Error);
}

TEST(Space, JsonRoundTrip) {
  const auto s = enumerate_space(2, 4);
  EXPECT_EQ(to_json(s).dump(), "[[1,2],[1,3],[2,3],[1,4],[2,4],[3,4]]");
  EXPECT_EQ(masks_of(space_from_json(to_json(s), 2, 4)), masks_of(s));
  EXPECT_THROW(space_from_json(json::parse("[[1,\"a\"]]"), 2, 4), Error);
}

TEST(Misc, AufbauAndBinomial) {
  EXPECT_EQ(aufbau(3, 8).mask(), 0b111u);
  EXPECT_EQ(binomial(8, 4), 70u);
  EXPECT_EQ(binomial(64, 32), 1832624140942590534ull);
  EXPECT_EQ(binomial(5, 7), 0u);
}
