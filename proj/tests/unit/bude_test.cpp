#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "spmdbench/errors.hpp"
#include "spmdbench/kernels/bude.hpp"

namespace ex = spmdbench::exec;
namespace k = spmdbench::kernels;

namespace {

// One ligand atom at the origin, one protein atom on the x axis at distance d,
// every class scale 0.5 so s = 0.25.
k::BudeDeck two_atom_deck(float d) {
  k::BudeDeck deck;
  deck.natlig = 1;
  deck.natpro = 1;
  deck.nposes = 1;
  deck.ligand = {0.0f, 0.0f, 0.0f, 0.0f};
  deck.protein = {d, 0.0f, 0.0f, 5.0f};
  deck.fs.fill(0.5f);
  for (auto& p : deck.poses) p = {0.0f};
  deck.ppwi = 1;
  deck.wg = 8;
  return deck;
}

std::vector<float> kernel_out(const k::BudeDeck& deck, const ex::Backend& backend) {
  const auto r = k::fasten_kernel(deck, backend);
  const auto v = r.etotals.data<float>();
  return {v.begin(), v.end()};
}

}  // namespace

TEST(BudeDeck, DeterministicAndSeeded) {
  const auto a = k::bude_gen_deck(7, 5, 9, 16);
  const auto b = k::bude_gen_deck(7, 5, 9, 16);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == k::bude_gen_deck(8, 5, 9, 16));
  EXPECT_NO_THROW(k::validate(a));
}

TEST(BudeDeck, FieldRanges) {
  const auto d = k::bude_gen_deck(1, 70, 70, 256);
  EXPECT_FLOAT_EQ(d.fs[0], 0.1f);
  EXPECT_FLOAT_EQ(d.fs[7], 0.8f);
  EXPECT_FLOAT_EQ(d.fs[8], 0.1f);
  for (std::uint32_t n = 0; n < d.natlig; ++n) {
    EXPECT_EQ(d.ligand[4 * n + 3], static_cast<float>(n % 64));
    for (int c = 0; c < 3; ++c) EXPECT_LE(std::abs(d.ligand[4 * n + c]), 2.0f);
  }
  for (std::uint32_t m = 0; m < d.natpro; ++m) {
    EXPECT_EQ(d.protein[4 * m + 3], static_cast<float>((3 * m + 1) % 64));
    for (int c = 0; c < 3; ++c) EXPECT_LE(std::abs(d.protein[4 * m + c]), 10.0f);
  }
  for (int p = 0; p < 3; ++p)
    for (float v : d.poses[p]) EXPECT_LE(std::abs(v), static_cast<float>(M_PI) + 1e-6f);
  for (int p = 3; p < 6; ++p)
    for (float v : d.poses[p]) EXPECT_LE(std::abs(v), 5.0f);
}

TEST(BudeDeck, Defaults) {
  EXPECT_EQ(k::BudeDefaults::natlig, 26u);
  EXPECT_EQ(k::BudeDefaults::natpro, 938u);
  EXPECT_EQ(k::BudeDefaults::nposes, 65536u);
}

TEST(BudeDeck, InvalidCounts) {
  EXPECT_THROW(k::bude_gen_deck(1, 0, 4, 4), spmdbench::InvalidArgument);
  EXPECT_THROW(k::bude_gen_deck(1, 4, 4, 6, 4), spmdbench::InvalidArgument);
  auto d = two_atom_deck(2.0f);
  d.protein[3] = 64.0f;
  EXPECT_THROW(k::validate(d), spmdbench::InvalidArgument);
}

TEST(BudeTransform, IdentityAndTranslation) {
  const auto id = k::bude_transform(0, 0, 0, 0, 0, 0);
  const auto tr = k::bude_transform(0, 0, 0, 1, 2, 3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      EXPECT_EQ(id[r][c], r == c ? 1.0f : 0.0f);
      EXPECT_EQ(tr[r][c], r == c ? 1.0f : 0.0f);
    }
    EXPECT_EQ(id[r][3], 0.0f);
    EXPECT_EQ(tr[r][3], static_cast<float>(r + 1));
  }
}

TEST(BudeTransform, RotationIsOrthonormal) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<float> ang(-3.14159f, 3.14159f);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = k::bude_transform(ang(rng), ang(rng), ang(rng), 0, 0, 0);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double dot = 0.0;
        for (int r = 0; r < 3; ++r) dot += double{t[r][a]} * t[r][b];
        EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-6);
      }
  }
}

TEST(BudeTransform, MatchesRotationProduct) {
  // R = Rz(rz) Ry(ry) Rx(rx), assembled independently.
  const double rx = 0.3, ry = -1.1, rz = 2.0;
  const double Rx[3][3] = {{1, 0, 0}, {0, std::cos(rx), -std::sin(rx)}, {0, std::sin(rx), std::cos(rx)}};
  const double Ry[3][3] = {{std::cos(ry), 0, std::sin(ry)}, {0, 1, 0}, {-std::sin(ry), 0, std::cos(ry)}};
  const double Rz[3][3] = {{std::cos(rz), -std::sin(rz), 0}, {std::sin(rz), std::cos(rz), 0}, {0, 0, 1}};
  double RyRx[3][3] = {};
  double R[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m) RyRx[i][j] += Ry[i][m] * Rx[m][j];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m) R[i][j] += Rz[i][m] * RyRx[m][j];
  const auto t = k::bude_transform(0.3f, -1.1f, 2.0f, 0, 0, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(t[i][j], R[i][j], 1e-6);
}

TEST(BudeFasten, FarBranchHandValue) {
  const auto deck = two_atom_deck(2.0f);
  EXPECT_EQ(k::fasten_reference(deck)[0], 0.03125f);
  EXPECT_EQ(kernel_out(deck, ex::Backend::reference())[0], 0.03125f);
}

TEST(BudeFasten, NearBranchHandValue) {
  const auto deck = two_atom_deck(std::sqrt(0.5f));
  const float d = std::sqrt(0.5f);
  const float r2 = d * d;
  const float expected = 0.25f * (2.0f - r2) * 0.5f;
  EXPECT_EQ(k::fasten_reference(deck)[0], expected);
  EXPECT_NEAR(expected, 0.75f * 0.25f, 1e-7);
}

TEST(BudeFasten, BranchContinuityAtCutoff) {
  const auto deck = two_atom_deck(1.0f);
  EXPECT_EQ(k::fasten_reference(deck)[0], 0.25f * 0.5f);
}

TEST(BudeFasten, SinglePoseGolden) {
  const auto deck = k::bude_gen_deck(42, 26, 938, 1, 1, 64);
  const float golden = 0x1.054ae8p+5f;
  EXPECT_EQ(k::fasten_reference(deck)[0], golden);
  EXPECT_EQ(kernel_out(deck, ex::Backend::reference())[0], golden);
}

TEST(BudeFasten, OracleIgnoresLaunchShape) {
  auto a = k::bude_gen_deck(5, 6, 20, 64, 1, 8);
  auto b = a;
  b.ppwi = 16;
  b.wg = 64;
  EXPECT_EQ(k::fasten_reference(a), k::fasten_reference(b));
}

TEST(BudeFasten, KernelMatchesOracleBitwise) {
  auto deck = k::bude_gen_deck(11, 26, 64, 512);
  const auto ref = k::fasten_reference(deck);
  for (std::uint32_t ppwi : {1u, 2u, 4u, 8u, 16u, 32u, 64u, 128u}) {
    for (std::uint32_t wg : {8u, 64u}) {
      deck.ppwi = ppwi;
      deck.wg = wg;
      EXPECT_EQ(kernel_out(deck, ex::Backend::reference()), ref) << ppwi << "x" << wg;
      EXPECT_EQ(kernel_out(deck, ex::Backend::parallel(3)), ref) << ppwi << "x" << wg;
    }
  }
}

TEST(BudeFasten, PartialLastWorkgroup) {
  // 24 poses with wg=8, ppwi=4: one workgroup covers 32 poses, eight lanes idle.
  auto deck = k::bude_gen_deck(2, 3, 7, 24, 4, 8);
  EXPECT_EQ(kernel_out(deck, ex::Backend::reference()), k::fasten_reference(deck));
}
