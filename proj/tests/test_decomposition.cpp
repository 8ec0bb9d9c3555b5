#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plfnet;
using namespace plfnet::testing;

TEST(Bdc, TelemannMatricesMatchTheReferenceDecomposition) {
  auto bdc = build_bdc(load("telemann.net"));
  EXPECT_TRUE(bdc.B == mat({{-1, 0, -1, -1}, {1, -1, 0, 0}, {1, 0, -1, -1}}));
  EXPECT_TRUE(bdc.C == mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  EXPECT_TRUE(bdc.unitary());
}

TEST(Bdc, SingleTransferHasOneMode) {
  auto bdc = build_bdc(parse_network("X1 -> X2"));
  EXPECT_TRUE(bdc.B == mat({{-1}, {1}}));
  EXPECT_TRUE(bdc.C == mat({{1, 0}}));
}

TEST(Bdc, EveryModeOfABundledNetworkHasGainMinusOne) {
  for (const auto& name : bundled()) {
    auto bdc = build_bdc(load(name));
    for (std::size_t k = 0; k < bdc.q; ++k) {
      EXPECT_EQ(bdc.mode_gain(k), -1) << name << " mode " << k;
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < bdc.n; ++i) nonzero += sgn(bdc.C(k, i)) != 0;
      EXPECT_EQ(nonzero, 1u);
    }
  }
}

TEST(Bdc, ConstructionIsDeterministic) {
  for (const auto& name : bundled()) {
    auto a = build_bdc(load(name));
    auto b = build_bdc(load(name));
    EXPECT_TRUE(a.B == b.B && a.C == b.C) << name;
  }
}

TEST(PhiFamily, TelemannMatricesMatchTheReferenceFamily) {
  auto fam = build_phi_family(build_bdc(load("telemann.net")));
  ASSERT_EQ(fam.size(), 4u);
  EXPECT_TRUE(fam[0] == mat({{0, 0, 0}, {1, 1, 0}, {1, 0, 1}}));
  EXPECT_TRUE(fam[1] == mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 1}}));
  EXPECT_TRUE(fam[2] == mat({{1, 0, -1}, {0, 1, 0}, {0, 0, 0}}));
  EXPECT_TRUE(fam[3] == mat({{0, 0, 0}, {0, 1, 0}, {-1, 0, 1}}));
  EXPECT_TRUE(fam.unitary);
}

TEST(PhiFamily, IdempotenceAndAbsorption) {
  for (const auto& name : bundled()) {
    auto bdc = build_bdc(load(name));
    auto fam = build_phi_family(bdc);
    for (std::size_t a = 0; a < fam.size(); ++a) {
      EXPECT_TRUE(fam[a] * fam[a] == fam[a]) << name;
      for (std::size_t b = 0; b < fam.size(); ++b)
        if (bdc.C.row(a) == bdc.C.row(b)) {
          EXPECT_TRUE(fam[a] * fam[b] == fam[b]) << name;
        }
    }
  }
}

TEST(PhiFamily, NonUnitaryModeIsFlagged) {
  BDCSystem s;
  s.n = 1;
  s.q = 1;
  s.B = mat({{-2}});
  s.C = mat({{1}});
  s.labels = {"x"};
  auto fam = build_phi_family(s);
  EXPECT_FALSE(fam.unitary);
  EXPECT_FALSE(fam.mode_unitary[0]);
}

TEST(Dual, TransposesAndIsAnInvolution) {
  auto bdc = build_bdc(load("telemann.net"));
  auto d = build_dual(bdc);
  EXPECT_TRUE(d.B == bdc.C.transposed());
  EXPECT_TRUE(d.C == bdc.B.transposed());
  EXPECT_TRUE(d.unitary());
  auto dd = build_dual(d);
  EXPECT_TRUE(dd.B == bdc.B && dd.C == bdc.C);
}

TEST(Edf, TwoCycle) {
  auto edf = build_edf(load("two_cycle.net"));
  EXPECT_TRUE(edf.E == IntMatrix::identity(2));
  EXPECT_TRUE(edf.F == mat({{-1, 1}, {1, -1}}));
}

TEST(Edf, TelemannUsesReactionCoordinates) {
  auto net = load("telemann.net");
  auto edf = build_edf(net);
  ASSERT_EQ(edf.q, 4u);
  // Modes belong to reactions g1, g2, g13, g13.
  EXPECT_TRUE(edf.E == mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}}));
  // F rows are the S rows of the mode species: X1, X2, X3, X1.
  EXPECT_TRUE(edf.F.select_rows({0, 1, 2, 3}) == net.S.select_rows({0, 1, 2, 0}));
}

TEST(Edf, EmptyNetwork) {
  auto edf = build_edf(parse_network("@species X1"));
  EXPECT_EQ(edf.m, 0u);
  EXPECT_EQ(edf.q, 0u);
}

TEST(Conservation, TranslationLaws) {
  auto laws = find_conservation_laws(build_bdc(load("translation.net")));
  ASSERT_EQ(laws.size(), 2u);
  EXPECT_EQ(laws[0], vec({1, 0, 1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(laws[1], vec({0, 1, 1, 0, 0, 0, 0, 0}));
}

TEST(Conservation, TwoCycleAndTelemann) {
  auto two = find_conservation_laws(build_bdc(load("two_cycle.net")));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0], vec({1, 1}));
  EXPECT_TRUE(find_conservation_laws(build_bdc(load("telemann.net"))).empty());
}

TEST(Conservation, LawsBlockedByInfluxAreNotReducible) {
  auto bdc = build_bdc(load("vivaldi.net"));
  auto all = find_conservation_laws(bdc);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], vec({0, 1, 0, 1}));
  EXPECT_TRUE(reducible_conservation_laws(bdc).empty());
}

TEST(Conservation, PropagatesThroughEveryPhi) {
  for (const auto& name : bundled()) {
    auto bdc = build_bdc(load(name));
    auto fam = build_phi_family(bdc);
    for (const auto& s : find_conservation_laws(bdc)) {
      IntMatrix row(1, bdc.n);
      row.set_row(0, s);
      for (std::size_t h = 0; h < fam.size(); ++h) EXPECT_EQ((row * fam[h]).row(0), s) << name;
    }
  }
}

TEST(Reduction, TranslationGivesTheReferenceSixDimensionalSystem) {
  auto bdc = build_bdc(load("translation.net"));
  IntMatrix t_inv = IntMatrix::identity(8);
  t_inv.set_row(0, vec({1, 0, 1, 1, 1, 1, 1, 1}));
  t_inv.set_row(1, vec({0, 1, 1, 0, 0, 0, 0, 0}));
  auto red = reduce_by_conservation(bdc, find_conservation_laws(bdc), t_inv);
  EXPECT_TRUE(red.reduced.B == mat({{1, 1, -1, 0, 0, 0, 0, 0},
                                    {0, 0, 1, -1, 0, 0, 0, 0},
                                    {0, 0, 0, 1, -1, 0, 0, 0},
                                    {0, 0, 0, 0, 1, -1, 0, 0},
                                    {0, 0, 0, 0, 0, 1, -1, 0},
                                    {0, 0, 0, 0, 0, 0, 1, -1}}));
  EXPECT_TRUE(red.reduced.C == mat({{-1, -1, -1, -1, -1, -1},
                                    {-1, 0, 0, 0, 0, 0},
                                    {1, 0, 0, 0, 0, 0},
                                    {0, 1, 0, 0, 0, 0},
                                    {0, 0, 1, 0, 0, 0},
                                    {0, 0, 0, 1, 0, 0},
                                    {0, 0, 0, 0, 1, 0},
                                    {0, 0, 0, 0, 0, 1}}));
  EXPECT_TRUE(red.reduced.unitary());
  // The automatic completion picks the same matrix.
  auto automatic = reduce_by_conservation(bdc, find_conservation_laws(bdc));
  EXPECT_TRUE(automatic.t_inv == t_inv);
}

TEST(Reduction, TranscriptionDropsTwoDimensions) {
  auto bdc = build_bdc(load("transcription.net"));
  auto laws = find_conservation_laws(bdc);
  ASSERT_EQ(laws.size(), 2u);
  // w1 = x1+x2+x3+x5+...+x11 and w2 = x4+x5+x6 span the same lattice.
  IntMatrix sigma(2, 11);
  sigma.set_row(0, laws[0]);
  sigma.set_row(1, laws[1]);
  IntMatrix expected(2, 11);
  expected.set_row(0, vec({1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1}));
  expected.set_row(1, vec({0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0}));
  EXPECT_TRUE(hermite_normal_form(sigma).h == hermite_normal_form(expected).h);
  auto red = reduce_by_conservation(bdc, laws);
  EXPECT_EQ(red.reduced.n, 9u);
  EXPECT_TRUE(red.reduced.unitary());
}

TEST(Reduction, NoSigmasIsIdentity) {
  auto bdc = build_bdc(load("telemann.net"));
  auto red = reduce_by_conservation(bdc, {});
  EXPECT_TRUE(red.reduced.B == bdc.B && red.reduced.C == bdc.C);
}

TEST(Reduction, NonKernelSigmaIsRejected) {
  auto bdc = build_bdc(load("telemann.net"));
  EXPECT_THROW(reduce_by_conservation(bdc, {vec({1, 0, 0})}), std::invalid_argument);
}

TEST(Reduction, PreservesUnitarityOnRandomNetworks) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    auto bdc = build_bdc(random_unitary_network(rng));
    auto red = reduce_by_conservation(bdc, find_conservation_laws(bdc));
    EXPECT_TRUE(red.reduced.unitary());
    EXPECT_EQ(red.reduced.n, bdc.n - find_conservation_laws(bdc).size());
    EXPECT_TRUE(red.t_inv * red.t == IntMatrix::identity(bdc.n));
  }
}
