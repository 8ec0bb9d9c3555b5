#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plfnet;
using namespace plfnet::testing;

namespace {

/// Sum of the Cauchy-Binet terms at a given D.
Rational evaluate_terms(const NonSingReport& r, const std::vector<Rational>& d) {
  Rational s = 0;
  for (const auto& t : r.terms) {
    Rational p(t.coefficient);
    for (auto k : t.subset) p *= d[k];
    s += p;
  }
  return s;
}

std::vector<Rational> random_diagonal(std::mt19937_64& rng, std::size_t q) {
  std::uniform_int_distribution<long> num(1, 9), den(1, 4);
  std::vector<Rational> d;
  for (std::size_t k = 0; k < q; ++k) {
    Rational x(num(rng), den(rng));
    x.canonicalize();
    d.push_back(x);
  }
  return d;
}

}  // namespace

TEST(Structural, DegradationIsPositive) {
  auto r = nonsingular_structural(build_bdc(parse_network("X1 -> 0")));
  EXPECT_EQ(r.structural, NonSingVerdict::Positive);
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_EQ(r.terms[0].coefficient, 1);
}

TEST(Structural, UnboundedCycleFailsOnTheDoublingLoop) {
  auto bdc = build_bdc(load("unbounded_cycle.net"));
  auto r = nonsingular_structural(bdc);
  EXPECT_EQ(r.structural, NonSingVerdict::FailsAtTerm);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->subset, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(r.witness->coefficient, -1);
  auto early = nonsingular_structural(bdc, true);
  EXPECT_EQ(early.structural, NonSingVerdict::FailsAtTerm);
  EXPECT_LE(early.subsets_examined, r.subsets_examined);
}

TEST(Structural, TwoCycleIsDegenerate) {
  EXPECT_EQ(nonsingular_structural(build_bdc(load("two_cycle.net"))).structural, NonSingVerdict::Degenerate);
}

TEST(Structural, EmptySystemIsPositive) {
  BDCSystem s;
  EXPECT_EQ(nonsingular_structural(s).structural, NonSingVerdict::Positive);
}

TEST(Box, UnboundedCycleFailsOnEveryTestedBox) {
  auto bdc = build_bdc(load("unbounded_cycle.net"));
  EXPECT_FALSE(nonsingular_on_box(bdc, DBox::uniform(5, 1, 2)));
  EXPECT_FALSE(nonsingular_on_box(bdc, DBox::uniform(5, 1, 1)));
}

TEST(Box, DegradationPassesEveryBox) {
  auto bdc = build_bdc(parse_network("X1 -> 0"));
  EXPECT_TRUE(nonsingular_on_box(bdc, DBox::uniform(1, Rational(1, 100), 100)));
}

TEST(Box, RejectsMalformedBoxes) {
  auto bdc = build_bdc(load("telemann.net"));
  EXPECT_THROW(nonsingular_on_box(bdc, DBox::uniform(3, 1, 2)), std::invalid_argument);
  EXPECT_THROW(nonsingular_on_box(bdc, DBox::uniform(4, 2, 1)), std::invalid_argument);
  EXPECT_THROW(nonsingular_on_box(bdc, DBox::uniform(4, 0, 1)), std::invalid_argument);
}

TEST(Box, MoreThanTwentyModesIsRefused) {
  std::string text = "@species";
  for (int i = 1; i <= 22; ++i) text += " X" + std::to_string(i);
  text += "\n";
  for (int i = 1; i <= 21; ++i) text += "X" + std::to_string(i) + " -> X" + std::to_string(i + 1) + "\n";
  auto bdc = build_bdc(parse_network(text));
  ASSERT_EQ(bdc.q, 21u);
  EXPECT_THROW(nonsingular_on_box(bdc, DBox::uniform(21, 1, 2)), BoxSizeError);
}

TEST(Structural, CauchyBinetExpansionMatchesTheDirectDeterminant) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 80; ++t) {
    auto bdc = build_bdc(random_unitary_network(rng));
    auto r = nonsingular_structural(bdc);
    for (int s = 0; s < 3; ++s) {
      auto d = random_diagonal(rng, bdc.q);
      EXPECT_EQ(evaluate_terms(r, d), det_minus_bdc(bdc, d));
    }
  }
}

TEST(Structural, PositiveImpliesEveryBoxPasses) {
  std::mt19937_64 rng(62);
  std::size_t positive = 0;
  for (int t = 0; t < 80; ++t) {
    auto bdc = build_bdc(random_unitary_network(rng));
    if (bdc.q > 10 || nonsingular_structural(bdc).structural != NonSingVerdict::Positive) continue;
    ++positive;
    auto lo = random_diagonal(rng, bdc.q);
    DBox box{lo, lo};
    for (auto& u : box.upper) u *= 3;
    EXPECT_TRUE(nonsingular_on_box(bdc, box));
  }
  EXPECT_GT(positive, 5u);
}

TEST(Structural, NegativeWitnessDominatesWhenItsModesAreFast) {
  std::mt19937_64 rng(63);
  std::size_t failing = 0;
  for (int t = 0; t < 120; ++t) {
    auto bdc = build_bdc(random_unitary_network(rng));
    auto r = nonsingular_structural(bdc);
    if (r.structural != NonSingVerdict::FailsAtTerm) continue;
    ++failing;
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(cauchy_binet_coefficient(bdc, r.witness->subset), r.witness->coefficient);
    // D = t on the witness modes and 1/t elsewhere: the witness term is the
    // only one of order t^n, so the determinant becomes negative.
    std::vector<Rational> d(bdc.q, Rational(1, 10000));
    for (auto k : r.witness->subset) d[k] = 10000;
    EXPECT_LT(det_minus_bdc(bdc, d), 0);
  }
  EXPECT_GT(failing, 3u);
}
