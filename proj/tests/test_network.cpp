#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plfnet;
using namespace plfnet::testing;

TEST(Parse, SingleReactionGivesOneColumn) {
  auto net = parse_network("X1 -> X2 + X3");
  ASSERT_EQ(net.m(), 1u);
  EXPECT_EQ(net.S.col(0), vec({-1, 1, 1}));
  EXPECT_EQ(net.g0, vec({0, 0, 0}));
}

TEST(Parse, InfluxHasNoColumn) {
  auto net = parse_network("0 -> X1\nX1 -> X2");
  EXPECT_EQ(net.m(), 1u);
  EXPECT_EQ(net.g0, vec({1, 0}));
  EXPECT_EQ(net.reactions[0].kind, ReactionKind::Influx);
  auto alt = parse_network("∅ -> X1\nX1 -> X2");
  EXPECT_EQ(alt.g0, net.g0);
}

TEST(Parse, ReversibleArrowExpandsToTwoReactions) {
  auto net = parse_network("X1 + X2 <-> X3");
  ASSERT_EQ(net.m(), 2u);
  EXPECT_EQ(net.S.col(0), vec({-1, -1, 1}));
  EXPECT_EQ(net.S.col(1), vec({1, 1, -1}));
}

TEST(Parse, SpeciesOrderFollowsFirstAppearanceOrDeclaration) {
  auto net = parse_network("B -> A");
  EXPECT_EQ(net.species_names(), (std::vector<std::string>{"B", "A"}));
  auto decl = parse_network("@species A B\nB -> A");
  EXPECT_EQ(decl.species_names(), (std::vector<std::string>{"A", "B"}));
}

TEST(Parse, RateLabelsAndComments) {
  auto net = parse_network("# header\nrate g1: X1 -> X2   # trailing\nrate ka/kd: X2 <-> X3\n");
  ASSERT_EQ(net.reactions.size(), 3u);
  EXPECT_EQ(net.reactions[0].label, "g1");
  EXPECT_EQ(net.reactions[1].label, "ka");
  EXPECT_EQ(net.reactions[2].label, "kd");
}

TEST(Parse, DegradationIsInternal) {
  auto net = parse_network("X1 -> 0");
  ASSERT_EQ(net.m(), 1u);
  EXPECT_EQ(net.S.col(0), vec({-1}));
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  try {
    parse_network("X1 -> X2\nX1 => X2");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GE(e.column(), 3u);
  }
  EXPECT_THROW(parse_network("@species A\n@species B"), ParseError);
  EXPECT_THROW(parse_network("@species A A"), ParseError);
  EXPECT_THROW(parse_network("@species A\nA -> B"), ParseError);
  EXPECT_THROW(parse_network("0 -> 0"), ParseError);
  EXPECT_THROW(parse_network("X1 -> X2 extra"), ParseError);
}

TEST(Parse, StrictModeRejectsNonUnitary) {
  EXPECT_THROW(parse_network("2 X1 -> X2"), ParseError);
  EXPECT_THROW(parse_network("X1 -> X1 + X1"), ParseError);
}

TEST(Validate, BundledNetworksHaveNoViolations) {
  for (const auto& name : bundled()) EXPECT_TRUE(validate_assumptions(load(name)).empty()) << name;
}

TEST(Validate, CoefficientTwoIsNonUnitary) {
  auto net = parse_network("2 X1 -> X2", ParseMode::Lenient);
  auto v = validate_assumptions(net);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, ViolationKind::NonUnitary);
}

TEST(Validate, SpeciesOnBothSidesIsAutocatalysis) {
  auto net = parse_network("X1 -> X1 + X1", ParseMode::Lenient);
  auto v = validate_assumptions(net);
  bool autocatalysis = false;
  for (const auto& x : v) autocatalysis |= x.kind == ViolationKind::Autocatalysis;
  EXPECT_TRUE(autocatalysis);
}

TEST(Network, StoichiometryIsProductsMinusReactants) {
  for (const auto& name : bundled()) {
    auto net = load(name);
    for (std::size_t j = 0; j < net.m(); ++j) {
      const Reaction& r = net.reactions[net.internal_reactions[j]];
      for (std::size_t i = 0; i < net.n(); ++i) {
        long in_products = std::count(r.products.begin(), r.products.end(), i);
        long in_reactants = std::count(r.reactants.begin(), r.reactants.end(), i);
        EXPECT_EQ(net.S(i, j), in_products - in_reactants);
      }
    }
    std::size_t internal = 0;
    for (const auto& r : net.reactions) internal += r.kind == ReactionKind::Internal;
    EXPECT_EQ(internal, net.S.cols());
  }
}

TEST(Network, SerializeRoundTrips) {
  for (const auto& name : bundled()) {
    auto net = load(name);
    EXPECT_TRUE(parse_network(serialize(net)) == net) << name;
  }
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    auto net = random_unitary_network(rng);
    EXPECT_TRUE(parse_network(serialize(net)) == net);
  }
}

TEST(Network, InhibitorsFlipTheModeSign) {
  auto net = parse_network("X1 + X2 -> X3 inhibits X2");
  auto bdc = build_bdc(net);
  ASSERT_EQ(bdc.q, 2u);
  EXPECT_EQ(bdc.modes[0].sign, 1);
  EXPECT_EQ(bdc.modes[1].sign, -1);
  EXPECT_EQ(bdc.C.row(1), vec({0, -1, 0}));
  EXPECT_TRUE(parse_network(serialize(net)) == net);
  EXPECT_THROW(parse_network("X1 -> X2 inhibits X2"), ParseError);
  EXPECT_THROW(parse_network("X1 <-> X2 inhibits X1"), ParseError);
}
