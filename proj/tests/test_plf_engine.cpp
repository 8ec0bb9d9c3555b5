#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plfnet;
using namespace plfnet::testing;

namespace {

PhiFamily family(const std::string& name) { return build_phi_family(build_bdc(load(name))); }

VertexSet telemann_fixed_point() {
  return VertexSet::from_columns(3, canonical({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {1, -1, 0}}));
}

Budget small_budget() {
  Budget b;
  b.max_iterations = 40;
  b.max_vertices = 400;
  b.max_coordinate = 1000;
  b.eigen_word_length = 6;
  b.max_products = 20000;
  return b;
}

std::vector<PhiFamily> random_families(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  RandomNetworkOptions opt;
  opt.max_species = 4;
  opt.max_reactions = 5;
  std::vector<PhiFamily> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(build_phi_family(build_bdc(random_unitary_network(rng, opt))));
  return out;
}

}  // namespace

TEST(WordProduct, AppliesModesInWordOrder) {
  PhiFamily f = family("telemann.net");
  EXPECT_TRUE(word_product(f, {0, 2}) == f[2] * f[0]);
  EXPECT_TRUE(word_product(f, {}) == IntMatrix::identity(3));
  EXPECT_THROW(word_product(f, {7}), std::out_of_range);
}

TEST(IterateOnce, TelemannFirstStepAddsTheSplitImage) {
  PhiFamily f = family("telemann.net");
  VertexSet y1 = iterate_once(VertexSet::identity(3), f);
  EXPECT_EQ(y1.columns, canonical({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}}));
  VertexSet y2 = iterate_once(y1, f);
  EXPECT_EQ(y2.columns, canonical({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {-1, 1, 0}}));
  EXPECT_TRUE(iterate_once(y2, f) == y2);
}

TEST(RemoveRedundant, DropsDominatedAndKeepsIndependentColumns) {
  auto a = remove_redundant(VertexSet::from_columns(2, canonical({{1, 0}, {2, 0}, {0, 1}})));
  EXPECT_EQ(a.columns, canonical({{2, 0}, {0, 1}}));
  auto b = remove_redundant(VertexSet::from_columns(2, canonical({{1, 0}, {0, 1}, {1, 1}})));
  EXPECT_EQ(b.pair_count(), 3u);
  EXPECT_TRUE(remove_redundant(telemann_fixed_point()) == telemann_fixed_point());
}

TEST(RemoveRedundant, ColumnOnAFaceIsDropped) {
  // [1,1] lies on the segment between 2e1 and 2e2.
  auto v = remove_redundant(VertexSet::from_columns(2, canonical({{2, 0}, {0, 2}, {1, 1}})));
  EXPECT_EQ(v.columns, canonical({{2, 0}, {0, 2}}));
}

TEST(Gauge, UnitBallAndOutsideSpan) {
  VertexSet y = VertexSet::from_columns(3, canonical({{1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(*gauge_value(y, vec({1, -1, 0})), Rational(2));
  EXPECT_FALSE(gauge_value(y, vec({0, 0, 1})).has_value());
}

TEST(InclusionTest, IdentityHasNoCertificateButTwiceIdentityDoes) {
  EXPECT_FALSE(inclusion_test(VertexSet::identity(3)).has_value());
  auto c = inclusion_test(VertexSet::from_columns(2, canonical({{2, 0}, {0, 2}})));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->witnesses[0], (std::vector<Rational>{Rational(0), Rational(1, 2)}));
  EXPECT_FALSE(inclusion_test(telemann_fixed_point()).has_value());
}

TEST(InclusionTest, RankDeficientSetHasNoCertificate) {
  EXPECT_FALSE(inclusion_test(VertexSet::from_columns(2, canonical({{2, 2}}))).has_value());
}

TEST(EigenCriterion, TelemannProductsStayOnTheUnitCircle) {
  EXPECT_FALSE(eigen_criterion(family("telemann.net"), 6).has_value());
}

TEST(EigenCriterion, UnboundedCycleHasADoublingProduct) {
  PhiFamily f = family("unbounded_cycle.net");
  auto c = eigen_criterion(f, 6);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->failure, EigenFailure::NonCyclotomic);
  EXPECT_EQ(c->word, (Word{0, 1, 2}));
  EXPECT_TRUE(c->offending == IntPoly(vec({-2, 1})));
  EXPECT_TRUE(verify_certificate(f, *c));
}

TEST(EigenCriterion, SingleModeIsIdempotent) {
  PhiFamily f = build_phi_family(build_bdc(parse_network("X1 -> X2")));
  EXPECT_FALSE(eigen_criterion(f, 8).has_value());
}

TEST(EigenCriterion, EnumeratorClosesOnAFiniteSemigroup) {
  ProductEnumerator en(family("telemann.net"), 100000);
  for (int i = 0; i < 30 && !en.closed(); ++i) ASSERT_FALSE(en.next_layer().has_value());
  EXPECT_TRUE(en.closed());
  EXPECT_FALSE(en.saturated());
}

TEST(EigenCriterion, JordanBlockIsDetectedAndVerified) {
  // Phi = [[1,1],[0,1]] is a shear: spectrum {1,1}, powers grow linearly.
  BDCSystem s;
  s.n = 2;
  s.q = 1;
  s.B = mat({{1}, {0}});
  s.C = mat({{0, 1}});
  s.labels = {"a", "b"};
  s.modes = {Mode{0, 1, 1}};
  PhiFamily f = build_phi_family(s);
  auto c = eigen_criterion(f, 3);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->failure, EigenFailure::JordanBlock);
  EXPECT_TRUE(verify_certificate(f, *c));
}

TEST(Invariance, TelemannFixedPointIsInvariantAndItsTruncationIsNot) {
  PhiFamily f = family("telemann.net");
  EXPECT_TRUE(check_invariance(telemann_fixed_point(), f));
  EXPECT_FALSE(check_invariance(VertexSet::from_columns(3, canonical({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}})), f));
  EXPECT_FALSE(check_invariance(VertexSet::identity(3), family("unbounded_cycle.net")));
}

TEST(Procedure, TelemannConvergesInThreeIterations) {
  PLFResult r = run_procedure(family("telemann.net"));
  EXPECT_EQ(r.verdict, Verdict::Converged);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_TRUE(r.vertex_set == telemann_fixed_point());
  EXPECT_EQ(r.vertex_count(), 10u);
}

TEST(Procedure, UnboundedCycleIsCertifiedByTheEigenCriterion) {
  PhiFamily f = family("unbounded_cycle.net");
  PLFResult r = run_procedure(f);
  ASSERT_EQ(r.verdict, Verdict::CertifiedNoPLF);
  ASSERT_TRUE(std::holds_alternative<EigenCertificate>(r.certificate));
  EXPECT_LE(std::get<EigenCertificate>(r.certificate).word.size(), 3u);
  EXPECT_TRUE(verify_certificate(f, r.certificate));
}

TEST(Procedure, UnboundedCycleIsCertifiedByInclusionWithoutEigen) {
  PhiFamily f = family("unbounded_cycle.net");
  PLFResult r = run_procedure(f, small_budget(), Criteria{true, false});
  ASSERT_EQ(r.verdict, Verdict::CertifiedNoPLF);
  ASSERT_TRUE(std::holds_alternative<InclusionCertificate>(r.certificate));
  EXPECT_TRUE(verify_certificate(f, r.certificate));
}

TEST(Procedure, WithoutCriteriaTheUnboundedCycleExhaustsTheBudget) {
  Budget b = small_budget();
  b.max_iterations = 5;
  PLFResult r = run_procedure(family("unbounded_cycle.net"), b, Criteria{false, false});
  EXPECT_EQ(r.verdict, Verdict::BudgetExhausted);
  EXPECT_FALSE(r.budget_reason.empty());
}

TEST(Procedure, RejectsEmptyBudgetFields) {
  Budget b;
  b.max_iterations = 0;
  EXPECT_THROW(run_procedure(family("telemann.net"), b), std::invalid_argument);
}

TEST(Procedure, HullsFormAMonotoneChain) {
  for (const auto& f : random_families(41, 40)) {
    VertexSet y = VertexSet::identity(f.dim());
    for (int k = 0; k < 6; ++k) {
      VertexSet next = iterate_once(y, f);
      L1Membership lp(next.columns, f.dim());
      for (const auto& c : y.columns) ASSERT_TRUE(in_hull(lp, c));
      if (next == y || next.max_coordinate() > 200) break;
      y = std::move(next);
    }
  }
}

TEST(Procedure, ConvergedSetIsInvariantAndMatchesTheFullIteration) {
  std::size_t converged = 0;
  for (const auto& f : random_families(42, 60)) {
    PLFResult r = run_procedure(f, small_budget());
    if (r.verdict != Verdict::Converged) continue;
    ++converged;
    EXPECT_TRUE(check_invariance(r.vertex_set, f));
    // The frontier iteration and the whole-set iteration reach the same polytope.
    VertexSet y = VertexSet::identity(f.dim());
    for (std::size_t k = 0; k <= r.iterations + 1; ++k) y = iterate_once(y, f);
    EXPECT_TRUE(y == r.vertex_set);
  }
  EXPECT_GT(converged, 10u);
}

TEST(Procedure, CertificatesVerifyAndTamperedOnesDoNot) {
  std::size_t inclusion = 0, eigen = 0;
  for (const auto& f : random_families(43, 80))
    for (Criteria crit : {Criteria{true, true}, Criteria{true, false}}) {
      PLFResult r = run_procedure(f, small_budget(), crit);
      if (r.verdict != Verdict::CertifiedNoPLF) continue;
      ASSERT_TRUE(verify_certificate(f, r.certificate));
      if (auto* e = std::get_if<EigenCertificate>(&r.certificate)) {
        ++eigen;
        EigenCertificate bad = *e;
        bad.characteristic = bad.characteristic * IntPoly(vec({1, 1}));
        EXPECT_FALSE(verify_certificate(f, bad));
        bad = *e;
        bad.word.clear();
        EXPECT_FALSE(verify_certificate(f, bad));
      } else {
        ++inclusion;
        auto bad = std::get<InclusionCertificate>(r.certificate);
        bad.witnesses[0][0] += Rational(1, 7);
        EXPECT_FALSE(verify_certificate(f, bad));
        // Scaling Y passes the norm checks but breaks the link to the iterate.
        auto scaled = std::get<InclusionCertificate>(r.certificate);
        for (auto& c : scaled.vertices.columns)
          for (auto& x : c) x *= 3;
        for (auto& w : scaled.witnesses)
          for (auto& p : w) p /= 3;
        EXPECT_FALSE(verify_certificate(f, scaled));
      }
    }
  EXPECT_GT(eigen, 0u);
  EXPECT_GT(inclusion, 0u);
}

TEST(Procedure, TwiceIdentityIsNotACertificateForAStableNetwork) {
  PhiFamily f = family("telemann.net");
  auto c = inclusion_test(VertexSet::from_columns(3, canonical({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})));
  ASSERT_TRUE(c.has_value());
  EXPECT_FALSE(verify_certificate(f, *c));
}

TEST(Procedure, DualHasTheSameVerdictOnSmallBundledNetworks) {
  for (const std::string name : {"telemann.net", "unbounded_cycle.net", "vivaldi.net", "two_cycle.net",
                                 "monomolecular_chain.net", "monomolecular_degradation.net"}) {
    auto bdc = build_bdc(load(name));
    PLFResult p = run_procedure(build_phi_family(bdc), small_budget());
    PLFResult d = run_procedure(build_phi_family(build_dual(bdc)), small_budget());
    EXPECT_EQ(p.verdict, d.verdict) << name;
  }
}

TEST(Procedure, RepeatedRunsAreIdentical) {
  for (const std::string name : {"telemann.net", "translation.net", "unbounded_cycle.net"}) {
    auto bdc = build_bdc(load(name));
    auto red = reduce_by_conservation(bdc, reducible_conservation_laws(bdc)).reduced;
    PhiFamily f = build_phi_family(red);
    PLFResult a = run_procedure(f), b = run_procedure(f);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_TRUE(a.vertex_set == b.vertex_set);
  }
}
