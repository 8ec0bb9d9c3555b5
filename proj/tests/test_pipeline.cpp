#include "support.hpp"

#include <gtest/gtest.h>

using namespace plfnet;
using namespace plfnet::testing;

namespace {

struct Saved {
  ReactionNetwork net;
  Json report;
};

Saved run(const std::string& name, PipelineOptions opt = {}) {
  Saved s{load(name), {}};
  s.report = report_to_json(s.net, analyze(s.net, opt), opt);
  return s;
}

}  // namespace

TEST(Json, IntegersBeyondSixtyFourBitsBecomeStrings) {
  Int big = Int(1) << 80;
  EXPECT_TRUE(int_to_json(big).is_string());
  EXPECT_EQ(int_from_json(int_to_json(big)), big);
  EXPECT_EQ(int_from_json(int_to_json(Int(-5))), -5);
  EXPECT_THROW(int_from_json(Json(1.5)), std::invalid_argument);
}

TEST(Json, MatricesAndSystemsRoundTrip) {
  auto bdc = build_bdc(load("vivaldi.net"));
  EXPECT_TRUE(matrix_from_json(matrix_to_json(bdc.B)) == bdc.B);
  EXPECT_TRUE(matrix_from_json(matrix_to_json(bdc.C)) == bdc.C);
  EXPECT_THROW(matrix_from_json(Json::parse("[[1,2],[3]]")), std::invalid_argument);
}

TEST(Json, CertificatesRoundTrip) {
  for (Criteria crit : {Criteria{true, true}, Criteria{true, false}}) {
    PhiFamily f = build_phi_family(build_bdc(load("unbounded_cycle.net")));
    Budget b;
    b.max_iterations = 40;
    PLFResult r = run_procedure(f, b, crit);
    ASSERT_EQ(r.verdict, Verdict::CertifiedNoPLF);
    Json j = certificate_to_json(r.certificate);
    Certificate back = certificate_from_json(Json::parse(j.dump()), f.dim());
    EXPECT_TRUE(verify_certificate(f, back));
    EXPECT_EQ(certificate_to_json(back), j);
  }
  EXPECT_THROW(certificate_from_json(Json{{"kind", "oracle"}}, 3), std::invalid_argument);
}

TEST(Json, OptionsRoundTrip) {
  PipelineOptions o;
  o.reduce = false;
  o.dual = true;
  o.pins = {"X2"};
  o.budget.max_iterations = 17;
  o.budget.max_coordinate = Int(1) << 70;
  o.criteria.eigen = false;
  PipelineOptions back = options_from_json(Json::parse(options_to_json(o).dump()));
  EXPECT_EQ(options_to_json(back), options_to_json(o));
}

TEST(Pipeline, ResolvesNamesAndIndices) {
  std::vector<std::string> names{"X1", "X2", "Y"};
  EXPECT_EQ(resolve_name(names, "Y"), 2u);
  EXPECT_EQ(resolve_name(names, "2"), 1u);
  EXPECT_THROW(resolve_name(names, "4"), std::invalid_argument);
  EXPECT_THROW(resolve_name(names, "Z"), std::invalid_argument);
}

TEST(Pipeline, OutcomesAndExitCodes) {
  auto t = analyze(load("telemann.net"), {});
  EXPECT_EQ(t.outcome, Outcome::AsymptoticallyStable);
  EXPECT_EQ(exit_code(t.outcome), 0);
  auto u = analyze(load("unbounded_cycle.net"), {});
  EXPECT_EQ(u.outcome, Outcome::NoPLF);
  EXPECT_EQ(exit_code(u.outcome), 1);
  PipelineOptions tight;
  tight.budget.max_iterations = 2;
  tight.criteria = {false, false};
  EXPECT_EQ(exit_code(analyze(load("unbounded_cycle.net"), tight).outcome), 2);
  auto pinned_x4 = analyze(load("vivaldi.net"), PipelineOptions{true, false, {"X4"}, {}, {}});
  EXPECT_EQ(pinned_x4.outcome, Outcome::MarginallyStable);
}

TEST(Pipeline, ReductionIsRecordedOnlyWhenLawsExist) {
  auto p = prepare_system(load("translation.net"), {});
  ASSERT_TRUE(p.reduction.has_value());
  EXPECT_FALSE(p.reduction->sigmas.empty());
  EXPECT_EQ(p.analysed.n + p.reduction->sigmas.size(), p.full.n);
  PipelineOptions none;
  none.reduce = false;
  EXPECT_FALSE(prepare_system(load("translation.net"), none).reduction.has_value());
}

TEST(Verify, SavedReportsReVerify) {
  for (const std::string name : {"telemann.net", "unbounded_cycle.net", "translation.net", "two_cycle.net"}) {
    Saved s = run(name);
    VerificationResult v = verify_report(s.net, Json::parse(s.report.dump()));
    EXPECT_TRUE(v.ok) << name << ": " << (v.messages.empty() ? "" : v.messages[0]);
  }
  PipelineOptions dual;
  dual.dual = true;
  Saved d = run("telemann.net", dual);
  EXPECT_TRUE(verify_report(d.net, d.report).ok);
}

TEST(Verify, TamperedReportsAreRejected) {
  Saved t = run("telemann.net");
  Json dropped = t.report;
  dropped["procedure"]["columns"].erase(dropped["procedure"]["columns"].size() - 1);
  EXPECT_FALSE(verify_report(t.net, dropped).ok);

  Json other_b = t.report;
  other_b["system"]["B"][0][0] = 5;
  EXPECT_FALSE(verify_report(t.net, other_b).ok);

  Saved u = run("unbounded_cycle.net");
  Json word = u.report;
  word["procedure"]["certificate"]["word"] = Json::array({0, 1});
  EXPECT_FALSE(verify_report(u.net, word).ok);

  Json no_cert = u.report;
  no_cert["procedure"]["certificate"] = nullptr;
  EXPECT_FALSE(verify_report(u.net, no_cert).ok);

  // A converged claim for a network that has no PLF.
  Json swapped = u.report;
  swapped["procedure"]["verdict"] = "Converged";
  swapped["procedure"]["columns"] = Json::parse("[[1,0,0],[0,1,0],[0,0,1]]");
  EXPECT_FALSE(verify_report(u.net, swapped).ok);
}

TEST(Verify, BudgetVerdictHasNothingToCheck) {
  PipelineOptions tight;
  tight.budget.max_iterations = 2;
  tight.criteria = {false, false};
  Saved s = run("unbounded_cycle.net", tight);
  VerificationResult v = verify_report(s.net, s.report);
  EXPECT_TRUE(v.ok);
  ASSERT_FALSE(v.messages.empty());
}
