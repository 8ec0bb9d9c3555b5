#pragma once

// The analysis pipeline shared by the command-line tool and the tests:
// network -> BDC -> pins -> conservation reduction -> dual -> procedure and
// non-singularity, plus re-verification of a saved report.

#include "plfnet/json_io.hpp"

#include <string>
#include <vector>

namespace plfnet {

struct PipelineOptions {
  bool reduce = true;
  bool dual = false;
  std::vector<std::string> pins;  // species names or 1-based indices
  Budget budget;
  Criteria criteria;
};

struct PreparedSystem {
  BDCSystem full;
  BDCSystem pinned;
  std::set<std::size_t> pin_indices;
  std::optional<ConservationReduction> reduction;
  BDCSystem analysed;
};

/// Resolves a species (or reaction) reference: a name or a 1-based index.
inline std::size_t resolve_name(const std::vector<std::string>& names, const std::string& ref) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == ref) return i;
  if (!ref.empty() && std::all_of(ref.begin(), ref.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::size_t k = std::stoul(ref);
    if (k >= 1 && k <= names.size()) return k - 1;
  }
  throw std::invalid_argument("unknown name '" + ref + "'");
}

inline PreparedSystem prepare_system(const ReactionNetwork& net, const PipelineOptions& opt) {
  PreparedSystem p;
  p.full = build_bdc(net);
  for (const auto& name : opt.pins) p.pin_indices.insert(resolve_name(p.full.labels, name));
  p.pinned = p.pin_indices.empty() ? p.full : reduce_pinned(p.full, p.pin_indices);
  BDCSystem sys = p.pinned;
  if (opt.reduce) {
    p.reduction = reduce_by_conservation(sys, reducible_conservation_laws(sys));
    sys = p.reduction->reduced;
  }
  p.analysed = opt.dual ? build_dual(sys) : sys;
  return p;
}

enum class Outcome { AsymptoticallyStable, MarginallyStable, NoPLF, Undecided };

inline int exit_code(Outcome o) {
  switch (o) {
    case Outcome::AsymptoticallyStable:
    case Outcome::MarginallyStable: return 0;
    case Outcome::NoPLF: return 1;
    case Outcome::Undecided: return 2;
  }
  return 2;
}

inline std::string describe(Outcome o) {
  switch (o) {
    case Outcome::AsymptoticallyStable: return "structurally asymptotically stable";
    case Outcome::MarginallyStable: return "structurally marginally stable (weak PLF)";
    case Outcome::NoPLF: return "no structural PLF";
    case Outcome::Undecided: return "undecided (budget)";
  }
  return "?";
}

struct AnalysisReport {
  PreparedSystem system;
  PLFResult plf;
  NonSingReport nonsingular;
  Outcome outcome = Outcome::Undecided;
};

inline AnalysisReport analyze(const ReactionNetwork& net, const PipelineOptions& opt) {
  AnalysisReport r;
  r.system = prepare_system(net, opt);
  r.plf = run_procedure(build_phi_family(r.system.analysed), opt.budget, opt.criteria);
  r.nonsingular = nonsingular_structural(r.system.analysed, true);
  switch (r.plf.verdict) {
    case Verdict::Converged:
      r.outcome = r.nonsingular.structural == NonSingVerdict::Positive ? Outcome::AsymptoticallyStable
                                                                       : Outcome::MarginallyStable;
      break;
    case Verdict::CertifiedNoPLF: r.outcome = Outcome::NoPLF; break;
    case Verdict::BudgetExhausted: r.outcome = Outcome::Undecided; break;
  }
  return r;
}

inline Json options_to_json(const PipelineOptions& opt) {
  return Json{{"reduce", opt.reduce},
              {"dual", opt.dual},
              {"pins", opt.pins},
              {"budget",
               {{"max_iterations", opt.budget.max_iterations},
                {"max_vertices", opt.budget.max_vertices},
                {"max_coordinate", int_to_json(opt.budget.max_coordinate)},
                {"eigen_word_length", opt.budget.eigen_word_length},
                {"max_products", opt.budget.max_products}}},
              {"criteria", {{"inclusion", opt.criteria.inclusion}, {"eigen", opt.criteria.eigen}}}};
}

inline PipelineOptions options_from_json(const Json& j) {
  PipelineOptions o;
  o.reduce = j.value("reduce", true);
  o.dual = j.value("dual", false);
  o.pins = j.value("pins", std::vector<std::string>{});
  if (j.contains("budget")) {
    const Json& b = j["budget"];
    o.budget.max_iterations = b.value("max_iterations", o.budget.max_iterations);
    o.budget.max_vertices = b.value("max_vertices", o.budget.max_vertices);
    if (b.contains("max_coordinate")) o.budget.max_coordinate = int_from_json(b["max_coordinate"]);
    o.budget.eigen_word_length = b.value("eigen_word_length", o.budget.eigen_word_length);
    o.budget.max_products = b.value("max_products", o.budget.max_products);
  }
  if (j.contains("criteria")) {
    o.criteria.inclusion = j["criteria"].value("inclusion", true);
    o.criteria.eigen = j["criteria"].value("eigen", true);
  }
  return o;
}

inline Json report_to_json(const ReactionNetwork& net, const AnalysisReport& r, const PipelineOptions& opt) {
  Json j{{"options", options_to_json(opt)},
         {"species", net.species_names()},
         {"system", bdc_to_json(r.system.analysed, &net)},
         {"procedure", plf_result_to_json(r.plf)},
         {"nonsingular", nonsingular_to_json(r.nonsingular)},
         {"conclusion", describe(r.outcome)},
         {"exit_code", exit_code(r.outcome)}};
  if (r.system.reduction) {
    Json s = Json::array();
    for (const auto& v : r.system.reduction->sigmas) s.push_back(vector_to_json(v));
    j["reduction"] = {{"sigmas", s}, {"T_inv", matrix_to_json(r.system.reduction->t_inv)}};
  }
  return j;
}

struct VerificationResult {
  bool ok = true;
  std::vector<std::string> messages;

  void fail(std::string m) {
    ok = false;
    messages.push_back(std::move(m));
  }
};

/// Rebuilds the analysed system from the network and the recorded options,
/// then checks the report's evidence: a certificate for CertifiedNoPLF, or
/// invariance of the vertex set (and that it contains the unit ball of the
/// 1-norm) for Converged.
inline VerificationResult verify_report(const ReactionNetwork& net, const Json& report) {
  VerificationResult v;
  PipelineOptions opt = options_from_json(report.at("options"));
  PreparedSystem sys = prepare_system(net, opt);
  const Json& s = report.at("system");
  if (matrix_from_json(s.at("B"), sys.analysed.q) != sys.analysed.B ||
      matrix_from_json(s.at("C"), sys.analysed.n) != sys.analysed.C) {
    v.fail("recorded B, C differ from the system rebuilt from the network");
    return v;
  }
  PhiFamily fam = build_phi_family(sys.analysed);
  const Json& proc = report.at("procedure");
  const std::string verdict = proc.at("verdict").get<std::string>();
  const std::size_t n = sys.analysed.n;
  if (verdict == "CertifiedNoPLF") {
    Certificate c = certificate_from_json(proc.at("certificate"), n);
    if (std::holds_alternative<std::monostate>(c)) v.fail("CertifiedNoPLF without a certificate");
    else if (!verify_certificate(fam, c)) v.fail("certificate does not re-verify");
    else v.messages.push_back("certificate re-verified");
  } else if (verdict == "Converged") {
    VertexSet vs = vertex_set_from_json(proc.at("columns"), n);
    if (!check_invariance(vs, fam)) v.fail("vertex set is not invariant under every Phi_i");
    L1Membership lp(vs.columns, n);
    for (std::size_t i = 0; i < n; ++i)
      if (!in_hull(lp, unit_vector(n, i))) v.fail("unit vector e" + std::to_string(i + 1) + " outside the vertex set");
    if (v.ok) v.messages.push_back("vertex set invariant and contains the initial set");
  } else {
    v.messages.push_back("budget verdict: nothing to verify");
  }
  return v;
}

}  // namespace plfnet
