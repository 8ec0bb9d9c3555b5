// plfnet: structural polyhedral stability of unitary reaction networks.
//
// Exit codes: 0 stable, 1 certified no PLF, 2 undecided (budget), 3 input error.

#include "plfnet/pipeline.hpp"
#include "plfnet/random_network.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace plfnet;

namespace {

constexpr int kStable = 0;
constexpr int kCertifiedNo = 1;
constexpr int kUndecided = 2;
constexpr int kInputError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string network;
  bool json = false;
  bool no_reduce = false;
  bool dual = false;
  std::size_t budget_iters = Budget{}.max_iterations;
  std::size_t budget_vertices = Budget{}.max_vertices;
  std::string max_coordinate = "1000000";
  std::size_t eigen_words = Budget{}.eigen_word_length;
  std::size_t max_products = Budget{}.max_products;
  std::vector<std::string> criteria{"inclusion", "eigen"};
  std::vector<std::string> pins;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ReactionNetwork load_network(const std::string& path) {
  ReactionNetwork net;
  try {
    net = parse_network(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
  auto violations = validate_assumptions(net);
  if (!violations.empty()) {
    std::string msg = path + ": network violates the unitary assumptions";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw InputError(msg);
  }
  return net;
}

PipelineOptions pipeline_options(const Common& c) {
  PipelineOptions o;
  o.reduce = !c.no_reduce;
  o.dual = c.dual;
  o.pins = c.pins;
  o.budget.max_iterations = c.budget_iters;
  o.budget.max_vertices = c.budget_vertices;
  try {
    o.budget.max_coordinate = Int(c.max_coordinate);
  } catch (const std::invalid_argument&) {
    throw InputError("--budget-coord: not an integer");
  }
  o.budget.eigen_word_length = c.eigen_words;
  o.budget.max_products = c.max_products;
  try {
    o.budget.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  o.criteria.inclusion = std::find(c.criteria.begin(), c.criteria.end(), "inclusion") != c.criteria.end();
  o.criteria.eigen = std::find(c.criteria.begin(), c.criteria.end(), "eigen") != c.criteria.end();
  return o;
}

void add_budget_flags(CLI::App* app, Common& c) {
  app->add_option("--budget-iters", c.budget_iters, "maximum procedure iterations")->check(CLI::PositiveNumber);
  app->add_option("--budget-vertices", c.budget_vertices, "maximum canonical vertex columns")->check(CLI::PositiveNumber);
  app->add_option("--budget-coord", c.max_coordinate, "maximum vertex coordinate magnitude");
  app->add_option("--eigen-words", c.eigen_words, "maximum product word length for the eigen criterion")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-products", c.max_products, "maximum distinct products for the eigen criterion")
      ->check(CLI::PositiveNumber);
  app->add_option("--criteria", c.criteria, "stopping criteria to enable (inclusion,eigen)")
      ->delimiter(',')
      ->check(CLI::IsMember({"inclusion", "eigen", "none"}));
}

void add_network(CLI::App* app, Common& c) {
  app->add_option("network", c.network, "reaction network file")->required()->check(CLI::ExistingFile);
  app->add_flag("--json", c.json, "emit a JSON report");
}

std::string word_text(const Word& w) {
  // Application order is left to right; the product is written right to left.
  std::string s;
  for (std::size_t k = w.size(); k-- > 0;) s += "Phi" + std::to_string(w[k] + 1);
  return s;
}

std::string certificate_text(const Certificate& c) {
  if (auto* a = std::get_if<InclusionCertificate>(&c))
    return "inclusion: every e_i has gauge < 1 on " + std::to_string(a->vertices.pair_count()) + " columns";
  if (auto* e = std::get_if<EigenCertificate>(&c)) return "eigen: " + word_text(e->word) + ", " + e->description;
  return "none";
}

void print_matrix(std::ostream& os, const std::string& name, const IntMatrix& m) {
  os << name << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (std::size_t r = 0; r < m.rows(); ++r) os << "  " << to_string(m.row(r)) << "\n";
}

void print_system(std::ostream& os, const BDCSystem& s) {
  os << "coordinates:";
  for (const auto& l : s.labels) os << " " << l;
  os << "\n";
  print_matrix(os, "B", s.B);
  print_matrix(os, "C", s.C);
}

void print_reduction(std::ostream& os, const PreparedSystem& p) {
  if (!p.reduction || p.reduction->sigmas.empty()) {
    os << "conservation laws reduced: none\n";
    return;
  }
  os << "conservation laws reduced:\n";
  for (const auto& s : p.reduction->sigmas) os << "  sigma = " << to_string(s) << "\n";
}

void print_plf(std::ostream& os, const PLFResult& r, bool columns) {
  os << "procedure: " << to_string(r.verdict) << " after " << r.iterations << " iteration(s)";
  if (!r.budget_reason.empty()) os << " (" << r.budget_reason << ")";
  os << "\n";
  if (r.verdict == Verdict::Converged) {
    os << "vertex columns: " << r.pair_count() << " canonical (" << r.vertex_count() << " vertices with negatives)\n";
    if (columns)
      for (const auto& c : r.vertex_set.columns) os << "  " << to_string(c) << "\n";
  } else if (r.verdict == Verdict::CertifiedNoPLF) {
    os << "certificate: " << certificate_text(r.certificate) << "\n";
  }
}

void print_nonsingular(std::ostream& os, const NonSingReport& r) {
  os << "structural non-singularity: " << to_string(r.structural);
  if (r.witness) {
    os << " (negative coefficient " << r.witness->coefficient.get_str() << " on modes";
    for (auto k : r.witness->subset) os << " " << k + 1;
    os << ")";
  }
  os << "\n";
}

std::string outcome_line(const AnalysisReport& r) {
  std::string s = describe(r.outcome);
  if (r.outcome == Outcome::NoPLF) s += " (certificate: " + certificate_text(r.plf.certificate) + ")";
  return s;
}

int cmd_analyze(const Common& c) {
  ReactionNetwork net = load_network(c.network);
  PipelineOptions opt = pipeline_options(c);
  AnalysisReport r = analyze(net, opt);
  if (c.json) {
    std::cout << report_to_json(net, r, opt).dump(2) << "\n";
  } else {
    std::cout << "network: " << c.network << " (" << net.n() << " species, " << net.m() << " internal reactions, "
              << r.system.full.q << " modes)\n";
    if (!r.system.pin_indices.empty()) {
      std::cout << "pinned:";
      for (auto i : r.system.pin_indices) std::cout << " " << r.system.full.labels[i];
      std::cout << "\n";
    }
    print_reduction(std::cout, r.system);
    std::cout << "analysed system: n=" << r.system.analysed.n << " q=" << r.system.analysed.q
              << (opt.dual ? " (dual)" : "") << "\n";
    print_plf(std::cout, r.plf, true);
    print_nonsingular(std::cout, r.nonsingular);
    std::cout << "verdict: " << outcome_line(r) << "\n";
  }
  return exit_code(r.outcome);
}

std::set<std::size_t> resolve_all(const std::vector<std::string>& names, const std::vector<std::string>& refs) {
  std::set<std::size_t> out;
  for (const auto& r : refs) {
    try {
      out.insert(resolve_name(names, r));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  return out;
}

// Eigen certificate for the net with black holes, with the word expressed in
// the full net's transition indices.
std::optional<EigenCertificate> gpn_growth_word(const BDCSystem& bdc, const GpnModel& model, std::size_t words) {
  if (model.black_holes.size() >= bdc.n) return std::nullopt;
  BDCSystem sub = model.black_holes.empty() ? bdc : reduce_pinned(bdc, model.black_holes);
  auto cert = eigen_criterion(build_phi_family(sub), words);
  if (!cert) return std::nullopt;
  for (auto& h : cert->word) {
    const Mode& m = sub.modes[h];
    for (std::size_t k = 0; k < bdc.q; ++k)
      if (bdc.modes[k].reaction == m.reaction && bdc.modes[k].species == m.species) h = k;
  }
  return cert;
}

struct GpnArgs {
  std::vector<std::string> black_holes;
  std::vector<std::string> initial;
  std::string coord_bound = "1000";
  std::size_t state_cap = 1000000;
  std::string trace;
};

int cmd_gpn(const Common& c, const GpnArgs& g) {
  ReactionNetwork net = load_network(c.network);
  BDCSystem bdc = build_bdc(net);
  if (c.dual) bdc = build_dual(bdc);
  GpnModel model{build_phi_family(bdc), resolve_all(bdc.labels, g.black_holes)};
  if (g.initial.size() != bdc.n)
    throw InputError("--initial has " + std::to_string(g.initial.size()) + " entries, expected " + std::to_string(bdc.n));
  Marking init;
  for (const auto& s : g.initial) {
    try {
      init.push_back(Int(s));
    } catch (const std::invalid_argument&) {
      throw InputError("--initial: '" + s + "' is not an integer");
    }
  }
  Int bound;
  try {
    bound = Int(g.coord_bound);
  } catch (const std::invalid_argument&) {
    throw InputError("--coord-bound: not an integer");
  }
  if (bound <= 0 || g.state_cap == 0) throw InputError("--coord-bound and --state-cap must be positive");
  std::ofstream trace_out;
  std::function<void(const ReachTraceStep&)> trace;
  if (!g.trace.empty()) {
    trace_out.open(g.trace);
    if (!trace_out) throw InputError("cannot write '" + g.trace + "'");
    trace = [&](const ReachTraceStep& s) {
      trace_out << to_string(s.from) << " --Phi" << s.mode + 1 << "--> " << to_string(s.to) << "\n";
    };
  }
  ReachReport r = reach(model, init, bound, g.state_cap, trace);
  // BFS exceeds the bound on whichever place it reaches first; a pumping word
  // from the eigen criterion shows where the growth actually comes from.
  std::optional<PumpReport> pumped;
  std::optional<EigenCertificate> growth;
  if (r.verdict == ReachVerdict::Exceeded) {
    growth = gpn_growth_word(bdc, model, c.eigen_words);
    if (growth) pumped = pump(model, init, growth->word, bound);
  }
  if (c.json) {
    Json j{{"verdict", r.verdict == ReachVerdict::Finite ? "Finite" : "Exceeded"},
           {"states", r.stored},
           {"explored", r.explored},
           {"initial", vector_to_json(init)}};
    if (r.frontier_witness) {
      j["witness"] = vector_to_json(*r.frontier_witness);
      j["reason"] = r.reason;
    }
    if (pumped) {
      std::vector<std::string> names;
      for (auto i : pumped->growing) names.push_back(bdc.labels[i]);
      j["pumping"] = {{"word", growth->word},
                      {"rounds", pumped->rounds},
                      {"witness", vector_to_json(pumped->witness)},
                      {"growing_nodes", pumped->growing},
                      {"growing_names", names},
                      {"certificate", certificate_to_json(*growth)}};
    }
    if (r.verdict == ReachVerdict::Finite) {
      Json s = Json::array();
      for (const auto& m : r.states) s.push_back(vector_to_json(m));
      j["reachable"] = s;
    }
    std::cout << j.dump(2) << "\n";
  } else if (r.verdict == ReachVerdict::Finite) {
    std::cout << "reach: Finite, " << r.states.size() << " markings\n";
    for (const auto& m : r.states) std::cout << "  " << to_string(m) << "\n";
  } else {
    const Marking& w = *r.frontier_witness;
    std::cout << "reach: Exceeded (" << r.reason << ") after " << r.stored << " markings\n";
    std::cout << "witness: " << to_string(w) << "\n";
    if (pumped) {
      std::cout << "pumping word " << word_text(growth->word) << " (" << growth->description << ")\n";
      std::cout << "after " << pumped->rounds << " round(s): " << to_string(pumped->witness) << "\n";
      for (auto i : pumped->growing)
        std::cout << "unbounded growth at node " << i + 1 << " (" << bdc.labels[i] << ")\n";
    }
  }
  return r.verdict == ReachVerdict::Finite ? kStable : kUndecided;
}

PinOptions pin_options(const Common& c) {
  PipelineOptions p = pipeline_options(c);
  return {p.budget, p.criteria, !c.no_reduce};
}

std::string pin_names(const std::set<std::size_t>& s, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (auto i : s) {
    out += (first ? "" : ", ") + labels[i];
    first = false;
  }
  return out + "}";
}

Json pin_verdict_json(const PinVerdict& v, const std::vector<std::string>& labels) {
  std::vector<std::string> names;
  for (auto i : v.pins.indices) names.push_back(labels[i]);
  Json j{{"pins", names},
         {"conclusion", to_string(v.conclusion)},
         {"procedure", plf_result_to_json(v.plf, false)},
         {"nonsingular", nonsingular_to_json(v.nonsingular)},
         {"analysed_dimension", v.analysed.n}};
  Json s = Json::array();
  for (const auto& x : v.sigmas) s.push_back(vector_to_json(x));
  j["sigmas"] = s;
  if (v.unreduced_plf) j["unreduced_procedure"] = plf_result_to_json(*v.unreduced_plf, false);
  return j;
}

int pin_exit(PinConclusion c) {
  if (stabilisable(c)) return kStable;
  return c == PinConclusion::CertifiedNo ? kCertifiedNo : kUndecided;
}

int print_search(const Common& c, const PinSearchResult& res, const std::vector<std::string>& labels, std::size_t max) {
  if (c.json) {
    Json j{{"max_cardinality", max}, {"subsets_examined", res.subsets_examined}};
    Json m = Json::array(), u = Json::array();
    for (const auto& v : res.minimal_sets) m.push_back(pin_verdict_json(v, labels));
    for (const auto& v : res.undecided) u.push_back(pin_verdict_json(v, labels));
    j["minimal_sets"] = m;
    j["undecided"] = u;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "minimal pin sets (cardinality <= " << max << ", " << res.subsets_examined << " subsets examined):\n";
    if (res.minimal_sets.empty()) std::cout << "  none\n";
    for (const auto& v : res.minimal_sets)
      std::cout << "  " << pin_names(v.pins.indices, labels) << ": " << to_string(v.conclusion) << ", "
                << v.plf.pair_count() << " columns\n";
    for (const auto& v : res.undecided)
      std::cout << "  undecided " << pin_names(v.pins.indices, labels) << ": " << v.plf.budget_reason << "\n";
  }
  if (!res.minimal_sets.empty()) return kStable;
  return res.undecided.empty() ? kCertifiedNo : kUndecided;
}

int cmd_pin_search(const Common& c, std::size_t max) {
  ReactionNetwork net = load_network(c.network);
  BDCSystem bdc = build_bdc(net);
  if (max >= bdc.n) throw InputError("--max must be below the species count");
  return print_search(c, search_minimal_pins(bdc, max, pin_options(c)), bdc.labels, max);
}

int cmd_pin_check(const Common& c) {
  ReactionNetwork net = load_network(c.network);
  BDCSystem bdc = build_bdc(net);
  PinSpec spec{PinKind::Nodes, resolve_all(bdc.labels, c.pins)};
  if (spec.indices.size() >= bdc.n) throw InputError("cannot pin every species");
  PinVerdict v = verdict_for_pinning(bdc, spec, pin_options(c), true);
  if (c.json) {
    std::cout << pin_verdict_json(v, bdc.labels).dump(2) << "\n";
  } else {
    std::cout << "pins: " << pin_names(spec.indices, bdc.labels) << "\n";
    std::cout << "pinned subsystem: n=" << v.pinned.n << " q=" << v.pinned.q << "\n";
    if (v.sigmas.empty()) std::cout << "conservation laws reduced: none\n";
    for (const auto& s : v.sigmas) std::cout << "  sigma = " << to_string(s) << "\n";
    if (v.unreduced_plf) {
      std::cout << "unreduced pinned space: ";
      print_plf(std::cout, *v.unreduced_plf, false);
      std::cout << "reduced space: ";
    }
    print_plf(std::cout, v.plf, false);
    print_nonsingular(std::cout, v.nonsingular);
    std::cout << "conclusion: " << to_string(v.conclusion) << "\n";
  }
  return pin_exit(v.conclusion);
}

int cmd_arc_pin(const Common& c, std::size_t max) {
  ReactionNetwork net = load_network(c.network);
  EDFSystem edf = build_edf(net);
  PinOptions opt = pin_options(c);
  if (!c.pins.empty()) {
    PinSpec spec{PinKind::Arcs, resolve_all(edf.labels, c.pins)};
    PinVerdict v = verdict_for_arc_pinning(edf, spec, opt);
    if (c.json) {
      std::cout << pin_verdict_json(v, edf.labels).dump(2) << "\n";
    } else {
      std::cout << "pinned reactions: " << pin_names(spec.indices, edf.labels) << "\n";
      print_plf(std::cout, v.plf, false);
      print_nonsingular(std::cout, v.nonsingular);
      std::cout << "conclusion: " << to_string(v.conclusion) << "\n";
    }
    return pin_exit(v.conclusion);
  }
  if (max >= edf.m) throw InputError("--max must be below the reaction count");
  return print_search(c, search_minimal_arc_pins(edf, max, opt), edf.labels, max);
}

int cmd_reduce(const Common& c) {
  ReactionNetwork net = load_network(c.network);
  BDCSystem bdc = build_bdc(net);
  auto all = find_conservation_laws(bdc);
  auto reducible = reducible_conservation_laws(bdc);
  ConservationReduction red = reduce_by_conservation(bdc, reducible);
  if (c.json) {
    Json a = Json::array(), s = Json::array();
    for (const auto& x : all) a.push_back(vector_to_json(x));
    for (const auto& x : reducible) s.push_back(vector_to_json(x));
    std::cout << Json{{"conservation_laws", a},
                      {"reducible", s},
                      {"T_inv", matrix_to_json(red.t_inv)},
                      {"T", matrix_to_json(red.t)},
                      {"reduced", bdc_to_json(red.reduced, &net)}}
                     .dump(2)
              << "\n";
    return kStable;
  }
  std::cout << "conservation laws (sigma^T B = 0): " << all.size() << "\n";
  for (const auto& x : all) std::cout << "  " << to_string(x) << "\n";
  if (reducible.size() != all.size())
    std::cout << "laws with sigma^T g0 != 0 are kept (no equilibrium on their level sets)\n";
  std::cout << "reduced by: " << reducible.size() << "\n";
  for (const auto& x : reducible) std::cout << "  " << to_string(x) << "\n";
  print_matrix(std::cout, "T^-1", red.t_inv);
  print_system(std::cout, red.reduced);
  return kStable;
}

int cmd_dual(Common c) {
  ReactionNetwork net = load_network(c.network);
  c.dual = true;
  PipelineOptions opt = pipeline_options(c);
  AnalysisReport r = analyze(net, opt);
  if (c.json) {
    std::cout << report_to_json(net, r, opt).dump(2) << "\n";
  } else {
    std::cout << "dual system (B' = C^T, C' = B^T):\n";
    print_system(std::cout, r.system.analysed);
    print_plf(std::cout, r.plf, true);
    std::cout << "verdict: " << outcome_line(r) << "\n";
  }
  return exit_code(r.outcome);
}

int cmd_nonsingular(const Common& c, const std::vector<std::string>& box) {
  ReactionNetwork net = load_network(c.network);
  PreparedSystem p = prepare_system(net, pipeline_options(c));
  NonSingReport r = nonsingular_structural(p.analysed);
  std::optional<bool> box_ok;
  if (!box.empty()) {
    if (box.size() != 2) throw InputError("--box expects LO,HI");
    auto lo = parse_fraction_string(box[0]);
    auto hi = parse_fraction_string(box[1]);
    if (!lo || !hi) throw InputError("--box: bad fraction");
    DBox b = DBox::uniform(p.analysed.q, *lo, *hi);
    try {
      box_ok = nonsingular_on_box(p.analysed, b);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  if (c.json) {
    Json j = nonsingular_to_json(r, true);
    j["system"] = bdc_to_json(p.analysed, &net);
    if (box_ok) j["box_nonsingular"] = *box_ok;
    std::cout << j.dump(2) << "\n";
  } else {
    print_reduction(std::cout, p);
    print_nonsingular(std::cout, r);
    std::cout << "nonzero Cauchy-Binet terms: " << r.terms.size() << " of " << r.subsets_examined << " subsets\n";
    for (const auto& t : r.terms) {
      std::cout << "  " << (sgn(t.coefficient) > 0 ? "+" : "") << t.coefficient.get_str() << " *";
      for (auto k : t.subset) std::cout << " D" << k + 1;
      std::cout << "\n";
    }
    if (box_ok) std::cout << "det(-BDC) > 0 on the box: " << (*box_ok ? "yes" : "no") << "\n";
  }
  return r.structural == NonSingVerdict::Positive ? kStable : kCertifiedNo;
}

int cmd_verify(const Common& c, const std::string& report_path) {
  ReactionNetwork net = load_network(c.network);
  Json report;
  try {
    report = Json::parse(read_file(report_path));
  } catch (const Json::exception& e) {
    throw InputError(report_path + ": " + e.what());
  }
  VerificationResult v;
  try {
    v = verify_report(net, report);
  } catch (const Json::exception& e) {
    throw InputError(report_path + ": malformed report: " + e.what());
  }
  for (const auto& m : v.messages) std::cout << m << "\n";
  std::cout << (v.ok ? "report verified" : "report REJECTED") << "\n";
  return v.ok ? kStable : kCertifiedNo;
}

struct FuzzArgs {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  bool monomolecular = false;
};

// Procedure verdict against Petri-net boundedness from every +-e_i.
int cmd_fuzz(const FuzzArgs& f) {
  std::mt19937_64 rng(f.seed);
  std::size_t agree = 0, disagree = 0, undecided = 0;
  for (std::size_t k = 0; k < f.count; ++k) {
    std::string text = f.monomolecular ? random_monomolecular_network_text(rng) : random_unitary_network_text(rng);
    ReactionNetwork net = parse_network(text);
    PhiFamily fam = build_phi_family(build_bdc(net));
    PLFResult r = run_procedure(fam);
    if (r.verdict == Verdict::BudgetExhausted) {
      ++undecided;
      std::cout << "undecided (" << r.budget_reason << "):\n" << text;
      continue;
    }
    bool bounded = bounded_from_units(GpnModel{fam, {}}, 1000, 1000000);
    if (bounded == (r.verdict == Verdict::Converged)) {
      ++agree;
    } else {
      ++disagree;
      std::cout << "DISAGREEMENT: procedure " << to_string(r.verdict) << ", reach "
                << (bounded ? "Finite" : "Exceeded") << "\n"
                << text;
    }
  }
  std::cout << "seed " << f.seed << ": " << agree << " agree, " << disagree << " disagree, " << undecided
            << " undecided\n";
  return disagree ? kCertifiedNo : (undecided ? kUndecided : kStable);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural polyhedral Lyapunov analysis of unitary reaction networks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common c;
  GpnArgs g;
  std::size_t max = 1;
  std::vector<std::string> box;
  std::string report_path;
  FuzzArgs fuzz;

  auto* analyze_cmd = app.add_subcommand("analyze", "run the vertex iteration and the non-singularity test");
  add_network(analyze_cmd, c);
  add_budget_flags(analyze_cmd, c);
  analyze_cmd->add_flag("--no-reduce", c.no_reduce, "skip the conservation-law reduction");
  analyze_cmd->add_flag("--dual", c.dual, "analyse the dual system");
  analyze_cmd->add_option("--pins", c.pins, "species to pin before the analysis")->delimiter(',');

  auto* gpn_cmd = app.add_subcommand("gpn", "explore the generalised Petri net from an initial marking");
  add_network(gpn_cmd, c);
  gpn_cmd->add_option("--initial", g.initial, "initial marking (comma separated)")->delimiter(',')->required();
  gpn_cmd->add_option("--black-holes", g.black_holes, "black-hole places")->delimiter(',');
  gpn_cmd->add_option("--coord-bound", g.coord_bound, "coordinate magnitude bound");
  gpn_cmd->add_option("--state-cap", g.state_cap, "maximum number of markings");
  gpn_cmd->add_option("--trace", g.trace, "write every examined edge to this file");
  gpn_cmd->add_flag("--dual", c.dual, "use the dual net");
  gpn_cmd->add_option("--eigen-words", c.eigen_words, "word length for the pumping search")->check(CLI::PositiveNumber);

  auto* search_cmd = app.add_subcommand("pin-search", "minimal node pinning sets");
  add_network(search_cmd, c);
  add_budget_flags(search_cmd, c);
  search_cmd->add_option("--max", max, "largest pin-set cardinality");
  search_cmd->add_flag("--no-reduce", c.no_reduce, "skip the conservation-law reduction");

  auto* check_cmd = app.add_subcommand("pin-check", "analyse one node pinning set");
  add_network(check_cmd, c);
  add_budget_flags(check_cmd, c);
  check_cmd->add_option("--pins", c.pins, "species to pin")->delimiter(',')->required();
  check_cmd->add_flag("--no-reduce", c.no_reduce, "skip the conservation-law reduction");

  auto* arc_cmd = app.add_subcommand("arc-pin", "arc (reaction) pinning on the flux system");
  add_network(arc_cmd, c);
  add_budget_flags(arc_cmd, c);
  arc_cmd->add_option("--max", max, "largest pin-set cardinality for the search");
  arc_cmd->add_option("--pins", c.pins, "reactions to pin (check instead of search)")->delimiter(',');
  arc_cmd->add_flag("--no-reduce", c.no_reduce, "skip the conservation-law reduction");

  auto* reduce_cmd = app.add_subcommand("reduce", "conservation laws and the reduced system");
  add_network(reduce_cmd, c);

  auto* dual_cmd = app.add_subcommand("dual", "build and analyse the dual system");
  add_network(dual_cmd, c);
  add_budget_flags(dual_cmd, c);
  dual_cmd->add_flag("--no-reduce", c.no_reduce, "skip the conservation-law reduction");

  auto* ns_cmd = app.add_subcommand("nonsingular", "structural non-singularity of -BDC");
  add_network(ns_cmd, c);
  ns_cmd->add_flag("--no-reduce", c.no_reduce, "skip the conservation-law reduction");
  ns_cmd->add_option("--pins", c.pins, "species to pin first")->delimiter(',');
  ns_cmd->add_option("--box", box, "also check det(-BDC) > 0 for D in [LO,HI]^q")->delimiter(',');

  auto* verify_cmd = app.add_subcommand("verify", "re-verify a JSON analysis report against the network");
  add_network(verify_cmd, c);
  verify_cmd->add_option("--verify-certificate", report_path, "report produced by analyze --json")
      ->required()
      ->check(CLI::ExistingFile);

  auto* dev_cmd = app.add_subcommand("dev", "developer tooling");
  auto* fuzz_cmd = dev_cmd->add_subcommand("fuzz", "compare the procedure with Petri-net reach on random networks");
  fuzz_cmd->add_option("--seed", fuzz.seed, "random seed");
  fuzz_cmd->add_option("--count", fuzz.count, "number of networks");
  fuzz_cmd->add_flag("--monomolecular", fuzz.monomolecular, "only mono-molecular reaction forms");
  dev_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (std::find(c.criteria.begin(), c.criteria.end(), "none") != c.criteria.end()) c.criteria.clear();
    if (*analyze_cmd) return cmd_analyze(c);
    if (*gpn_cmd) return cmd_gpn(c, g);
    if (*search_cmd) return cmd_pin_search(c, max);
    if (*check_cmd) return cmd_pin_check(c);
    if (*arc_cmd) return cmd_arc_pin(c, max);
    if (*reduce_cmd) return cmd_reduce(c);
    if (*dual_cmd) return cmd_dual(c);
    if (*ns_cmd) return cmd_nonsingular(c, box);
    if (*verify_cmd) return cmd_verify(c, report_path);
    if (*fuzz_cmd) return cmd_fuzz(fuzz);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
