#pragma once

// Pinning: nodes (state variables) or arcs (reactions) held by a strong
// feedback become black holes. The pinned subsystem keeps the unpinned rows
// of B and columns of C; modes that become null act as the identity and are
// dropped.

#include "plfnet/gpn.hpp"
#include "plfnet/structural.hpp"

#include <set>
#include <string>
#include <vector>

namespace plfnet {

enum class PinKind { Nodes, Arcs };

struct PinSpec {
  PinKind kind = PinKind::Nodes;
  std::set<std::size_t> indices;

  friend bool operator==(const PinSpec& a, const PinSpec& b) { return a.kind == b.kind && a.indices == b.indices; }
};

enum class PinConclusion { StabilisableAsymptotic, StabilisableMarginal, NotDecided, CertifiedNo };

inline std::string to_string(PinConclusion c) {
  switch (c) {
    case PinConclusion::StabilisableAsymptotic: return "StabilisableAsymptotic";
    case PinConclusion::StabilisableMarginal: return "StabilisableMarginal";
    case PinConclusion::NotDecided: return "NotDecided";
    case PinConclusion::CertifiedNo: return "CertifiedNo";
  }
  return "?";
}

inline bool stabilisable(PinConclusion c) {
  return c == PinConclusion::StabilisableAsymptotic || c == PinConclusion::StabilisableMarginal;
}

namespace detail {

inline BDCSystem prune_null_modes(BDCSystem s) {
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < s.q; ++k) {
    bool b_zero = true, c_zero = true;
    for (std::size_t i = 0; i < s.n; ++i) {
      if (sgn(s.B(i, k)) != 0) b_zero = false;
      if (sgn(s.C(k, i)) != 0) c_zero = false;
    }
    if (!b_zero && !c_zero) keep.push_back(k);
  }
  BDCSystem out;
  out.n = s.n;
  out.q = keep.size();
  out.B = s.B.select_cols(keep);
  out.C = s.C.select_rows(keep);
  for (auto k : keep) out.modes.push_back(s.modes[k]);
  out.labels = std::move(s.labels);
  out.influx = std::move(s.influx);
  return out;
}

inline std::vector<std::size_t> complement(std::size_t n, const std::set<std::size_t>& pinned) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (!pinned.count(i)) keep.push_back(i);
  return keep;
}

}  // namespace detail

/// B2 = unpinned rows of B, C2 = unpinned columns of C, null modes pruned.
inline BDCSystem reduce_pinned(const BDCSystem& bdc, const std::set<std::size_t>& pins) {
  for (auto p : pins)
    if (p >= bdc.n) throw std::out_of_range("pinned node index out of range");
  if (pins.size() >= bdc.n) throw std::invalid_argument("all nodes pinned");
  std::vector<std::size_t> keep = detail::complement(bdc.n, pins);
  BDCSystem s;
  s.n = keep.size();
  s.q = bdc.q;
  s.B = bdc.B.select_rows(keep);
  s.C = bdc.C.select_cols(keep);
  s.modes = bdc.modes;
  for (auto i : keep) {
    s.labels.push_back(bdc.labels[i]);
    if (!bdc.influx.empty()) s.influx.push_back(bdc.influx[i]);
  }
  return detail::prune_null_modes(std::move(s));
}

/// Same system in the full state space with pinned rows of B and columns of
/// C zeroed (used to cross-check reduce_pinned).
inline BDCSystem zero_pinned(const BDCSystem& bdc, const std::set<std::size_t>& pins) {
  BDCSystem s = bdc;
  for (auto p : pins)
    for (std::size_t k = 0; k < bdc.q; ++k) {
      s.B(p, k) = 0;
      s.C(k, p) = 0;
    }
  return s;
}

/// Drops the pinned reaction coordinates: rows of E and columns of F.
inline EDFSystem reduce_arc_pinned(const EDFSystem& edf, const std::set<std::size_t>& arcs) {
  for (auto a : arcs)
    if (a >= edf.m) throw std::out_of_range("pinned reaction index out of range");
  if (!arcs.empty() && arcs.size() >= edf.m) throw std::invalid_argument("all reactions pinned");
  std::vector<std::size_t> keep = detail::complement(edf.m, arcs);
  BDCSystem s;
  s.n = keep.size();
  s.q = edf.q;
  s.B = edf.E.select_rows(keep);
  s.C = edf.F.select_cols(keep);
  s.modes = edf.modes;
  for (auto j : keep) s.labels.push_back(edf.labels[j]);
  BDCSystem pruned = detail::prune_null_modes(std::move(s));
  EDFSystem out;
  out.m = pruned.n;
  out.q = pruned.q;
  out.E = std::move(pruned.B);
  out.F = std::move(pruned.C);
  out.modes = std::move(pruned.modes);
  out.labels = std::move(pruned.labels);
  return out;
}

struct PinOptions {
  Budget budget;
  Criteria criteria;
  bool reduce_conservation = true;  // reduce the pinned subsystem by its influx-free conservation laws
};

struct PinVerdict {
  PinSpec pins;
  BDCSystem pinned;    // subsystem before conservation reduction
  BDCSystem analysed;  // system the procedure ran on
  std::vector<IntVector> sigmas;
  PLFResult plf;
  std::optional<PLFResult> unreduced_plf;  // procedure on `pinned` when a reduction happened
  NonSingReport nonsingular;
  PinConclusion conclusion = PinConclusion::NotDecided;
};

namespace detail {

inline PinConclusion conclude(const PLFResult& plf, const NonSingReport& ns) {
  if (plf.verdict == Verdict::CertifiedNoPLF) return PinConclusion::CertifiedNo;
  if (plf.verdict == Verdict::BudgetExhausted) return PinConclusion::NotDecided;
  return ns.structural == NonSingVerdict::Positive ? PinConclusion::StabilisableAsymptotic
                                                   : PinConclusion::StabilisableMarginal;
}

inline PinVerdict analyse_subsystem(BDCSystem sub, PinSpec pins, const PinOptions& opt, bool with_unreduced) {
  PinVerdict v;
  v.pins = std::move(pins);
  v.pinned = sub;
  if (opt.reduce_conservation) {
    v.sigmas = reducible_conservation_laws(sub);
    v.analysed = reduce_by_conservation(sub, v.sigmas).reduced;
  } else {
    v.analysed = sub;
  }
  v.plf = run_procedure(build_phi_family(v.analysed), opt.budget, opt.criteria);
  if (with_unreduced && !v.sigmas.empty())
    v.unreduced_plf = run_procedure(build_phi_family(v.pinned), opt.budget, opt.criteria);
  // The non-singularity test is about the pinned subsystem B2 D C2; it is
  // singular whenever conservation laws remain, so it uses the reduced form.
  v.nonsingular = nonsingular_structural(v.analysed);
  v.conclusion = conclude(v.plf, v.nonsingular);
  return v;
}

}  // namespace detail

inline PinVerdict verdict_for_pinning(const BDCSystem& bdc, const PinSpec& pins, const PinOptions& opt = {},
                                      bool with_unreduced = false) {
  if (pins.kind != PinKind::Nodes) throw std::invalid_argument("verdict_for_pinning: node pins expected");
  BDCSystem sub = pins.indices.empty() ? bdc : reduce_pinned(bdc, pins.indices);
  return detail::analyse_subsystem(std::move(sub), pins, opt, with_unreduced);
}

inline PinVerdict verdict_for_arc_pinning(const EDFSystem& edf, const PinSpec& pins, const PinOptions& opt = {}) {
  if (pins.kind != PinKind::Arcs) throw std::invalid_argument("verdict_for_arc_pinning: arc pins expected");
  EDFSystem sub = reduce_arc_pinned(edf, pins.indices);
  return detail::analyse_subsystem(edf_as_bdc(sub), pins, opt, false);
}

struct PinSearchResult {
  std::vector<PinVerdict> minimal_sets;
  std::vector<PinVerdict> undecided;  // subsets that ran out of budget
  std::size_t cardinality_searched = 0;
  std::size_t subsets_examined = 0;
};

/// Subsets by increasing cardinality, lexicographic within a cardinality.
/// Supersets of successes are skipped (they are not minimal); failures are
/// never used to prune.
inline PinSearchResult search_minimal_pins(std::size_t universe, PinKind kind, std::size_t max_cardinality,
                                           const std::function<PinVerdict(const PinSpec&)>& evaluate) {
  if (max_cardinality >= universe) throw std::invalid_argument("pin search cardinality must be below the node count");
  PinSearchResult res;
  for (std::size_t k = 0; k <= max_cardinality; ++k) {
    res.cardinality_searched = k;
    for_each_subset(universe, k, [&](const std::vector<std::size_t>& s) {
      PinSpec spec{kind, std::set<std::size_t>(s.begin(), s.end())};
      for (const auto& m : res.minimal_sets)
        if (std::includes(spec.indices.begin(), spec.indices.end(), m.pins.indices.begin(), m.pins.indices.end()))
          return true;
      ++res.subsets_examined;
      PinVerdict v = evaluate(spec);
      if (stabilisable(v.conclusion)) res.minimal_sets.push_back(std::move(v));
      else if (v.conclusion == PinConclusion::NotDecided) res.undecided.push_back(std::move(v));
      return true;
    });
    if (k == 0 && !res.minimal_sets.empty()) break;
  }
  return res;
}

inline PinSearchResult search_minimal_pins(const BDCSystem& bdc, std::size_t max_cardinality, const PinOptions& opt = {}) {
  return search_minimal_pins(bdc.n, PinKind::Nodes, max_cardinality,
                             [&](const PinSpec& s) { return verdict_for_pinning(bdc, s, opt); });
}

inline PinSearchResult search_minimal_arc_pins(const EDFSystem& edf, std::size_t max_cardinality,
                                               const PinOptions& opt = {}) {
  return search_minimal_pins(edf.m, PinKind::Arcs, max_cardinality,
                             [&](const PinSpec& s) { return verdict_for_arc_pinning(edf, s, opt); });
}

}  // namespace plfnet
