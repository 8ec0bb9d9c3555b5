#pragma once

// Generalised Petri nets with signed tokens. Transition h maps a marking tau
// to Phi_h tau; black-hole places are then cleared.

#include "plfnet/plf_engine.hpp"

#include <deque>
#include <functional>
#include <set>
#include <unordered_set>
#include <vector>

namespace plfnet {

using Marking = IntVector;

struct GpnModel {
  PhiFamily phis;
  std::set<std::size_t> black_holes;

  std::size_t places() const { return phis.dim(); }
  std::size_t transitions() const { return phis.size(); }
};

inline Marking fire(const GpnModel& model, const Marking& tau, std::size_t h) {
  if (h >= model.transitions()) throw std::out_of_range("transition index out of range");
  if (tau.size() != model.places()) throw std::invalid_argument("marking has wrong length");
  Marking out = model.phis[h].apply(tau);
  for (auto b : model.black_holes) out[b] = 0;
  return out;
}

enum class ReachVerdict { Finite, Exceeded };

struct ReachTraceStep {
  Marking from;
  std::size_t mode;
  Marking to;
};

struct ReachReport {
  ReachVerdict verdict = ReachVerdict::Finite;
  std::vector<Marking> states;  // sorted complete closed set; filled on Finite only
  std::optional<Marking> frontier_witness;
  std::string reason;
  std::size_t explored = 0;  // markings whose successors were generated
  std::size_t stored = 0;    // distinct markings seen
};

namespace detail {

using SmallMarking = std::vector<std::int64_t>;

struct SmallMarkingHash {
  std::size_t operator()(const SmallMarking& m) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::int64_t x : m) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

inline Marking to_marking(const SmallMarking& m) {
  Marking out;
  out.reserve(m.size());
  for (auto x : m) out.emplace_back(static_cast<long>(x));
  return out;
}

// Same search over int64 markings. Valid when max row 1-norm of every Phi
// times the bound (plus one) stays below 2^62: every stored marking is within
// the bound, so no product can overflow.
inline std::optional<std::vector<SmallMatrix>> small_transitions(const GpnModel& model, const Int& bound) {
  if (!bound.fits_slong_p()) return std::nullopt;
  const Int limit = Int(1) << 62;
  std::vector<SmallMatrix> out;
  for (const auto& phi : model.phis.phis) {
    Int row_max = 0;
    for (std::size_t r = 0; r < phi.rows(); ++r) {
      Int s = 0;
      for (std::size_t c = 0; c < phi.cols(); ++c) s += abs(phi(r, c));
      if (s > row_max) row_max = s;
    }
    if (row_max * (bound + 1) >= limit) return std::nullopt;
    auto small = to_small(phi);
    if (!small) return std::nullopt;
    out.push_back(std::move(*small));
  }
  return out;
}

template <class V, class Hash, class Fire, class Norm, class Convert>
ReachReport breadth_first(const GpnModel& model, V start, const Norm& norm, const typename std::invoke_result_t<Norm, const V&>& bound,
                          std::size_t state_cap, const Fire& fire_fn, const Convert& convert,
                          const std::function<void(const ReachTraceStep&)>& trace) {
  ReachReport rep;
  std::unordered_set<V, Hash> seen{start};
  std::deque<V> queue{start};
  auto finish = [&](ReachVerdict v, std::optional<V> witness, std::string why) {
    rep.verdict = v;
    if (witness) rep.frontier_witness = convert(*witness);
    rep.reason = std::move(why);
    rep.stored = seen.size();
    if (v == ReachVerdict::Finite) {
      rep.states.reserve(seen.size());
      for (const auto& m : seen) rep.states.push_back(convert(m));
      std::sort(rep.states.begin(), rep.states.end(), IntVectorLess{});
    }
    return rep;
  };
  if (norm(start) > bound) return finish(ReachVerdict::Exceeded, start, "coordinate bound exceeded");
  while (!queue.empty()) {
    V cur = std::move(queue.front());
    queue.pop_front();
    ++rep.explored;
    for (std::size_t h = 0; h < model.transitions(); ++h) {
      V nx = fire_fn(cur, h);
      if (trace) trace({convert(cur), h, convert(nx)});
      if (seen.count(nx)) continue;
      if (norm(nx) > bound) return finish(ReachVerdict::Exceeded, nx, "coordinate bound exceeded");
      if (seen.size() >= state_cap) return finish(ReachVerdict::Exceeded, nx, "state cap reached");
      seen.insert(nx);
      queue.push_back(std::move(nx));
    }
  }
  return finish(ReachVerdict::Finite, std::nullopt, "");
}

}  // namespace detail

/// Breadth-first closure under all transitions, in mode-index then FIFO
/// order. `trace`, if given, receives every edge examined. Runs on int64
/// markings whenever overflow is excluded by the bound.
inline ReachReport reach(const GpnModel& model, const Marking& initial, const Int& coordinate_bound,
                         std::size_t state_cap, const std::function<void(const ReachTraceStep&)>& trace = {}) {
  if (coordinate_bound <= 0 || state_cap == 0) throw std::invalid_argument("reach: bounds must be positive");
  if (initial.size() != model.places()) throw std::invalid_argument("initial marking has wrong length");
  Marking start = initial;
  for (auto b : model.black_holes) start[b] = 0;
  bool start_small = std::all_of(start.begin(), start.end(), [](const Int& x) { return x.fits_slong_p(); });
  if (auto small = detail::small_transitions(model, coordinate_bound); small && start_small && max_abs(start) <= coordinate_bound) {
    const std::size_t n = model.places();
    detail::SmallMarking s0(n);
    for (std::size_t i = 0; i < n; ++i) s0[i] = start[i].get_si();
    auto fire_small = [&](const detail::SmallMarking& tau, std::size_t h) {
      const SmallMatrix& phi = (*small)[h];
      detail::SmallMarking out(n, 0);
      for (std::size_t r = 0; r < n; ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < n; ++c) acc += phi(r, c) * tau[c];
        out[r] = acc;
      }
      for (auto b : model.black_holes) out[b] = 0;
      return out;
    };
    auto norm = [](const detail::SmallMarking& m) {
      std::int64_t a = 0;
      for (auto x : m) a = std::max<std::int64_t>(a, x < 0 ? -x : x);
      return a;
    };
    return detail::breadth_first<detail::SmallMarking, detail::SmallMarkingHash>(
        model, s0, norm, coordinate_bound.get_si(), state_cap, fire_small, detail::to_marking, trace);
  }
  auto fire_big = [&](const Marking& tau, std::size_t h) { return fire(model, tau, h); };
  auto norm = [](const Marking& m) { return max_abs(m); };
  auto id = [](const Marking& m) { return m; };
  return detail::breadth_first<Marking, IntVectorHash>(model, start, norm, coordinate_bound, state_cap, fire_big, id,
                                                       trace);
}

/// Finite reach from every +-e_i.
inline bool bounded_from_units(const GpnModel& model, const Int& coordinate_bound, std::size_t state_cap) {
  const std::size_t n = model.places();
  for (std::size_t i = 0; i < n; ++i) {
    if (model.black_holes.count(i)) continue;
    for (int s : {1, -1}) {
      Marking e = unit_vector(n, i);
      if (s < 0) e = negated(e);
      if (reach(model, e, coordinate_bound, state_cap).verdict != ReachVerdict::Finite) return false;
    }
  }
  return true;
}

struct ConsistencyReport {
  bool consistent = true;
  std::vector<std::string> failures;
  std::size_t markings_checked = 0;
};

/// Cross-check of a converged procedure against the Petri net: every marking
/// reachable from +-e_i must have gauge at most 1 on the PLF vertex set.
inline ConsistencyReport boundedness_vs_plf(const GpnModel& model, const PLFResult& plf,
                                            const Int& coordinate_bound = 1000, std::size_t state_cap = 1000000) {
  ConsistencyReport out;
  if (plf.verdict != Verdict::Converged) {
    out.consistent = false;
    out.failures.push_back("procedure did not converge");
    return out;
  }
  if (!model.black_holes.empty()) throw std::invalid_argument("boundedness_vs_plf expects a model without black holes");
  const std::size_t n = model.places();
  L1Membership lp(plf.vertex_set.columns, n);
  std::unordered_set<Marking, IntVectorHash> checked;
  for (std::size_t i = 0; i < n; ++i)
    for (int s : {1, -1}) {
      Marking e = unit_vector(n, i);
      if (s < 0) e = negated(e);
      ReachReport r = reach(model, e, coordinate_bound, state_cap);
      if (r.verdict != ReachVerdict::Finite) {
        out.consistent = false;
        out.failures.push_back("reach from " + (s < 0 ? std::string("-") : std::string("+")) + "e" +
                               std::to_string(i + 1) + " is not finite: " + r.reason);
        continue;
      }
      for (const auto& m : r.states) {
        if (!checked.insert(m).second) continue;
        ++out.markings_checked;
        if (!in_hull(lp, m)) {
          out.consistent = false;
          out.failures.push_back("marking " + to_string(m) + " has gauge > 1");
        }
      }
    }
  return out;
}

struct PumpReport {
  Marking witness;                   // first marking along the pumping word beyond the bound
  std::size_t rounds = 0;            // repetitions of the word
  std::vector<std::size_t> growing;  // places whose magnitude exceeds the bound
};

/// Fires `word` repeatedly from `initial` (black holes cleared after each
/// transition) until some coordinate exceeds the bound. Every marking on the
/// way is reachable, so the result is a growth witness along an explicit
/// firing sequence.
inline std::optional<PumpReport> pump(const GpnModel& model, const Marking& initial, const Word& word,
                                      const Int& coordinate_bound, std::size_t max_rounds = 1000) {
  if (word.empty()) return std::nullopt;
  Marking tau = initial;
  for (auto b : model.black_holes) tau[b] = 0;
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    for (auto h : word) tau = fire(model, tau, h);
    if (is_zero(tau)) return std::nullopt;
    if (max_abs(tau) > coordinate_bound) {
      PumpReport r{tau, round, {}};
      for (std::size_t i = 0; i < tau.size(); ++i)
        if (abs(tau[i]) > coordinate_bound) r.growing.push_back(i);
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace plfnet
