#pragma once

// BDC and EDF decompositions, the Phi family, duality and the integer
// conservation-law reduction.
//
// Mode k belongs to the partial derivative of rate g_j with respect to a
// reactant x_i. Modes are ordered reaction-major (file order), reactant-minor
// (order written in the reaction). Every certificate refers to modes by this
// index.

#include "plfnet/hermite.hpp"
#include "plfnet/network.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plfnet {

struct Mode {
  std::size_t reaction = 0;  // S column (internal reaction index)
  std::size_t species = 0;   // original species index of the reactant
  int sign = 1;              // sign of dg_j/dx_i
};

struct BDCSystem {
  std::size_t n = 0;
  std::size_t q = 0;
  IntMatrix B;  // n x q
  IntMatrix C;  // q x n
  std::vector<Mode> modes;
  std::vector<std::string> labels;  // coordinate names, size n
  IntVector influx;                 // g0 in these coordinates; empty means zero

  IntVector b_col(std::size_t k) const { return B.col(k); }
  IntVector c_row(std::size_t k) const { return C.row(k); }

  /// C_k^T B_k, which is -1 for every mode of a unitary network.
  Int mode_gain(std::size_t k) const {
    Int s = 0;
    for (std::size_t i = 0; i < n; ++i) s += C(k, i) * B(i, k);
    return s;
  }

  bool unitary() const {
    for (std::size_t k = 0; k < q; ++k)
      if (mode_gain(k) != -1) return false;
    return true;
  }

  std::size_t label_index(const std::string& name) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == name) return i;
    throw std::invalid_argument("unknown coordinate '" + name + "'");
  }
};

/// Positive bounds D_k^- <= D_k <= D_k^+ on the uncertain diagonal.
struct DBox {
  std::vector<Rational> lower;
  std::vector<Rational> upper;

  std::size_t q() const { return lower.size(); }

  static DBox uniform(std::size_t q, const Rational& lo, const Rational& hi) {
    return {std::vector<Rational>(q, lo), std::vector<Rational>(q, hi)};
  }

  void validate() const {
    if (lower.size() != upper.size()) throw std::invalid_argument("DBox: bound vectors differ in length");
    for (std::size_t k = 0; k < lower.size(); ++k)
      if (sgn(lower[k]) <= 0 || lower[k] > upper[k]) throw std::invalid_argument("DBox: need 0 < lower <= upper");
  }
};

struct PhiFamily {
  std::vector<IntMatrix> phis;
  std::vector<bool> mode_unitary;
  bool unitary = true;
  BDCSystem source;

  std::size_t size() const { return phis.size(); }
  std::size_t dim() const { return source.n; }
  const IntMatrix& operator[](std::size_t k) const { return phis[k]; }
};

struct EDFSystem {
  std::size_t m = 0;
  std::size_t q = 0;
  IntMatrix E;  // m x q
  IntMatrix F;  // q x m
  std::vector<Mode> modes;
  std::vector<std::string> labels;  // reaction-coordinate names, size m
};

namespace detail {

inline std::vector<Mode> enumerate_modes(const ReactionNetwork& net) {
  std::vector<Mode> modes;
  for (std::size_t j = 0; j < net.internal_reactions.size(); ++j) {
    const Reaction& r = net.reactions[net.internal_reactions[j]];
    std::vector<std::size_t> seen;
    for (auto i : r.reactants) {
      if (std::find(seen.begin(), seen.end(), i) != seen.end()) continue;
      seen.push_back(i);
      if (net.S(i, j) != -1) continue;
      modes.push_back({j, i, r.inhibitors.count(i) ? -1 : 1});
    }
  }
  return modes;
}

inline std::vector<std::string> reaction_labels(const ReactionNetwork& net) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < net.internal_reactions.size(); ++j) {
    const Reaction& r = net.reactions[net.internal_reactions[j]];
    out.push_back(r.label.empty() ? "r" + std::to_string(j + 1) : r.label);
  }
  return out;
}

}  // namespace detail

/// Depends only on S and the reactant pattern; there is deliberately no
/// time-scale or concentration-scaling input.
inline BDCSystem build_bdc(const ReactionNetwork& net) {
  BDCSystem bdc;
  bdc.n = net.n();
  bdc.modes = detail::enumerate_modes(net);
  bdc.q = bdc.modes.size();
  bdc.B = IntMatrix(bdc.n, bdc.q);
  bdc.C = IntMatrix(bdc.q, bdc.n);
  for (std::size_t k = 0; k < bdc.q; ++k) {
    const Mode& md = bdc.modes[k];
    for (std::size_t i = 0; i < bdc.n; ++i) bdc.B(i, k) = net.S(i, md.reaction);
    bdc.C(k, md.species) = md.sign;
  }
  bdc.labels = net.species_names();
  bdc.influx = net.g0;
  return bdc;
}

inline PhiFamily build_phi_family(const BDCSystem& bdc) {
  PhiFamily fam;
  fam.source = bdc;
  for (std::size_t k = 0; k < bdc.q; ++k) {
    IntMatrix phi = IntMatrix::identity(bdc.n);
    for (std::size_t r = 0; r < bdc.n; ++r) {
      if (sgn(bdc.B(r, k)) == 0) continue;
      for (std::size_t c = 0; c < bdc.n; ++c) phi(r, c) += bdc.B(r, k) * bdc.C(k, c);
    }
    fam.phis.push_back(std::move(phi));
    bool u = bdc.mode_gain(k) == -1;
    fam.mode_unitary.push_back(u);
    fam.unitary = fam.unitary && u;
  }
  return fam;
}

/// B' = C^T, C' = B^T. Involutive.
inline BDCSystem build_dual(const BDCSystem& bdc) {
  BDCSystem d = bdc;
  d.B = bdc.C.transposed();
  d.C = bdc.B.transposed();
  d.influx.clear();
  return d;
}

inline EDFSystem build_edf(const ReactionNetwork& net) {
  EDFSystem edf;
  edf.m = net.m();
  edf.modes = detail::enumerate_modes(net);
  edf.q = edf.modes.size();
  edf.E = IntMatrix(edf.m, edf.q);
  edf.F = IntMatrix(edf.q, edf.m);
  for (std::size_t k = 0; k < edf.q; ++k) {
    const Mode& md = edf.modes[k];
    edf.E(md.reaction, k) = 1;
    for (std::size_t j = 0; j < edf.m; ++j) edf.F(k, j) = md.sign * net.S(md.species, j);
  }
  edf.labels = detail::reaction_labels(net);
  return edf;
}

/// An EDF system is a BDC system in reaction coordinates: B = E, C = F.
inline BDCSystem edf_as_bdc(const EDFSystem& edf) {
  BDCSystem b;
  b.n = edf.m;
  b.q = edf.q;
  b.B = edf.E;
  b.C = edf.F;
  b.modes = edf.modes;
  b.labels = edf.labels;
  return b;
}

/// Integer basis of {sigma : sigma^T B = 0}, primitive rows in Hermite form.
inline std::vector<IntVector> find_conservation_laws(const BDCSystem& bdc) { return integer_left_kernel(bdc.B); }

/// Conservation laws that an equilibrium can satisfy: sigma^T B = 0 and
/// sigma^T g0 = 0. A law with sigma^T g0 != 0 drifts at a constant rate, so
/// no equilibrium exists on it and reducing by it would discard that drift.
inline std::vector<IntVector> reducible_conservation_laws(const BDCSystem& bdc) {
  if (bdc.influx.empty() || is_zero(bdc.influx)) return find_conservation_laws(bdc);
  IntMatrix aug(bdc.n, bdc.q + 1);
  for (std::size_t i = 0; i < bdc.n; ++i) {
    for (std::size_t k = 0; k < bdc.q; ++k) aug(i, k) = bdc.B(i, k);
    aug(i, bdc.q) = bdc.influx[i];
  }
  return integer_left_kernel(aug);
}

struct ConservationReduction {
  BDCSystem reduced;
  std::vector<IntVector> sigmas;
  IntMatrix t_inv;  // sigma rows first
  IntMatrix t;
};

/// Changes coordinates to w = T^-1 x and drops the conserved coordinates.
/// With `t_inv` given it is used as is (its first rows must be the sigmas).
inline ConservationReduction reduce_by_conservation(const BDCSystem& bdc, const std::vector<IntVector>& sigmas,
                                                    std::optional<IntMatrix> t_inv = std::nullopt) {
  const std::size_t n = bdc.n;
  const std::size_t r = sigmas.size();
  ConservationReduction out;
  out.sigmas = sigmas;
  if (r == 0) {
    out.reduced = bdc;
    out.t_inv = IntMatrix::identity(n);
    out.t = IntMatrix::identity(n);
    return out;
  }
  IntMatrix sig(r, n);
  for (std::size_t i = 0; i < r; ++i) {
    if (sigmas[i].size() != n) throw std::invalid_argument("conservation vector has wrong length");
    sig.set_row(i, sigmas[i]);
  }

  std::vector<std::string> labels;
  if (t_inv) {
    if (t_inv->rows() != n || t_inv->cols() != n) throw std::invalid_argument("T^-1 has wrong shape");
    for (std::size_t i = 0; i < r; ++i)
      if (t_inv->row(i) != sigmas[i]) throw std::invalid_argument("first rows of T^-1 must be the sigmas");
    auto t = integer_inverse(*t_inv);
    if (!t) throw std::runtime_error("unimodular completion failure: T^-1 is not unimodular");
    out.t_inv = *t_inv;
    out.t = std::move(*t);
  } else {
    UnimodularCompletion comp = complete_unimodular(sig);
    out.t_inv = std::move(comp.t_inv);
    out.t = std::move(comp.t);
  }
  for (std::size_t i = r; i < n; ++i) {
    // A unit row keeps the original coordinate name.
    IntVector row = out.t_inv.row(i);
    std::optional<std::size_t> unit;
    std::size_t nonzeros = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(row[k]) != 0) {
        ++nonzeros;
        if (row[k] == 1) unit = k;
      }
    labels.push_back(nonzeros == 1 && unit ? bdc.labels[*unit] : "w" + std::to_string(i + 1));
  }

  IntMatrix tb = out.t_inv * bdc.B;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < bdc.q; ++k)
      if (sgn(tb(i, k)) != 0)
        throw std::invalid_argument("sigma " + std::to_string(i + 1) + " is not a conservation law (row of T^-1 B nonzero)");
  IntMatrix ct = bdc.C * out.t;

  BDCSystem red;
  red.n = n - r;
  red.q = bdc.q;
  red.modes = bdc.modes;
  red.labels = std::move(labels);
  red.B = IntMatrix(red.n, red.q);
  red.C = IntMatrix(red.q, red.n);
  for (std::size_t i = 0; i < red.n; ++i)
    for (std::size_t k = 0; k < red.q; ++k) red.B(i, k) = tb(r + i, k);
  for (std::size_t k = 0; k < red.q; ++k)
    for (std::size_t i = 0; i < red.n; ++i) red.C(k, i) = ct(k, r + i);
  if (!bdc.influx.empty()) {
    IntVector g = out.t_inv.apply(bdc.influx);
    red.influx.assign(g.begin() + static_cast<std::ptrdiff_t>(r), g.end());
  }
  out.reduced = std::move(red);
  return out;
}

}  // namespace plfnet
