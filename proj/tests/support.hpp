#pragma once

#include "plfnet/plfnet.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace plfnet::testing {

inline std::string network_path(const std::string& name) { return std::string(PLFNET_NETWORK_DIR) + "/" + name; }

inline ReactionNetwork load(const std::string& name) {
  std::ifstream in(network_path(name));
  if (!in) throw std::runtime_error("missing network file " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

/// Every file under networks/.
inline const std::vector<std::string>& bundled() {
  static const std::vector<std::string> names{
      "telemann.net",       "unbounded_cycle.net",       "vivaldi.net",   "translation.net",
      "translation_full.net", "transcription.net",       "monomolecular_chain.net",
      "monomolecular_degradation.net", "two_cycle.net"};
  return names;
}

inline IntMatrix mat(const std::vector<std::vector<long>>& rows) { return IntMatrix::from_rows(rows); }

inline IntVector vec(std::initializer_list<long> v) { return make_int_vector(v); }

inline std::vector<IntVector> canonical(std::vector<std::vector<long>> cols) {
  std::vector<IntVector> out;
  for (auto& c : cols) {
    IntVector v;
    for (long x : c) v.emplace_back(x);
    out.push_back(canonical_sign(v));
  }
  return VertexSet::from_columns(out.empty() ? 0 : out[0].size(), out).columns;
}

/// Independent gauge oracle: min ||p||_1 over basic solutions. Every vertex
/// of {p : X p = v} with the split p = p+ - p- uses at most rank(X) columns of
/// [X -X]; enumerating all column subsets of size rank(X) and solving them
/// exactly finds the optimum. Exponential; for small inputs only.
inline std::optional<Rational> brute_force_gauge(const std::vector<IntVector>& cols, const IntVector& v) {
  const std::size_t n = v.size();
  const std::size_t m = cols.size();
  IntMatrix x(n, m);
  for (std::size_t j = 0; j < m; ++j) x.set_col(j, cols[j]);
  const std::size_t r = rank(x);
  std::optional<Rational> best;
  if (r == 0) {
    if (is_zero(v)) return Rational(0);
    return std::nullopt;
  }
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    // Solve X_S p_S = v in the least-squares-free way: pick r independent rows.
    IntMatrix xs = x.select_cols(idx);
    if (rank(xs) == r) {
      RationalMatrix aug(n, r + 1);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < r; ++k) aug(i, k) = Rational(xs(i, k));
        aug(i, r) = Rational(v[i]);
      }
      std::vector<std::size_t> piv = rref_in_place(aug);
      bool consistent = std::find(piv.begin(), piv.end(), r) == piv.end();
      if (consistent) {
        Rational norm = 0;
        for (std::size_t i = 0; i < piv.size(); ++i) norm += abs(aug(i, r));
        if (!best || norm < *best) best = norm;
      }
    }
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == m - r + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

}  // namespace plfnet::testing
