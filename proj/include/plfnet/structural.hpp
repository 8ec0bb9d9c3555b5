#pragma once

// Structural non-singularity of -BDC over all positive diagonal D.
//
// Cauchy-Binet: det(-BDC) = sum over n-subsets S of modes of
//   (-1)^n det(B_S) det(C_S) prod_{k in S} D_k.
// Distinct subsets give distinct monomials, so the polynomial is positive
// for every D > 0 iff no coefficient is negative and some coefficient is
// positive.

#include "plfnet/decomposition.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace plfnet {

enum class NonSingVerdict { Positive, FailsAtTerm, Degenerate };

inline std::string to_string(NonSingVerdict v) {
  switch (v) {
    case NonSingVerdict::Positive: return "Positive";
    case NonSingVerdict::FailsAtTerm: return "FailsAtTerm";
    case NonSingVerdict::Degenerate: return "Degenerate";
  }
  return "?";
}

struct NonSingTerm {
  std::vector<std::size_t> subset;  // 0-based mode indices, increasing
  Int coefficient;
};

struct NonSingReport {
  NonSingVerdict structural = NonSingVerdict::Degenerate;
  std::vector<NonSingTerm> terms;  // nonzero coefficients only
  std::optional<NonSingTerm> witness;
  std::size_t subsets_examined = 0;
};

inline void for_each_subset(std::size_t q, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (k > q) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == q - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline Int cauchy_binet_coefficient(const BDCSystem& bdc, const std::vector<std::size_t>& s) {
  Int db = determinant(bdc.B.select_cols(s));
  if (sgn(db) == 0) return 0;
  Int dc = determinant(bdc.C.select_rows(s));
  Int c = db * dc;
  return bdc.n % 2 ? Int(-c) : c;
}

/// With `stop_at_first_failure` the enumeration ends at the first negative
/// coefficient (the term table is then partial).
inline NonSingReport nonsingular_structural(const BDCSystem& bdc, bool stop_at_first_failure = false) {
  NonSingReport rep;
  if (bdc.n == 0) {
    rep.structural = NonSingVerdict::Positive;  // empty determinant is 1
    rep.terms.push_back({{}, 1});
    return rep;
  }
  bool negative = false;
  bool positive = false;
  for_each_subset(bdc.q, bdc.n, [&](const std::vector<std::size_t>& s) {
    ++rep.subsets_examined;
    Int c = cauchy_binet_coefficient(bdc, s);
    if (sgn(c) == 0) return true;
    rep.terms.push_back({s, c});
    if (sgn(c) > 0) positive = true;
    if (sgn(c) < 0 && !negative) {
      negative = true;
      rep.witness = NonSingTerm{s, c};
      if (stop_at_first_failure) return false;
    }
    return true;
  });
  if (negative) rep.structural = NonSingVerdict::FailsAtTerm;
  else if (positive) rep.structural = NonSingVerdict::Positive;
  else rep.structural = NonSingVerdict::Degenerate;
  return rep;
}

/// det(-B D C) for a given diagonal D (exact).
inline Rational det_minus_bdc(const BDCSystem& bdc, const std::vector<Rational>& d) {
  const std::size_t n = bdc.n;
  // -B D C with common denominator so the Bareiss determinant stays integral.
  Int den = 1;
  for (const auto& x : d) den = lcm(den, x.get_den());
  IntMatrix m(n, n);
  for (std::size_t k = 0; k < bdc.q; ++k) {
    Int dk = d[k].get_num() * (den / d[k].get_den());
    for (std::size_t r = 0; r < n; ++r) {
      if (sgn(bdc.B(r, k)) == 0) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) -= bdc.B(r, k) * dk * bdc.C(k, c);
    }
  }
  Rational det(determinant(m));
  Int scale;
  mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(), n);
  return det / Rational(scale);
}

struct BoxSizeError : std::length_error {
  explicit BoxSizeError(std::size_t q)
      : std::length_error("box check over " + std::to_string(q) + " modes exceeds the vertex cap; use the structural test") {}
};

/// det(-B D C) > 0 at every vertex of the box.
inline bool nonsingular_on_box(const BDCSystem& bdc, const DBox& box, std::size_t max_modes = 20) {
  box.validate();
  if (box.q() != bdc.q) throw std::invalid_argument("box dimension differs from mode count");
  if (bdc.q > max_modes) throw BoxSizeError(bdc.q);
  std::vector<Rational> d(bdc.q);
  const unsigned long long count = 1ull << bdc.q;
  for (unsigned long long mask = 0; mask < count; ++mask) {
    for (std::size_t k = 0; k < bdc.q; ++k) d[k] = (mask >> k) & 1 ? box.upper[k] : box.lower[k];
    if (!(det_minus_bdc(bdc, d) > 0)) return false;
  }
  return true;
}

}  // namespace plfnet
