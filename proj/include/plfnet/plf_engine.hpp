#pragma once

// Vertex iteration for structural polyhedral Lyapunov functions.
//
// Y^0 = I; each step adds the images Phi_i v of the newest columns and keeps
// the vertices of conv{+-columns}. A step that adds nothing is a fixed point.
// All membership questions are exact L1 LPs. Two stopping criteria certify
// that no fixed point exists: the inclusion test (Y^0 strictly inside Y^k)
// and the eigen criterion on products of the Phi matrices.

#include "plfnet/decomposition.hpp"
#include "plfnet/l1_lp.hpp"
#include "plfnet/polynomial.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace plfnet {

using Word = std::vector<std::size_t>;  // modes in application order

/// Product Phi_{w_L} ... Phi_{w_1} for word w = (w_1, ..., w_L).
inline IntMatrix word_product(const PhiFamily& fam, const Word& w) {
  IntMatrix p = IntMatrix::identity(fam.dim());
  for (std::size_t k : w) {
    if (k >= fam.size()) throw std::out_of_range("mode index out of range in word");
    p = fam[k] * p;
  }
  return p;
}

struct VertexSet {
  std::size_t n = 0;
  std::vector<IntVector> columns;  // canonical, sorted, distinct, nonzero

  static VertexSet identity(std::size_t n) {
    VertexSet v;
    v.n = n;
    for (std::size_t i = n; i-- > 0;) v.columns.push_back(unit_vector(n, i));
    return v;
  }

  /// Canonicalises, drops zeros and duplicates, sorts.
  static VertexSet from_columns(std::size_t n, const std::vector<IntVector>& cols) {
    std::set<IntVector, IntVectorLess> s;
    for (const auto& c : cols) {
      if (c.size() != n) throw std::invalid_argument("vertex column has wrong dimension");
      if (!is_zero(c)) s.insert(canonical_sign(c));
    }
    return {n, std::vector<IntVector>(s.begin(), s.end())};
  }

  std::size_t pair_count() const { return columns.size(); }
  std::size_t vertex_count() const { return 2 * columns.size(); }

  bool contains_column(const IntVector& v) const {
    return std::binary_search(columns.begin(), columns.end(), canonical_sign(v), IntVectorLess{});
  }

  Int max_coordinate() const {
    Int m = 0;
    for (const auto& c : columns) {
      Int a = max_abs(c);
      if (a > m) m = a;
    }
    return m;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.n == b.n && a.columns == b.columns; }
};

/// V(v) = min{||p||_1 : X p = v}; nullopt if v is outside span X.
inline std::optional<Rational> gauge_value(const VertexSet& vs, const IntVector& v) {
  L1Membership lp(vs.columns, vs.n);
  LPResult r = lp.solve(v);
  if (r.status == LPStatus::Infeasible) return std::nullopt;
  return r.value;
}

/// v in conv{+-columns}, i.e. V(v) <= 1.
inline bool in_hull(const L1Membership& lp, const IntVector& v) {
  LPResult r = lp.solve(v, std::nullopt, {Rational(1), false});
  return r.status == LPStatus::StoppedBelow || (r.status == LPStatus::Optimal && r.value <= 1);
}

/// Keeps the columns that are vertices of conv{+-columns}. A column on a face
/// of the hull of the others counts as redundant. The vertex set of a polytope
/// is unique, so the result does not depend on column order.
inline VertexSet remove_redundant(const VertexSet& candidate) {
  VertexSet c = VertexSet::from_columns(candidate.n, candidate.columns);
  L1Membership lp(c.columns, c.n);
  VertexSet out{c.n, {}};
  for (std::size_t j = 0; j < c.columns.size(); ++j) {
    LPResult r = lp.solve(c.columns[j], j, {Rational(1), false});
    bool redundant = r.status == LPStatus::StoppedBelow || (r.status == LPStatus::Optimal && r.value <= 1);
    if (!redundant) out.columns.push_back(c.columns[j]);
  }
  return out;
}

/// One step of the procedure over the whole current set.
inline VertexSet iterate_once(const VertexSet& current, const PhiFamily& fam) {
  std::vector<IntVector> all = current.columns;
  for (const auto& v : current.columns)
    for (const auto& phi : fam.phis) all.push_back(phi.apply(v));
  return remove_redundant(VertexSet::from_columns(current.n, all));
}

inline bool check_invariance(const VertexSet& vs, const PhiFamily& fam) {
  L1Membership lp(vs.columns, vs.n);
  for (const auto& phi : fam.phis)
    for (const auto& v : vs.columns)
      if (!in_hull(lp, phi.apply(v))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Stopping criteria.

/// How a column arose: +-(Phi_word e_start), up to sign.
struct ColumnOrigin {
  std::size_t start = 0;
  Word word;
};

struct InclusionCertificate {
  VertexSet vertices;                            // Y at the iteration that fired
  std::vector<std::vector<Rational>> witnesses;  // Y p_i = e_i, ||p_i||_1 < 1
  std::vector<ColumnOrigin> origins;             // one per column of Y
};

enum class EigenFailure {
  NonCyclotomic,  // characteristic polynomial has a factor other than x and Phi_d
  JordanBlock,    // spectrum on the unit circle but M^n != M^(n+p): powers grow
};

struct EigenCertificate {
  Word word;
  EigenFailure failure = EigenFailure::NonCyclotomic;
  IntPoly characteristic;
  IntPoly offending;        // non-cyclotomic remainder (NonCyclotomic)
  unsigned long period = 0;  // lcm of root-of-unity orders (JordanBlock)
  std::string description;
};

using Certificate = std::variant<std::monostate, InclusionCertificate, EigenCertificate>;

inline std::optional<InclusionCertificate> inclusion_test(const VertexSet& current) {
  const std::size_t n = current.n;
  // A unit vector that is itself a vertex has gauge exactly 1.
  for (std::size_t i = 0; i < n; ++i)
    if (current.contains_column(unit_vector(n, i))) return std::nullopt;
  {
    IntMatrix x(n, current.columns.size());
    for (std::size_t j = 0; j < current.columns.size(); ++j) x.set_col(j, current.columns[j]);
    if (rank(x) < n) return std::nullopt;
  }
  L1Membership lp(current.columns, n);
  InclusionCertificate cert;
  cert.vertices = current;
  for (std::size_t i = 0; i < n; ++i) {
    LPResult r = lp.solve(unit_vector(n, i), std::nullopt, {Rational(1), true});
    if (r.status != LPStatus::StoppedBelow && !(r.status == LPStatus::Optimal && r.value < 1)) return std::nullopt;
    cert.witnesses.push_back(std::move(r.p));
  }
  return cert;
}

namespace detail {

inline std::optional<EigenCertificate> examine_product(const IntMatrix& m, const std::optional<SmallMatrix>& small,
                                                       const Word& w) {
  std::optional<IntPoly> cp;
  if (small) cp = characteristic_polynomial_small(*small);
  if (!cp) cp = characteristic_polynomial(m);
  SpectrumFactorization f = factor_spectrum(*cp);
  if (!f.only_zero_or_roots_of_unity()) {
    EigenCertificate c;
    c.word = w;
    c.failure = EigenFailure::NonCyclotomic;
    c.characteristic = *cp;
    c.offending = f.remainder;
    c.description = "eigenvalue outside {0, roots of unity}: root of " + f.remainder.to_string();
    return c;
  }
  if (!is_eventually_periodic(m, f)) {
    EigenCertificate c;
    c.word = w;
    c.failure = EigenFailure::JordanBlock;
    c.characteristic = *cp;
    c.period = f.period();
    c.description = "unit-circle eigenvalue with a nontrivial Jordan block: M^" + std::to_string(m.rows()) +
                    " != M^" + std::to_string(m.rows() + f.period());
    return c;
  }
  return std::nullopt;
}

}  // namespace detail

/// Breadth-first enumeration of the product semigroup, one word length per
/// call to `next_layer`, which returns a certificate as soon as a product has
/// an eigenvalue that is neither zero nor a root of unity. Distinct matrices
/// are memoised; words that the identities Phi_i^2 = Phi_i and
/// Phi_a Phi_b = Phi_b (C_a = C_b, mode b unitary) reduce to shorter ones are
/// never formed.
class ProductEnumerator {
 public:
  ProductEnumerator(const PhiFamily& fam, std::size_t product_cap) : fam_(fam), cap_(product_cap) {}

  std::size_t layer() const { return layer_; }
  std::size_t distinct_products() const { return seen_.size(); }
  bool saturated() const { return cap_hit_; }
  /// True when the last layer produced nothing new: the semigroup is finite
  /// and fully enumerated.
  bool closed() const { return closed_; }
  /// Earliest product found with a unit-circle Jordan block. Reported only
  /// after the word-length cap, so eigenvalues off the unit circle win.
  const std::optional<EigenCertificate>& deferred_jordan() const { return jordan_; }

  std::optional<EigenCertificate> next_layer() {
    ++layer_;
    std::vector<Item> next;
    if (layer_ == 1) {
      for (std::size_t k = 0; k < fam_.size(); ++k) {
        auto c = consider(fam_[k], Word{k}, next);
        if (c) return c;
      }
    } else {
      for (const auto& item : frontier_) {
        std::size_t last = item.word.back();
        for (std::size_t k = 0; k < fam_.size(); ++k) {
          if (absorbs(k, last)) continue;
          if (cap_hit_) break;
          IntMatrix prod = fam_[k] * item.matrix;
          Word w = item.word;
          w.push_back(k);
          auto c = consider(prod, w, next);
          if (c) return c;
        }
      }
    }
    closed_ = next.empty() && !cap_hit_;
    frontier_ = std::move(next);
    return std::nullopt;
  }

 private:
  struct Item {
    IntMatrix matrix;
    Word word;
  };
  struct MatrixHash {
    std::size_t operator()(const IntMatrix& m) const {
      std::size_t h = 0x243f6a8885a308d3ull;
      for (const auto& x : m.data()) h ^= IntVectorHash{}(IntVector{x}) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    }
  };

  bool absorbs(std::size_t a, std::size_t b) const {
    if (!fam_.mode_unitary[b]) return false;
    for (std::size_t i = 0; i < fam_.dim(); ++i)
      if (fam_.source.C(a, i) != fam_.source.C(b, i)) return false;
    return true;
  }

  std::optional<EigenCertificate> consider(const IntMatrix& prod, const Word& w, std::vector<Item>& next) {
    if (seen_.size() >= cap_) {
      cap_hit_ = true;
      return std::nullopt;
    }
    if (!seen_.insert(prod).second) return std::nullopt;
    auto small = to_small(prod);
    auto cert = detail::examine_product(prod, small, w);
    next.push_back({prod, w});
    if (cert && cert->failure == EigenFailure::NonCyclotomic) return cert;
    if (cert && !jordan_) jordan_ = std::move(cert);
    return std::nullopt;
  }

  PhiFamily fam_;
  std::size_t cap_;
  std::size_t layer_ = 0;
  bool cap_hit_ = false;
  bool closed_ = false;
  std::vector<Item> frontier_;
  std::unordered_set<IntMatrix, MatrixHash> seen_;
  std::optional<EigenCertificate> jordan_;
};

inline std::optional<EigenCertificate> eigen_criterion(const PhiFamily& fam, std::size_t word_length_cap,
                                                       std::size_t product_cap = 100000) {
  ProductEnumerator en(fam, product_cap);
  for (std::size_t l = 1; l <= word_length_cap; ++l) {
    if (auto c = en.next_layer()) return c;
    if (en.closed() || en.saturated()) break;
  }
  return en.deferred_jordan();
}

// ---------------------------------------------------------------------------
// The procedure.

struct Budget {
  std::size_t max_iterations = 200;
  std::size_t max_vertices = 100000;  // canonical columns
  Int max_coordinate = 1000000;
  std::size_t eigen_word_length = 8;
  std::size_t max_products = 100000;

  void validate() const {
    if (max_iterations == 0 || max_vertices == 0 || max_coordinate <= 0 || eigen_word_length == 0 ||
        max_products == 0)
      throw std::invalid_argument("budget fields must be positive");
  }
};

struct Criteria {
  bool inclusion = true;
  bool eigen = true;
};

enum class Verdict { Converged, CertifiedNoPLF, BudgetExhausted };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "Converged";
    case Verdict::CertifiedNoPLF: return "CertifiedNoPLF";
    case Verdict::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

struct IterationStats {
  std::size_t columns = 0;
  std::size_t added = 0;
  std::size_t removed = 0;
  std::size_t lps = 0;
};

struct PLFResult {
  Verdict verdict = Verdict::BudgetExhausted;
  VertexSet vertex_set;  // final set (fixed point on Converged)
  std::size_t iterations = 0;
  Certificate certificate;
  std::string budget_reason;
  std::vector<IterationStats> history;
  std::size_t eigen_layers = 0;
  std::size_t eigen_products = 0;
  bool monotone = true;  // every dropped column lay in the new hull
  double seconds = 0;

  std::size_t pair_count() const { return vertex_set.pair_count(); }
  std::size_t vertex_count() const { return vertex_set.vertex_count(); }
};

namespace detail {

// A column together with a dual vector proving it is a vertex:
// y^T col > 1 and |y^T x| <= 1 for every other column x (or, for a Farkas
// vector, y^T col > 0 and y^T x = 0).
struct TrackedColumn {
  IntVector col;
  std::vector<Rational> sep;
  bool farkas = false;
  ColumnOrigin origin;
};

inline bool still_separates(const TrackedColumn& t, const IntVector& x) {
  Rational s = 0;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (sgn(x[k]) != 0) s += t.sep[k] * x[k];
  return t.farkas ? sgn(s) == 0 : abs(s) <= 1;
}

inline bool record_separation(TrackedColumn& t, const LPResult& r) {
  if (r.status == LPStatus::StoppedBelow) return false;
  if (r.status == LPStatus::Optimal && r.value <= 1) return false;
  t.sep = r.dual;
  t.farkas = r.status == LPStatus::Infeasible;
  return true;
}

}  // namespace detail

inline PLFResult run_procedure(const PhiFamily& fam, const Budget& budget = {}, const Criteria& criteria = {}) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  budget.validate();
  const std::size_t n = fam.dim();
  PLFResult res;

  std::vector<detail::TrackedColumn> cols;
  for (const auto& c : VertexSet::identity(n).columns) {
    detail::TrackedColumn t{c, {}, false, {}};
    for (std::size_t i = 0; i < n; ++i) {
      t.sep.push_back(Rational(c[i]) * 2);  // y = 2 e_i
      if (sgn(c[i]) != 0) t.origin.start = i;
    }
    cols.push_back(std::move(t));
  }
  std::vector<std::pair<IntVector, ColumnOrigin>> frontier;
  for (const auto& t : cols) frontier.emplace_back(t.col, t.origin);

  auto snapshot = [&] {
    std::vector<IntVector> v;
    for (const auto& t : cols) v.push_back(t.col);
    return VertexSet::from_columns(n, v);
  };
  auto finish = [&](Verdict v) {
    res.verdict = v;
    res.vertex_set = snapshot();
    res.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return res;
  };

  std::optional<ProductEnumerator> eigen;
  if (criteria.eigen) eigen.emplace(fam, budget.max_products);

  if (n == 0 || fam.size() == 0) {
    res.iterations = 1;
    return finish(Verdict::Converged);
  }

  for (std::size_t it = 1; it <= budget.max_iterations; ++it) {
    res.iterations = it;
    IterationStats st;
    std::vector<IntVector> current;
    std::unordered_set<IntVector, IntVectorHash> present;
    for (const auto& t : cols) {
      current.push_back(t.col);
      present.insert(t.col);
    }

    std::map<IntVector, ColumnOrigin, IntVectorLess> images;
    for (const auto& [v, from] : frontier)
      for (std::size_t k = 0; k < fam.size(); ++k) {
        IntVector w = fam[k].apply(v);
        if (is_zero(w)) continue;
        w = canonical_sign(std::move(w));
        if (present.count(w) || images.count(w)) continue;
        ColumnOrigin o = from;
        o.word.push_back(k);
        images.emplace(std::move(w), std::move(o));
      }

    L1Membership lp(current, n);
    std::vector<detail::TrackedColumn> fresh;
    for (const auto& [w, origin] : images) {
      detail::TrackedColumn t{w, {}, false, origin};
      ++st.lps;
      if (detail::record_separation(t, lp.solve(w, std::nullopt, {Rational(1), false}))) fresh.push_back(std::move(t));
    }

    if (fresh.empty()) {
      st.columns = cols.size();
      res.history.push_back(st);
      return finish(Verdict::Converged);
    }

    // New candidate set; re-check vertex status where a cached separator fails.
    const std::size_t old_count = cols.size();
    std::vector<detail::TrackedColumn> all = std::move(cols);
    for (auto& t : fresh) all.push_back(std::move(t));
    std::vector<IntVector> all_cols;
    for (const auto& t : all) all_cols.push_back(t.col);
    L1Membership lp_all(all_cols, n);
    std::vector<bool> keep(all.size(), true);
    for (std::size_t j = 0; j < all.size(); ++j) {
      bool ok = true;
      for (std::size_t k = old_count; k < all.size() && ok; ++k)
        if (k != j && !detail::still_separates(all[j], all_cols[k])) ok = false;
      if (ok) continue;
      ++st.lps;
      if (!detail::record_separation(all[j], lp_all.solve(all_cols[j], j, {Rational(1), false}))) keep[j] = false;
    }

    cols.clear();
    frontier.clear();
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (!keep[j]) {
        if (j < old_count) ++st.removed;
        continue;
      }
      if (j >= old_count) {
        frontier.emplace_back(all[j].col, all[j].origin);
        ++st.added;
      }
      cols.push_back(std::move(all[j]));
    }
    st.columns = cols.size();
    res.history.push_back(st);

    if (cols.size() > budget.max_vertices) {
      res.budget_reason = "vertex cap " + std::to_string(budget.max_vertices) + " exceeded";
      return finish(Verdict::BudgetExhausted);
    }
    for (const auto& t : cols)
      if (max_abs(t.col) > budget.max_coordinate) {
        res.budget_reason = "coordinate bound " + budget.max_coordinate.get_str() + " exceeded";
        return finish(Verdict::BudgetExhausted);
      }

    if (criteria.inclusion) {
      VertexSet now = snapshot();
      if (auto c = inclusion_test(now)) {
        std::map<IntVector, ColumnOrigin, IntVectorLess> by_col;
        for (const auto& t : cols) by_col.emplace(t.col, t.origin);
        for (const auto& col : c->vertices.columns) c->origins.push_back(by_col.at(col));
        res.certificate = std::move(*c);
        return finish(Verdict::CertifiedNoPLF);
      }
    }
    if (eigen && it <= budget.eigen_word_length && !eigen->closed() && !eigen->saturated()) {
      auto c = eigen->next_layer();
      res.eigen_layers = eigen->layer();
      res.eigen_products = eigen->distinct_products();
      bool last = it == budget.eigen_word_length || eigen->saturated();
      if (!c && last && eigen->deferred_jordan()) c = eigen->deferred_jordan();
      if (c) {
        res.certificate = std::move(*c);
        return finish(Verdict::CertifiedNoPLF);
      }
    }
  }
  res.budget_reason = "iteration cap " + std::to_string(budget.max_iterations) + " reached";
  return finish(Verdict::BudgetExhausted);
}

// ---------------------------------------------------------------------------
// Independent certificate checks.

inline bool verify_certificate(const PhiFamily& fam, const InclusionCertificate& c) {
  const std::size_t n = fam.dim();
  const VertexSet& y = c.vertices;
  if (y.n != n || c.witnesses.size() != n || c.origins.size() != y.columns.size()) return false;
  // Every column must be an image of a unit vector, so conv Y lies in the iterate.
  for (std::size_t j = 0; j < y.columns.size(); ++j) {
    const ColumnOrigin& o = c.origins[j];
    if (o.start >= n) return false;
    IntVector img = word_product(fam, o.word).apply(unit_vector(n, o.start));
    if (is_zero(img) || canonical_sign(img) != canonical_sign(y.columns[j])) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = c.witnesses[i];
    if (p.size() != y.columns.size()) return false;
    Rational norm = 0;
    std::vector<Rational> acc(n, Rational(0));
    for (std::size_t j = 0; j < p.size(); ++j) {
      norm += abs(p[j]);
      for (std::size_t r = 0; r < n; ++r) acc[r] += p[j] * y.columns[j][r];
    }
    if (!(norm < 1)) return false;
    for (std::size_t r = 0; r < n; ++r)
      if (acc[r] != (r == i ? 1 : 0)) return false;
  }
  return true;
}

inline bool verify_certificate(const PhiFamily& fam, const EigenCertificate& c) {
  if (c.word.empty()) return false;
  IntMatrix m = word_product(fam, c.word);
  IntPoly cp = characteristic_polynomial(m);
  if (!(cp == c.characteristic)) return false;
  SpectrumFactorization f = factor_spectrum(cp);
  if (c.failure == EigenFailure::NonCyclotomic) return !f.only_zero_or_roots_of_unity();
  if (!f.only_zero_or_roots_of_unity()) return false;
  return !is_eventually_periodic(m, f);
}

inline bool verify_certificate(const PhiFamily& fam, const Certificate& c) {
  if (auto* a = std::get_if<InclusionCertificate>(&c)) return verify_certificate(fam, *a);
  if (auto* b = std::get_if<EigenCertificate>(&c)) return verify_certificate(fam, *b);
  return false;
}

}  // namespace plfnet
