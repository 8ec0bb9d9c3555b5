#pragma once

// Hermite normal form, integer left kernels and unimodular completion.

#include "plfnet/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace plfnet {

struct HermiteResult {
  IntMatrix h;          // row-style HNF: U * A = H
  IntMatrix u;          // unimodular transform
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

namespace detail {

// rows i, j  <-  [a b; c d] * [row_i; row_j] with ad - bc = +-1
inline void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, const Int& a, const Int& b, const Int& c,
                         const Int& d) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    Int ri = m(i, k), rj = m(j, k);
    m(i, k) = a * ri + b * rj;
    m(j, k) = c * ri + d * rj;
  }
}

inline void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) {
  for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(i, k), m(j, k));
}

}  // namespace detail

/// Row-style Hermite normal form: pivots strictly increase left to right,
/// pivot entries are positive, entries above a pivot lie in [0, pivot).
inline HermiteResult hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    // Euclid down the column: leave gcd in h(row, col), zero below.
    for (std::size_t i = row + 1; i < h.rows(); ++i) {
      if (sgn(h(i, col)) == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(row, col).get_mpz_t(), h(i, col).get_mpz_t());
      Int x = h(row, col) / g;
      Int y = h(i, col) / g;
      // [s t; -y x] has determinant s*x + t*y = 1.
      Int neg_y = -y;
      detail::combine_rows(h, row, i, s, t, neg_y, x);
      detail::combine_rows(u, row, i, s, t, neg_y, x);
    }
    if (sgn(h(row, col)) == 0) continue;
    if (sgn(h(row, col)) < 0) {
      for (std::size_t k = 0; k < h.cols(); ++k) h(row, k) = -h(row, k);
      for (std::size_t k = 0; k < u.cols(); ++k) u(row, k) = -u(row, k);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(row, col).get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t k = 0; k < h.cols(); ++k) h(i, k) -= q * h(row, k);
      for (std::size_t k = 0; k < u.cols(); ++k) u(i, k) -= q * u(row, k);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(h), std::move(u), std::move(pivots)};
}

/// Basis of the integer lattice {s : s^T A = 0}, canonicalised to Hermite
/// normal form (so each vector is primitive and the list is unique).
inline std::vector<IntVector> integer_left_kernel(const IntMatrix& a) {
  HermiteResult hr = hermite_normal_form(a);
  const std::size_t r = hr.pivots.size();
  if (r == a.rows()) return {};
  IntMatrix basis(a.rows() - r, a.rows());
  for (std::size_t i = r; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.rows(); ++k) basis(i - r, k) = hr.u(i, k);
  HermiteResult canon = hermite_normal_form(basis);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < canon.pivots.size(); ++i) out.push_back(make_primitive(canon.h.row(i)));
  return out;
}

struct UnimodularCompletion {
  IntMatrix t_inv;     // first rows = the given sigma rows
  IntMatrix t;         // integer inverse
  std::vector<std::size_t> retained_unit_columns;  // set when completed by unit rows
  bool unit_completion = false;
};

/// Completes the rows of `sigma` (r x n) to a unimodular n x n matrix whose
/// first r rows are exactly `sigma`. Prefers completion by unit rows e_j at
/// the non-pivot columns (keeps retained coordinates equal to original
/// species); otherwise uses the column Hermite form sigma * V = [L 0].
inline UnimodularCompletion complete_unimodular(const IntMatrix& sigma) {
  const std::size_t r = sigma.rows();
  const std::size_t n = sigma.cols();
  if (r > n) throw std::invalid_argument("more sigma rows than columns");
  UnimodularCompletion out;

  HermiteResult hr = hermite_normal_form(sigma);
  if (hr.pivots.size() != r) throw std::invalid_argument("sigma rows are linearly dependent");

  IntMatrix sub = sigma.select_cols(hr.pivots);
  if (abs(determinant(sub)) == 1) {
    out.t_inv = IntMatrix(n, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < n; ++k) out.t_inv(i, k) = sigma(i, k);
    std::size_t row = r;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(hr.pivots.begin(), hr.pivots.end(), j) != hr.pivots.end()) continue;
      out.t_inv(row++, j) = 1;
      out.retained_unit_columns.push_back(j);
    }
    out.unit_completion = true;
  } else {
    // Column HNF of sigma: transpose, row HNF, transpose back.
    HermiteResult ct = hermite_normal_form(sigma.transposed());
    // ct.u * sigma^T = H  =>  sigma * ct.u^T = H^T = [L 0]; V = ct.u^T.
    IntMatrix v = ct.u.transposed();
    auto v_inv = integer_inverse(v);
    if (!v_inv) throw std::runtime_error("unimodular completion: transform not invertible");
    IntMatrix l(r, r);
    IntMatrix ht = ct.h.transposed();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) l(i, k) = ht(i, k);
    if (abs(determinant(l)) != 1)
      throw std::runtime_error("unimodular completion failure: sigma lattice is not saturated");
    out.t_inv = IntMatrix(n, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < n; ++k) out.t_inv(i, k) = sigma(i, k);
    for (std::size_t i = r; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) out.t_inv(i, k) = (*v_inv)(i, k);
  }
  auto t = integer_inverse(out.t_inv);
  if (!t) throw std::runtime_error("unimodular completion failure: completed matrix not unimodular");
  out.t = std::move(*t);
  return out;
}

}  // namespace plfnet
