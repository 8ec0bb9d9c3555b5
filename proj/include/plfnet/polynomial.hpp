#pragma once

// Integer polynomials, characteristic polynomials and the exact
// "zero or root of unity" spectrum test.

#include "plfnet/matrix.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plfnet {

/// Coefficients in ascending degree order; no trailing zeros (zero poly = {}).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly monomial(std::size_t degree) {
    std::vector<Int> c(degree + 1, Int(0));
    c[degree] = 1;
    return IntPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<Int>& coefficients() const { return c_; }
  const Int& operator[](std::size_t i) const { return c_[i]; }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
  }

  /// Division by a monic polynomial: returns (quotient, remainder).
  std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& d) const {
    if (d.is_zero() || d.c_.back() != 1) throw std::invalid_argument("divmod_monic: divisor not monic");
    std::vector<Int> r = c_;
    int dd = d.degree();
    if (degree() < dd) return {IntPoly{}, *this};
    std::vector<Int> q(static_cast<std::size_t>(degree() - dd + 1), Int(0));
    for (int i = degree(); i >= dd; --i) {
      Int lead = r[static_cast<std::size_t>(i)];
      if (sgn(lead) == 0) continue;
      q[static_cast<std::size_t>(i - dd)] = lead;
      for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(i - dd + j)] -= lead * d.c_[static_cast<std::size_t>(j)];
    }
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Int& a = c_[static_cast<std::size_t>(i)];
      if (sgn(a) == 0) continue;
      Int mag = abs(a);
      if (!s.empty()) s += sgn(a) < 0 ? " - " : " + ";
      else if (sgn(a) < 0) s += "-";
      bool show_coeff = mag != 1 || i == 0;
      if (show_coeff) s += mag.get_str();
      if (i >= 1) s += var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

/// det(xI - M) by the Faddeev-LeVerrier recurrence (divisions are exact).
inline IntPoly characteristic_polynomial(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  std::vector<Int> c(n + 1, Int(0));
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    IntMatrix am = a * m;
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    Int kk = static_cast<unsigned long>(k);
    mpz_divexact(tr.get_mpz_t(), tr.get_mpz_t(), kk.get_mpz_t());
    c[n - k] = -tr;
  }
  return IntPoly(std::move(c));
}

/// Same recurrence in checked int64 arithmetic; nullopt on overflow.
inline std::optional<IntPoly> characteristic_polynomial_small(const SmallMatrix& a) {
  const std::size_t n = a.rows();
  try {
    std::vector<std::int64_t> c(n + 1, 0);
    c[n] = 1;
    SmallMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
      SmallMatrix next = checked_product(a, m);
      for (std::size_t i = 0; i < n; ++i)
        if (__builtin_add_overflow(next(i, i), c[n - k + 1], &next(i, i))) throw OverflowError();
      m = std::move(next);
      std::int64_t tr = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) tr = checked_mul_add(tr, a(i, j), m(j, i));
      c[n - k] = -(tr / static_cast<std::int64_t>(k));
    }
    std::vector<Int> big;
    big.reserve(n + 1);
    for (auto x : c) big.emplace_back(static_cast<long>(x));
    return IntPoly(std::move(big));
  } catch (const OverflowError&) {
    return std::nullopt;
  }
}

inline unsigned long euler_phi(unsigned long d) {
  unsigned long result = d;
  for (unsigned long p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    while (d % p == 0) d /= p;
    result -= result / p;
  }
  if (d > 1) result -= result / d;
  return result;
}

inline int moebius(unsigned long d) {
  int mu = 1;
  for (unsigned long p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    d /= p;
    if (d % p == 0) return 0;
    mu = -mu;
  }
  if (d > 1) mu = -mu;
  return mu;
}

/// The d-th cyclotomic polynomial, prod_{e | d} (x^e - 1)^{mu(d/e)}.
inline IntPoly cyclotomic_polynomial(unsigned long d) {
  auto x_pow_minus_one = [](unsigned long e) {
    std::vector<Int> c(e + 1, Int(0));
    c[0] = -1;
    c[e] = 1;
    return IntPoly(std::move(c));
  };
  IntPoly num(std::vector<Int>{Int(1)});
  IntPoly den(std::vector<Int>{Int(1)});
  for (unsigned long e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = moebius(d / e);
    if (mu == 1) num = num * x_pow_minus_one(e);
    if (mu == -1) den = den * x_pow_minus_one(e);
  }
  return num.divmod_monic(den).first;
}

struct SpectrumFactorization {
  std::size_t zero_multiplicity = 0;
  std::vector<std::pair<unsigned long, std::size_t>> cyclotomic;  // (d, multiplicity)
  IntPoly remainder;  // 1 iff every eigenvalue is zero or a root of unity

  bool only_zero_or_roots_of_unity() const { return remainder.is_one(); }

  /// lcm of the orders of the roots of unity that occur.
  unsigned long period() const {
    unsigned long p = 1;
    for (auto [d, m] : cyclotomic) p = std::lcm(p, d);
    return p;
  }
};

/// Splits a monic integer polynomial as x^a * prod Phi_d^{e_d} * remainder.
/// Since cyclotomic polynomials are irreducible over Q, the remainder has no
/// root of unity and no zero root.
inline SpectrumFactorization factor_spectrum(IntPoly p) {
  SpectrumFactorization out;
  if (p.is_zero()) throw std::invalid_argument("factor_spectrum: zero polynomial");
  std::vector<Int> c = p.coefficients();
  std::size_t a = 0;
  while (a < c.size() && sgn(c[a]) == 0) ++a;
  out.zero_multiplicity = a;
  p = IntPoly(std::vector<Int>(c.begin() + static_cast<std::ptrdiff_t>(a), c.end()));
  const unsigned long deg = static_cast<unsigned long>(std::max(p.degree(), 0));
  for (unsigned long d = 1; deg > 0 && d <= 2 * deg * deg + 2; ++d) {
    if (euler_phi(d) > static_cast<unsigned long>(p.degree())) continue;
    IntPoly phi = cyclotomic_polynomial(d);
    std::size_t mult = 0;
    for (;;) {
      if (p.degree() < phi.degree()) break;
      auto [q, r] = p.divmod_monic(phi);
      if (!r.is_zero()) break;
      p = q;
      ++mult;
    }
    if (mult) out.cyclotomic.emplace_back(d, mult);
  }
  out.remainder = p;
  return out;
}

inline IntMatrix matrix_power(IntMatrix base, unsigned long e) {
  IntMatrix result = IntMatrix::identity(base.rows());
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// True iff M^m = M^{m+p} with m = dim, p = period of the spectrum; for
/// matrices whose spectrum is zero or roots of unity this decides eventual
/// periodicity (non-trivial Jordan blocks on the unit circle break it).
inline bool is_eventually_periodic(const IntMatrix& m, const SpectrumFactorization& spectrum) {
  if (!spectrum.only_zero_or_roots_of_unity()) return false;
  const unsigned long n = m.rows();
  IntMatrix mn = matrix_power(m, n);
  IntMatrix mnp = mn * matrix_power(m, spectrum.period());
  return mn == mnp;
}

}  // namespace plfnet
