#pragma once

// Arbitrary-precision scalar types shared by every module.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace plfnet {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;

inline IntVector make_int_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

inline IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n, Int(0));
  v[i] = 1;
  return v;
}

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline IntVector negated(const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

/// Sign-canonical representative of {v, -v}: first nonzero entry positive.
inline IntVector canonical_sign(IntVector v) {
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

inline Int max_abs(const IntVector& v) {
  Int m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

inline Int l1_norm(const IntVector& v) {
  Int s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

inline Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Divide out the gcd of the entries (zero vector unchanged).
inline IntVector make_primitive(IntVector v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

/// Lexicographic order on integer vectors of equal length.
struct IntVectorLess {
  bool operator()(const IntVector& a, const IntVector& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      int c = cmp(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  }
};

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (const auto& x : v) {
      std::size_t e = x.fits_slong_p() ? static_cast<std::size_t>(x.get_si())
                                        : std::hash<std::string>{}(x.get_str(16));
      h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// "num/den" for non-integers, plain "num" otherwise.
inline std::string to_fraction_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline std::optional<Rational> parse_fraction_string(const std::string& s) {
  try {
    Rational q(s, 10);
    if (sgn(q.get_den()) == 0) return std::nullopt;  // canonicalize would trap
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

inline std::string to_string(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + "]";
}

}  // namespace plfnet
