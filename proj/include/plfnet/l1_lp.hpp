#pragma once

// Exact L1 membership LP:   min ||p||_1  s.t.  X p = v.
//
// Solved as a revised simplex over p = p+ - p- with rational basis inverse.
// Columns of X come in +/- pairs, so any basic solution can be made primal
// feasible by picking the sign of each basic column; phase 1 only runs when
// the crash basis needs artificial unit columns (X rank deficient).
//
// Pricing uses the integer dual  y_hat = L * y  (L = lcm of denominators),
// so the hot loop is a handful of mpz multiply-adds per column.

#include "plfnet/matrix.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace plfnet {

enum class LPStatus {
  Optimal,       // exact minimum in `value`
  Infeasible,    // v not in span X; `dual` is a Farkas vector (y^T X = 0, y^T v > 0)
  StoppedBelow,  // objective reached the stop threshold; `value` is that objective, `p` feasible
  StoppedAbove,  // dual bound proved value above threshold; `value` is the bound, `dual` separates
};

struct LPResult {
  LPStatus status = LPStatus::Optimal;
  Rational value;                  // see status
  std::vector<Rational> p;         // signed coefficients, one per column (when primal available)
  std::vector<Rational> dual;      // |y^T x_j| <= 1 for all j and y^T v = value (Optimal / StoppedAbove)
  std::size_t pivots = 0;
};

struct LPStop {
  // Stop once the answer to "value <= threshold" (or "< threshold" when
  // strict) is known, instead of solving to optimality.
  std::optional<Rational> threshold;
  bool strict = false;
};

namespace detail {

inline Int lcm_of_denominators(const std::vector<Rational>& y) {
  Int l = 1;
  for (const auto& q : y) l = lcm(l, q.get_den());
  return l;
}

}  // namespace detail

class L1Membership {
 public:
  /// `columns` are the vectors x_j (all of dimension n). The object keeps a
  /// reference; the caller must keep `columns` alive and unchanged.
  L1Membership(const std::vector<IntVector>& columns, std::size_t n) : cols_(columns), n_(n) {}

  /// Solve for target v, ignoring column `exclude` (if any).
  LPResult solve(const IntVector& v, std::optional<std::size_t> exclude = std::nullopt, LPStop stop = {}) const {
    Solver s(*this, v, exclude, stop);
    return s.run();
  }

 private:
  const std::vector<IntVector>& cols_;
  std::size_t n_;

  // Column ids: [0, s) structural (sign carried separately), [s, s+n) artificial e_r.
  class Solver {
   public:
    Solver(const L1Membership& lp, const IntVector& v, std::optional<std::size_t> exclude, LPStop stop)
        : lp_(lp), v_(v), exclude_(exclude), stop_(std::move(stop)), n_(lp.n_), s_(lp.cols_.size()) {}

    LPResult run() {
      LPResult out;
      if (is_zero(v_)) {
        out.value = 0;
        out.p.assign(s_, Rational(0));
        out.dual.assign(n_, Rational(0));
        return out;
      }
      crash();
      bool need_phase1 = false;
      for (std::size_t r = 0; r < n_; ++r)
        if (is_artificial(basis_[r]) && sgn(xb_[r]) != 0) need_phase1 = true;

      if (need_phase1) {
        phase_ = 1;
        iterate(out);
        Rational infeas = 0;
        for (std::size_t r = 0; r < n_; ++r)
          if (is_artificial(basis_[r])) infeas += xb_[r];
        if (sgn(infeas) > 0) {
          out.status = LPStatus::Infeasible;
          out.value = infeas;
          out.dual = duals();
          return out;
        }
      }
      drive_out_artificials();
      phase_ = 2;
      if (iterate(out)) return out;
      out.status = LPStatus::Optimal;
      out.value = objective();
      out.p = primal();
      out.dual = duals();
      return out;
    }

   private:
    const L1Membership& lp_;
    const IntVector& v_;
    std::optional<std::size_t> exclude_;
    LPStop stop_;
    std::size_t n_, s_;
    int phase_ = 2;

    RationalMatrix binv_;           // n x n basis inverse
    std::vector<std::size_t> basis_;  // column id per row
    std::vector<int> sign_;           // sign of each basic structural column
    std::vector<Rational> xb_;        // basic values (all >= 0)
    std::vector<bool> in_basis_;

    bool is_artificial(std::size_t id) const { return id >= s_; }
    bool usable(std::size_t j) const { return !(exclude_ && *exclude_ == j); }

    // Entry r of the signed column.
    Int entry(std::size_t id, std::size_t r, int sign) const {
      if (is_artificial(id)) return (id - s_ == r) ? Int(1) : Int(0);
      return sign > 0 ? lp_.cols_[id][r] : Int(-lp_.cols_[id][r]);
    }

    // Greedy independent columns via elimination on X, completed by units.
    void crash() {
      RationalMatrix work(n_, 0);
      std::vector<std::size_t> chosen;
      std::vector<std::vector<Rational>> reduced;  // echelon rows of chosen columns
      std::vector<std::size_t> pivot_row;
      for (std::size_t j = 0; j < s_ && chosen.size() < n_; ++j) {
        if (!usable(j)) continue;
        std::vector<Rational> c(n_);
        for (std::size_t r = 0; r < n_; ++r) c[r] = Rational(lp_.cols_[j][r]);
        for (std::size_t k = 0; k < reduced.size(); ++k) {
          const Rational& f = c[pivot_row[k]];
          if (sgn(f) == 0) continue;
          Rational factor = f / reduced[k][pivot_row[k]];
          for (std::size_t r = 0; r < n_; ++r) c[r] -= factor * reduced[k][r];
        }
        std::size_t pr = n_;
        for (std::size_t r = 0; r < n_; ++r)
          if (sgn(c[r]) != 0) {
            pr = r;
            break;
          }
        if (pr == n_) continue;
        reduced.push_back(std::move(c));
        pivot_row.push_back(pr);
        chosen.push_back(j);
      }
      std::vector<bool> covered(n_, false);
      for (auto r : pivot_row) covered[r] = true;
      // Complete with unit artificials; rows not covered by an echelon pivot
      // are independent of the chosen columns.
      basis_ = chosen;
      for (std::size_t r = 0; r < n_; ++r)
        if (!covered[r]) basis_.push_back(s_ + r);

      IntMatrix bm(n_, n_);
      for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t r = 0; r < n_; ++r) bm(r, k) = entry(basis_[k], r, +1);
      auto inv = inverse(bm);
      binv_ = std::move(*inv);
      sign_.assign(n_, 1);
      in_basis_.assign(s_ + n_, false);
      for (auto id : basis_) in_basis_[id] = true;
      xb_ = mul_binv(v_);
      for (std::size_t r = 0; r < n_; ++r) {
        if (sgn(xb_[r]) >= 0) continue;
        // Flip sign of the basic column (its row of B^-1 negates too).
        sign_[r] = -1;
        xb_[r] = -xb_[r];
        for (std::size_t k = 0; k < n_; ++k) binv_(r, k) = -binv_(r, k);
      }
    }

    std::vector<Rational> mul_binv(const IntVector& a) const {
      std::vector<Rational> out(n_, Rational(0));
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t k = 0; k < n_; ++k)
          if (sgn(a[k]) != 0) out[r] += binv_(r, k) * a[k];
      return out;
    }

    Rational cost(std::size_t id) const {
      if (phase_ == 1) return is_artificial(id) ? Rational(1) : Rational(0);
      return is_artificial(id) ? Rational(0) : Rational(1);
    }

    std::vector<Rational> duals() const {
      std::vector<Rational> y(n_, Rational(0));
      for (std::size_t r = 0; r < n_; ++r) {
        Rational c = cost(basis_[r]);
        if (sgn(c) == 0) continue;
        for (std::size_t k = 0; k < n_; ++k) y[k] += c * binv_(r, k);
      }
      return y;
    }

    Rational objective() const {
      Rational z = 0;
      for (std::size_t r = 0; r < n_; ++r) z += cost(basis_[r]) * xb_[r];
      return z;
    }

    std::vector<Rational> primal() const {
      std::vector<Rational> p(s_, Rational(0));
      for (std::size_t r = 0; r < n_; ++r)
        if (!is_artificial(basis_[r])) p[basis_[r]] = sign_[r] > 0 ? xb_[r] : Rational(-xb_[r]);
      return p;
    }

    void pivot(std::size_t row, std::size_t id, int sign, const std::vector<Rational>& d) {
      const Rational piv = d[row];
      for (std::size_t k = 0; k < n_; ++k) binv_(row, k) /= piv;
      Rational xr = xb_[row] / piv;
      for (std::size_t r = 0; r < n_; ++r) {
        if (r == row || sgn(d[r]) == 0) continue;
        const Rational f = d[r];
        for (std::size_t k = 0; k < n_; ++k) binv_(r, k) -= f * binv_(row, k);
        xb_[r] -= f * xr;
      }
      xb_[row] = xr;
      in_basis_[basis_[row]] = false;
      basis_[row] = id;
      sign_[row] = sign;
      in_basis_[id] = true;
    }

    std::vector<Rational> direction(std::size_t id, int sign) const {
      IntVector a(n_);
      for (std::size_t r = 0; r < n_; ++r) a[r] = entry(id, r, sign);
      return mul_binv(a);
    }

    // After phase 1, replace zero-level artificials by structural columns
    // wherever the corresponding row of B^-1 X is nonzero.
    void drive_out_artificials() {
      for (std::size_t r = 0; r < n_; ++r) {
        if (!is_artificial(basis_[r])) continue;
        for (std::size_t j = 0; j < s_; ++j) {
          if (!usable(j) || in_basis_[j]) continue;
          Rational t = 0;
          for (std::size_t k = 0; k < n_; ++k) t += binv_(r, k) * lp_.cols_[j][k];
          if (sgn(t) == 0) continue;
          int sign = sgn(t) > 0 ? 1 : -1;
          pivot(r, j, sign, direction(j, sign));
          break;
        }
      }
    }

    // Returns true when an early stop filled `out`.
    bool iterate(LPResult& out) {
      std::size_t degenerate_streak = 0;
      const std::size_t bland_after = 2 * n_ + 10;
      for (;;) {
        if (phase_ == 2 && stop_.threshold) {
          Rational z = objective();
          bool below = stop_.strict ? z < *stop_.threshold : z <= *stop_.threshold;
          if (below) {
            out.status = LPStatus::StoppedBelow;
            out.value = z;
            out.p = primal();
            return true;
          }
        }
        std::vector<Rational> y = duals();
        Int l = detail::lcm_of_denominators(y);
        IntVector yh(n_);
        for (std::size_t k = 0; k < n_; ++k) yh[k] = y[k].get_num() * (l / y[k].get_den());

        // Reduced cost of (column j, sign) is cost - sign * y^T x_j. In
        // phase 2 cost is 1, so entering needs |y^T x_j| > 1; phase 1 needs > 0.
        const Int bar = phase_ == 2 ? l : Int(0);
        bool bland = degenerate_streak >= bland_after;
        std::optional<std::size_t> enter;
        int enter_sign = 1;
        Int best = 0;
        Int max_abs_t = 0;
        Int t;
        for (std::size_t j = 0; j < s_; ++j) {
          if (!usable(j)) continue;
          t = 0;
          const IntVector& x = lp_.cols_[j];
          for (std::size_t k = 0; k < n_; ++k)
            if (sgn(x[k]) != 0) mpz_addmul(t.get_mpz_t(), yh[k].get_mpz_t(), x[k].get_mpz_t());
          Int at = abs(t);
          if (at > max_abs_t) max_abs_t = at;
          if (in_basis_[j] || at <= bar) continue;
          if (bland) {
            if (!enter) {
              enter = j;
              enter_sign = sgn(t) > 0 ? 1 : -1;
            }
          } else if (!enter || at > best) {
            enter = j;
            enter_sign = sgn(t) > 0 ? 1 : -1;
            best = at;
          }
        }

        if (phase_ == 2 && stop_.threshold && sgn(max_abs_t) > 0) {
          // Weak duality: y' = y * l / max|y_hat^T x_j| is feasible when the
          // max exceeds l; otherwise y itself is. Its value bounds the optimum.
          Rational scale = max_abs_t > l ? Rational(l, max_abs_t) : Rational(1);
          Rational yv = 0;
          for (std::size_t k = 0; k < n_; ++k) yv += y[k] * v_[k];
          Rational lower = yv * scale;
          bool above = stop_.strict ? lower >= *stop_.threshold : lower > *stop_.threshold;
          if (above) {
            out.status = LPStatus::StoppedAbove;
            out.value = lower;
            for (auto& yk : y) yk *= scale;
            out.dual = std::move(y);
            return true;
          }
        }
        if (!enter) return false;

        std::vector<Rational> d = direction(*enter, enter_sign);
        std::optional<std::size_t> leave;
        Rational best_ratio;
        for (std::size_t r = 0; r < n_; ++r) {
          if (sgn(d[r]) <= 0) continue;
          Rational ratio = xb_[r] / d[r];
          if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leave])) {
            leave = r;
            best_ratio = ratio;
          }
        }
        // Objective is bounded below by 0, so a ray cannot exist.
        if (!leave) throw std::logic_error("L1 LP: unbounded direction");
        degenerate_streak = sgn(best_ratio) == 0 ? degenerate_streak + 1 : 0;
        pivot(*leave, *enter, enter_sign, d);
        ++out.pivots;
      }
    }
  };
};

/// One-shot membership value min{||p||_1 : X p = v}; nullopt if infeasible.
inline std::optional<Rational> l1_membership_value(const std::vector<IntVector>& columns, const IntVector& v) {
  L1Membership lp(columns, v.size());
  LPResult r = lp.solve(v);
  if (r.status == LPStatus::Infeasible) return std::nullopt;
  return r.value;
}

}  // namespace plfnet
