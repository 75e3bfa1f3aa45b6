#ifndef HELION_GAMMA_HPP
#define HELION_GAMMA_HPP

// Closed-form primitive integrals for Hylleraas matrix elements.
//
// radial_integral(a, b, c; as, bs) =
//   int_0^inf dr1 int_0^inf dr2 int_{|r1-r2|}^{r1+r2} dr12
//     r1^{a+1} r2^{b+1} r12^{c+1} exp(-as*r1 - bs*r2)
//
// Everything reduces to the nested integral
//   V(A, B; x, y) = int_0^inf r1^A e^{-x r1} int_0^{r1} r2^B e^{-y r2} dr2 dr1
// which satisfies an all-positive (cancellation-free) recursion.

#include "helion/real.hpp"

#include <map>
#include <utility>
#include <vector>

namespace helion {

namespace detail {

class FactorialCache {
 public:
  // returns by value: a reference into vals_ would dangle when a later call
  // in the same expression grows the vector
  Real operator()(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative integer");
    while (static_cast<int>(vals_.size()) <= n) {
      if (vals_.empty())
        vals_.push_back(Real(1));
      else
        vals_.push_back(vals_.back() * static_cast<int>(vals_.size()));
    }
    return vals_[n];
  }

 private:
  std::vector<Real> vals_;
};

}  // namespace detail

// Table of V(A, B; x, y) for fixed positive exponents (x, y).
// V(0,B) = B! / (x (x+y)^{B+1});  V(A,B) = (A/x) V(A-1,B) + (A+B)! / (x (x+y)^{A+B+1}).
class NestedExpTable {
 public:
  NestedExpTable(Real x, Real y, int a_max, int b_max)
      : x_(std::move(x)), y_(std::move(y)), amax_(a_max), bmax_(b_max) {
    if (!(x_ > 0 && y_ > 0)) throw DivergentIntegral("nonpositive exponential parameter");
    detail::FactorialCache fact;
    const Real s = x_ + y_;
    std::vector<Real> spow(a_max + b_max + 2);  // (x+y)^{-(n+1)}
    Real inv = 1 / s;
    Real acc = inv;
    for (int n = 0; n <= a_max + b_max + 1; ++n, acc *= inv) spow[n] = acc;

    v_.assign(static_cast<size_t>(a_max + 1) * (b_max + 1), Real(0));
    for (int B = 0; B <= b_max; ++B) {
      at(0, B) = fact(B) / x_ * spow[B];
      for (int A = 1; A <= a_max; ++A)
        at(A, B) = (Real(A) / x_) * at(A - 1, B) + fact(A + B) / x_ * spow[A + B];
    }
  }

  const Real& operator()(int A, int B) const {
    if (A < 0 || B < 0 || A > amax_ || B > bmax_) throw std::out_of_range("NestedExpTable");
    return v_[static_cast<size_t>(A) * (bmax_ + 1) + B];
  }

 private:
  Real& at(int A, int B) { return v_[static_cast<size_t>(A) * (bmax_ + 1) + B]; }
  Real x_, y_;
  int amax_, bmax_;
  std::vector<Real> v_;
};

// Cached evaluator of the volume-reduced Hylleraas integral for one pair of
// exponential parameters. Indices: a, b >= -1 and c >= -1.
class GammaTable {
 public:
  GammaTable(Real alpha, Real beta, int max_power)
      : alpha_(std::move(alpha)),
        beta_(std::move(beta)),
        vxy_(alpha_, beta_, 2 * max_power + 4, 2 * max_power + 4),
        vyx_(beta_, alpha_, 2 * max_power + 4, 2 * max_power + 4) {
    binom_rows_.resize(2 * max_power + 6);
  }

  // Gamma(a, b, c) with the measure absorbed: integrand powers are
  // r1^{a+1} r2^{b+1} r12^{c+1}.
  Real operator()(int a, int b, int c) const {
    if (c < -1) throw DivergentIntegral("r12 power below -1");
    if (a < -1 || b < -1) throw DivergentIntegral("radial power below -1");
    const int p = a + 1, q = b + 1, s = c + 1;
    // inner r12 integral expanded binomially over the odd powers
    const auto& row = binom_row(s + 1);
    Real acc = 0;
    for (int j = 1; j <= s + 1; j += 2)
      acc += row[j] * (vxy_(p + s + 1 - j, q + j) + vyx_(q + s + 1 - j, p + j));
    return 2 * acc / (s + 1);
  }

 private:
  const std::vector<Real>& binom_row(int n) const {
    auto& row = binom_rows_.at(n);
    if (row.empty()) {
      row.resize(n + 1);
      row[0] = 1;
      for (int j = 1; j <= n; ++j) row[j] = row[j - 1] * (n - j + 1) / j;
    }
    return row;
  }

  Real alpha_, beta_;
  NestedExpTable vxy_, vyx_;
  mutable std::vector<std::vector<Real>> binom_rows_;
};

// One-shot form of the primitive integral (tests, small callers).
inline Real radial_integral(int a, int b, int c, const Real& alpha_s, const Real& beta_s) {
  if (!(alpha_s > 0 && beta_s > 0)) throw DivergentIntegral("nonpositive exponential parameter");
  int m = std::max({a, b, c, 0});
  GammaTable t(alpha_s, beta_s, m + 2);
  return t(a, b, c);
}

// Triangle-domain exponential moments
//   G(A, B; a, b) = int_0^inf dy int_0^y dx  x^A y^B e^{-a x - b y}
// for A >= 0 and possibly negative B (convergent iff A + B > -2).
// Series: G = A!/a^{A+1} * H(A,B),  H(A,B) = sum_{i>A} a^i/i! (B+i)!/(a+b)^{B+i+1},
// all terms positive; filled by one tail series per B plus a downward sweep in A.
class TriangleMomentTable {
 public:
  TriangleMomentTable(Real a, Real b, int a_max, int b_min, int b_max)
      : a_(std::move(a)), b_(std::move(b)), amax_(a_max), bmin_(b_min), bmax_(b_max) {
    if (!(a_ > 0 && b_ > 0)) throw DivergentIntegral("nonpositive exponential parameter");
    const Real ratio_guard = a_ / (a_ + b_);
    const Real eps = pow10(-static_cast<long>(current_digits()) - 6);

    detail::FactorialCache fact;
    g_.assign(static_cast<size_t>(amax_ + 1) * (bmax_ - bmin_ + 1), Real(0));
    const Real s = a_ + b_;

    for (int B = bmin_; B <= bmax_; ++B) {
      const int a_low = std::max(0, -B - 1);  // validity: A + B + 1 >= 0
      // tail series at A = amax_
      int i0 = amax_ + 1;
      Real term = boost::multiprecision::pow(a_, i0) / fact(i0) * fact(B + i0) /
                  boost::multiprecision::pow(s, B + i0 + 1);
      Real h = term;
      for (int i = i0;; ++i) {
        term *= a_ / (i + 1) * (B + i + 1) / s;
        h += term;
        if (term < eps * h) break;
        if (i > i0 + 100000) throw NoConvergence("triangle moment series stalled");
      }
      at(amax_, B) = h;
      for (int A = amax_; A > a_low; --A)
        at(A - 1, B) = at(A, B) + boost::multiprecision::pow(a_, A) / fact(A) * fact(B + A) /
                                      boost::multiprecision::pow(s, B + A + 1);
      // convert H -> G
      for (int A = a_low; A <= amax_; ++A)
        at(A, B) *= fact(A) / boost::multiprecision::pow(a_, A + 1);
    }
    (void)ratio_guard;
  }

  const Real& operator()(int A, int B) const {
    if (A < 0 || A > amax_ || B < bmin_ || B > bmax_ || A + B + 1 < 0)
      throw std::out_of_range("TriangleMomentTable");
    return g_[static_cast<size_t>(A) * (bmax_ - bmin_ + 1) + (B - bmin_)];
  }

  int a_max() const { return amax_; }
  int b_min() const { return bmin_; }
  int b_max() const { return bmax_; }

 private:
  Real& at(int A, int B) { return g_[static_cast<size_t>(A) * (bmax_ - bmin_ + 1) + (B - bmin_)]; }
  Real a_, b_;
  int amax_, bmin_, bmax_;
  std::vector<Real> g_;
};

}  // namespace helion

#endif  // HELION_GAMMA_HPP
