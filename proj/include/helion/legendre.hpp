#ifndef HELION_LEGENDRE_HPP
#define HELION_LEGENDRE_HPP

// Legendre expansion of powers of the inter-electronic distance:
//   r12^c = sum_l g_l^{(c)}(r1, r2) P_l(cos theta),
//   g_l^{(c)} = (2l+1)/2 * int_{-1}^{1} (r1^2 + r2^2 - 2 r1 r2 t)^{c/2} P_l(t) dt.
//
// Two exact evaluation routes are provided:
//  * substitution to the r12 variable, where the integrand is a polynomial,
//    integrated with a Gauss-Legendre rule of sufficient order (exact for
//    every integer c >= -1);
//  * the finite polynomial expansion in t, available for even c.
// On each side of the r1 = r2 diagonal the coefficient collapses to a short
// terminating sum  g_l^{(c)} = sum_j d_j r<^{l+2j} r>^{c-l-2j};  the d_j are
// state-independent rationals recovered once per (c, l) and cached, which is
// what the fast evaluators and the analytic projection use.

#include "helion/real.hpp"

#include <cmath>
#include <memory>
#include <vector>

namespace helion {

// Legendre P_0..P_lmax at one point.
inline void legendre_all(const Real& t, int lmax, std::vector<Real>& out) {
  out.resize(lmax + 1);
  out[0] = 1;
  if (lmax == 0) return;
  out[1] = t;
  for (int l = 1; l < lmax; ++l) out[l + 1] = ((2 * l + 1) * t * out[l] - l * out[l - 1]) / (l + 1);
}

// Gauss-Legendre rule on [-1, 1] at working precision.
struct GaussLegendre {
  std::vector<Real> x, w;

  explicit GaussLegendre(int n) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      // Newton from the Chebyshev-like initial guess
      Real t = Real(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
      Real p0, p1, dp;
      for (int it = 0; it < 200; ++it) {
        p0 = 1;
        p1 = t;
        for (int l = 1; l < n; ++l) {
          Real p2 = ((2 * l + 1) * t * p1 - l * p0) / (l + 1);
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1);
        Real dt = p1 / dp;
        t -= dt;
        if (abs(dt) < pow10(-static_cast<long>(current_digits()) - 2)) break;
      }
      x[i] = t;
      w[i] = 2 / ((1 - t * t) * dp * dp);
    }
  }
};

namespace detail {

// int_{-1}^{1} t^u P_l(t) dt: zero unless u >= l with u - l even, else
// 2 u! / (2^j j! (u+l+1)!!) with j = (u-l)/2.
inline Real monomial_legendre_integral(int u, int l) {
  if (u < l || (u - l) % 2) return Real(0);
  int j = (u - l) / 2;
  Real num = 2;
  for (int i = 2; i <= u; ++i) num *= i;  // u!
  Real den = 1;
  for (int i = 0; i < j; ++i) den *= 2;  // 2^j
  for (int i = 2; i <= j; ++i) den *= i; // j!
  for (int i = u + l + 1; i >= 2; i -= 2) den *= i;  // (u+l+1)!!
  return num / den;
}

}  // namespace detail

// Exact route valid for every integer c >= -1: substitute r12 for t, giving a
// polynomial integrand of degree c + 1 + 2l.
inline Real g_coeff_exact(int c, int l, const Real& r1, const Real& r2, const GaussLegendre& rule) {
  if (c < -1) throw DivergentIntegral("r12 power below -1");
  const Real lo = abs(r1 - r2), hi = r1 + r2;
  const Real half_len = (hi - lo) / 2, mid = (hi + lo) / 2;
  const Real inv2 = 1 / (2 * r1 * r2);
  const Real rr = r1 * r1 + r2 * r2;
  Real acc = 0;
  std::vector<Real> pl;
  for (size_t i = 0; i < rule.x.size(); ++i) {
    Real r = mid + half_len * rule.x[i];
    Real t = (rr - r * r) * inv2;
    legendre_all(t, l, pl);
    Real rp = boost::multiprecision::pow(r, c + 1);
    acc += rule.w[i] * rp * pl[l];
  }
  return (2 * l + 1) * inv2 * half_len * acc;
}

inline int g_rule_order(int c, int l) { return (c + 2 + 2 * l) / 2 + 2; }

// Finite expansion route, even c only.
inline Real g_coeff_even_poly(int c, int l, const Real& r1, const Real& r2) {
  if (c < 0 || c % 2) throw std::invalid_argument("even-power route needs even c >= 0");
  if (l > c / 2) return Real(0);
  const int h = c / 2;
  const Real rr = r1 * r1 + r2 * r2;
  const Real xy2 = -2 * r1 * r2;
  // (rr + xy2 t)^h expanded binomially, each t^u integrated against P_l
  Real acc = 0;
  Real binom = 1;
  for (int u = 0; u <= h; ++u) {
    if (u) binom = binom * (h - u + 1) / u;
    Real coef = binom * boost::multiprecision::pow(rr, h - u) * boost::multiprecision::pow(xy2, u);
    acc += coef * detail::monomial_legendre_integral(u, l);
  }
  return (2 * l + 1) / Real(2) * acc;
}

// Spec-level operation: one Legendre channel coefficient of r12^c.
inline Real r12_legendre_coeff(int c, int l, const Real& r1, const Real& r2) {
  GaussLegendre rule(g_rule_order(c, l));
  return g_coeff_exact(c, l, r1, r2, rule);
}

// Terminating side-form coefficients: on r< <= r>,
//   g_l^{(c)}(r<, r>) = sum_{j=0}^{Jc} d[j] r<^{l+2j} r>^{c-l-2j},  Jc = floor((c+1)/2).
// The d[j] are recovered from exact samples and verified at a holdout point.
class ChannelCoeffTable {
 public:
  ChannelCoeffTable(int c_max, int l_max) : cmax_(c_max), lmax_(l_max) {
    PrecisionScope scope(current_digits() + 30 + static_cast<unsigned>(l_max));
    d_.resize(static_cast<size_t>(c_max + 1) * (l_max + 1));
    for (int c = 0; c <= c_max; ++c) {
      GaussLegendre rule(g_rule_order(c, l_max));
      for (int l = 0; l <= l_max; ++l) fit(c, l, rule);
    }
  }

  int c_max() const { return cmax_; }
  int l_max() const { return lmax_; }

  const std::vector<Real>& coeffs(int c, int l) const {
    return d_[static_cast<size_t>(c) * (lmax_ + 1) + l];
  }

  // Stable pointwise evaluation through the side form.
  Real evaluate(int c, int l, const Real& r1, const Real& r2) const {
    const Real& lo = r1 <= r2 ? r1 : r2;
    const Real& hi = r1 <= r2 ? r2 : r1;
    const auto& d = coeffs(c, l);
    if (d.empty()) return Real(0);
    const Real lo2 = lo * lo, hi2 = hi * hi;
    Real lp = boost::multiprecision::pow(lo, l);
    Real hp = boost::multiprecision::pow(hi, c - l);
    Real acc = 0;
    for (size_t j = 0; j < d.size(); ++j) {
      acc += d[j] * lp * hp;
      lp *= lo2;
      hp /= hi2;
    }
    return acc;
  }

 private:
  void fit(int c, int l, const GaussLegendre& rule) {
    auto& d = d_[static_cast<size_t>(c) * (lmax_ + 1) + l];
    if (c % 2 == 0 && l > c / 2) {
      d.clear();  // exact zero channel
      return;
    }
    const int J = (c + 1) / 2;
    const int npts = J + 1;
    // sample ratios in [0.55, 0.95]; y = 1 so g = sum_j d_j x^{l+2j}
    std::vector<Real> xs(npts), gs(npts);
    for (int s = 0; s < npts; ++s) {
      xs[s] = Real(55) / 100 + Real(40) / 100 * s / std::max(1, npts - 1);
      gs[s] = g_coeff_exact(c, l, xs[s], Real(1), rule) / boost::multiprecision::pow(xs[s], l);
    }
    // Vandermonde solve in x^2 by Gaussian elimination
    std::vector<std::vector<Real>> A(npts, std::vector<Real>(npts + 1));
    for (int s = 0; s < npts; ++s) {
      Real x2 = xs[s] * xs[s], p = 1;
      for (int j = 0; j < npts; ++j, p *= x2) A[s][j] = p;
      A[s][npts] = gs[s];
    }
    for (int col = 0; col < npts; ++col) {
      int piv = col;
      for (int r = col + 1; r < npts; ++r)
        if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
      std::swap(A[col], A[piv]);
      for (int r = 0; r < npts; ++r) {
        if (r == col) continue;
        Real f = A[r][col] / A[col][col];
        for (int cc = col; cc <= npts; ++cc) A[r][cc] -= f * A[col][cc];
      }
    }
    d.resize(npts);
    for (int j = 0; j < npts; ++j) d[j] = A[j][npts] / A[j][j];

    // holdout verification: the terminating form must reproduce an
    // independent sample or the expansion assumption is broken
    Real xh = Real(3) / 4 + Real(1) / 64;
    Real ref = g_coeff_exact(c, l, xh, Real(1), rule);
    Real got = 0;
    {
      Real p = boost::multiprecision::pow(xh, l);
      for (int j = 0; j < npts; ++j, p *= xh * xh) got += d[j] * p;
    }
    Real scale = abs(ref) > 1 ? abs(ref) : Real(1);
    if (abs(got - ref) > scale * pow10(-static_cast<long>(current_digits()) + 12))
      throw NoConvergence("channel coefficient table failed holdout check");
  }

  int cmax_, lmax_;
  std::vector<std::vector<Real>> d_;  // [(c, l)] -> d_j
};

// Process-wide cache (tables are state independent; rebuilt if precision or
// requested sizes grow).
inline const ChannelCoeffTable& channel_coeff_table(int c_max, int l_max) {
  static std::unique_ptr<ChannelCoeffTable> cache;
  static unsigned cache_digits = 0;
  if (!cache || cache->c_max() < c_max || cache->l_max() < l_max ||
      cache_digits < current_digits()) {
    cache = std::make_unique<ChannelCoeffTable>(std::max(c_max, cache ? cache->c_max() : 0),
                                                std::max(l_max, cache ? cache->l_max() : 0));
    cache_digits = current_digits();
  }
  return *cache;
}

}  // namespace helion

#endif  // HELION_LEGENDRE_HPP
