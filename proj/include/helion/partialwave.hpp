#ifndef HELION_PARTIALWAVE_HPP
#define HELION_PARTIALWAVE_HPP

// Legendre-channel decomposition of a solved two-electron S state:
//   Psi(r1, r2) = sum_l [f_l(r1, r2) / (r1 r2)] P_l(cos theta12),
//   f_l(x, y) = N x y sum_terms C_kmn [e^{-ax-by} x^m y^n + s e^{-bx-ay} x^n y^m] g_l^{(k)}(x, y).
// With the addition theorem, <Psi|Psi> = sum_l (4 pi)^2/(2l+1) * iint f_l^2,
// which defines the per-channel weight (channel_norm) and fixes all downstream
// occupancy constants.

#include "helion/legendre.hpp"
#include "helion/solve.hpp"

#include <boost/math/constants/constants.hpp>

#include <vector>

namespace helion {

struct ExpansionPolicy {
  int l_max = 40;    // channel truncation
  int gl_order = 0;  // quadrature order for norm integrals; 0 = auto

  int order_for(int omega) const {
    int floor_order = 2 * l_max + omega + 4;
    return gl_order > floor_order ? gl_order : floor_order;
  }
  void validate(int omega) const {
    if (l_max < 0) throw std::invalid_argument("l_max must be >= 0");
    if (gl_order != 0 && gl_order < 2 * l_max + omega + 4)
      throw std::invalid_argument("gl_order below exactness floor");
  }
};

// One Legendre channel of a state; evaluator is pure.
class PartialWaveChannel {
 public:
  PartialWaveChannel(StateSolution state, int l) : state_(std::move(state)), l_(l) {
    if (l < 0) throw std::invalid_argument("l must be >= 0");
  }

  int l() const { return l_; }
  const StateSolution& state() const { return state_; }
  Spin spin() const { return state_.basis.spin; }

  // f_l(x, y); antisymmetric under swap for triplet states.
  Real evaluate(const Real& x, const Real& y) const {
    const auto& b = state_.basis;
    const auto& tab = channel_coeff_table(b.omega, l_);
    const int sigma = spin_sign(b.spin);

    // g_l^{(k)} once per power of r12
    std::vector<Real> g(b.omega + 1);
    std::vector<bool> have(b.omega + 1, false);

    const Real e_dir = exp(-b.alpha * x - b.beta * y);
    const Real e_swp = exp(-b.beta * x - b.alpha * y);
    Real acc = 0;
    for (int i = 0; i < b.size(); ++i) {
      const auto& t = b.terms[i];
      if (!have[t.k]) {
        g[t.k] = tab.evaluate(t.k, l_, x, y);
        have[t.k] = true;
      }
      if (g[t.k] == 0) continue;
      Real w = e_dir * boost::multiprecision::pow(x, t.m) * boost::multiprecision::pow(y, t.n) +
               sigma * e_swp * boost::multiprecision::pow(x, t.n) *
                   boost::multiprecision::pow(y, t.m);
      acc += state_.coefficients(i) * w * g[t.k];
    }
    return state_.norm_constant * x * y * acc;
  }

  Real operator()(const Real& x, const Real& y) const { return evaluate(x, y); }

 private:
  StateSolution state_;
  int l_;
};

inline PartialWaveChannel build_channel(const StateSolution& state, int l,
                                        const ExpansionPolicy& policy) {
  policy.validate(state.basis.omega);
  if (l > policy.l_max) throw std::invalid_argument("l exceeds policy.l_max");
  // warm the coefficient cache up to the policy's full range so evaluators
  // never trigger a rebuild mid-use
  channel_coeff_table(state.basis.omega, policy.l_max);
  return PartialWaveChannel(state, l);
}

namespace detail {

// Dense polynomial accumulator over y powers for one exponential group.
struct ExpGroup {
  Real rate;               // e^{-rate * y}
  std::vector<Real> poly;  // coefficient of y^p
};

// f_l(u y, y) for fixed u <= 1 as a sum of exponential groups with polynomial
// y parts; the per-term y degree is 2 + m + n + k regardless of l.
inline void channel_on_ray(const PartialWaveChannel& ch, const Real& u,
                           std::vector<ExpGroup>& groups) {
  const auto& st = ch.state();
  const auto& b = st.basis;
  const int l = ch.l();
  const int sigma = spin_sign(b.spin);
  const auto& tab = channel_coeff_table(b.omega, l);

  const int deg = b.omega + 2;
  groups.assign(2, ExpGroup{});
  groups[0].rate = b.alpha * u + b.beta;
  groups[1].rate = b.beta * u + b.alpha;
  groups[0].poly.assign(deg + 1, Real(0));
  groups[1].poly.assign(deg + 1, Real(0));

  // u powers cache
  std::vector<Real> upow(2 * b.omega + l + 4);
  upow[0] = 1;
  for (size_t i = 1; i < upow.size(); ++i) upow[i] = upow[i - 1] * u;

  for (int i = 0; i < b.size(); ++i) {
    const auto& t = b.terms[i];
    const auto& d = tab.coeffs(t.k, l);
    if (d.empty()) continue;
    const Real c = st.norm_constant * st.coefficients(i);
    const int p = 2 + t.m + t.n + t.k;  // common y power
    Real s1 = 0, s2 = 0;
    for (size_t j = 0; j < d.size(); ++j) {
      s1 += d[j] * upow[1 + t.m + l + 2 * j];
      s2 += d[j] * upow[1 + t.n + l + 2 * j];
    }
    groups[0].poly[p] += c * s1;
    groups[1].poly[p] += sigma * c * s2;
  }
}

}  // namespace detail

// (4 pi)^2/(2l+1) * iint_{x,y>0} f_l(x, y)^2 dx dy; the weight the channel
// carries in <Psi|Psi>. The x < y triangle is mapped to (u, y), the y integral
// done in closed form per exponential-group pair, and the u integral by
// Gauss-Legendre with a refinement certificate.
inline Real channel_norm(const PartialWaveChannel& channel, const ExpansionPolicy& policy) {
  policy.validate(channel.state().basis.omega);

  detail::FactorialCache fact;
  std::vector<detail::ExpGroup> groups;

  auto integrand = [&](const Real& u) {
    detail::channel_on_ray(channel, u, groups);
    Real acc = 0;
    for (size_t g = 0; g < groups.size(); ++g)
      for (size_t h = 0; h < groups.size(); ++h) {
        const Real c = groups[g].rate + groups[h].rate;
        const auto& P = groups[g].poly;
        const auto& Q = groups[h].poly;
        // int_0^inf y P(y) Q(y) e^{-c y} dy
        Real inv = 1 / c;
        for (size_t p = 0; p < P.size(); ++p) {
          if (P[p] == 0) continue;
          for (size_t q = 0; q < Q.size(); ++q) {
            if (Q[q] == 0) continue;
            int n = static_cast<int>(p + q) + 1;
            acc += P[p] * Q[q] * fact(n) * boost::multiprecision::pow(inv, n + 1);
          }
        }
      }
    return acc;
  };

  const int base = std::max(24, policy.order_for(channel.state().basis.omega) / 2);
  auto composite = [&](int panels) {
    GaussLegendre rule(base);
    Real total = 0;
    for (int s = 0; s < panels; ++s) {
      Real a = Real(s) / panels, b = Real(s + 1) / panels;
      Real half = (b - a) / 2, mid = (a + b) / 2;
      for (size_t i = 0; i < rule.x.size(); ++i) total += rule.w[i] * integrand(mid + half * rule.x[i]);
      // fold the half-length factor at the end
    }
    return total / (2 * panels);
  };

  Real v1 = composite(2), v2 = composite(4);
  Real scale = abs(v2) > 1 ? abs(v2) : Real(1);
  if (abs(v2 - v1) > scale * pow10(-static_cast<long>(current_digits()) + 8)) {
    Real v3 = composite(8);
    if (abs(v3 - v2) > scale * pow10(-static_cast<long>(current_digits()) + 8))
      throw QuadratureNotConverged("channel norm did not converge under panel refinement");
    v2 = v3;
  }

  const Real four_pi = 4 * boost::math::constants::pi<Real>();
  return four_pi * four_pi / (2 * channel.l() + 1) * 2 * v2;
}

}  // namespace helion

#endif  // HELION_PARTIALWAVE_HPP
