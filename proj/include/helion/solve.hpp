#ifndef HELION_SOLVE_HPP
#define HELION_SOLVE_HPP

#include "helion/hamiltonian.hpp"
#include "helion/linalg.hpp"

#include <functional>
#include <utility>

namespace helion {

struct StateSolution {
  BasisSpec basis;
  int root_index = 1;  // 1 = lowest root of this symmetry
  Real energy = 0;     // hartree
  Vector coefficients; // C_kmn, ordered as basis.terms
  Real norm_constant = 1;
  bool include_repulsion = true;
};

// Variational solve for the root_index-th state of the given symmetry.
inline StateSolution solve_state(const BasisSpec& basis, int root_index,
                                 const PrecisionConfig& cfg, bool include_repulsion = true) {
  if (root_index < 1 || root_index > basis.size())
    throw std::invalid_argument("root_index out of range");
  auto hs = assemble_matrices(basis, include_repulsion);
  auto roots = solve_generalized_symmetric(hs.H, hs.S, root_index, cfg);
  StateSolution st;
  st.basis = basis;
  st.root_index = root_index;
  st.energy = roots.back().value;
  st.coefficients = std::move(roots.back().vector);
  st.norm_constant = 1;  // c^T S c = 1 already (S carries the angular factor)
  st.include_repulsion = include_repulsion;
  return st;
}

// Rescale so <Psi|Psi> = 1 using the overlap matrix; idempotent.
inline StateSolution normalize(StateSolution st) {
  auto hs = assemble_matrices(st.basis, st.include_repulsion);
  Real n2 = (st.coefficients.transpose() * (hs.S.mat() * st.coefficients))(0, 0);
  n2 *= st.norm_constant * st.norm_constant;
  if (!(n2 > 0)) throw ZeroNorm("state has zero norm");
  st.norm_constant /= sqrt(n2);
  return st;
}

struct OptimizedExponents {
  Real alpha, beta;
  StateSolution solution;
};

namespace detail {

// Derivative-free Nelder-Mead on the plane (log alpha, log beta).
template <typename F>
std::pair<std::array<Real, 2>, Real> nelder_mead2(F f, std::array<Real, 2> x0, Real step,
                                                  int max_iter, const Real& ftol) {
  std::array<std::array<Real, 2>, 3> xs{x0, x0, x0};
  xs[1][0] += step;
  xs[2][1] += step;
  std::array<Real, 3> fs{f(xs[0]), f(xs[1]), f(xs[2])};
  auto order = [&] {
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (fs[b] < fs[a]) {
          std::swap(fs[a], fs[b]);
          std::swap(xs[a], xs[b]);
        }
  };
  for (int it = 0; it < max_iter; ++it) {
    order();
    if (fs[2] - fs[0] < ftol) break;
    std::array<Real, 2> cen{(xs[0][0] + xs[1][0]) / 2, (xs[0][1] + xs[1][1]) / 2};
    auto mix = [&](const Real& c) {
      return std::array<Real, 2>{cen[0] + c * (cen[0] - xs[2][0]),
                                 cen[1] + c * (cen[1] - xs[2][1])};
    };
    auto xr = mix(Real(1));
    Real fr = f(xr);
    if (fr < fs[0]) {
      auto xe = mix(Real(2));
      Real fe = f(xe);
      if (fe < fr) {
        xs[2] = xe;
        fs[2] = fe;
      } else {
        xs[2] = xr;
        fs[2] = fr;
      }
    } else if (fr < fs[1]) {
      xs[2] = xr;
      fs[2] = fr;
    } else {
      auto xc = mix(Real(1) / 2 * (fr < fs[2] ? 1 : -1));
      Real fc = f(xc);
      if (fc < std::min(fr, fs[2])) {
        xs[2] = xc;
        fs[2] = fc;
      } else {  // shrink toward best
        for (int a = 1; a < 3; ++a) {
          xs[a][0] = (xs[a][0] + xs[0][0]) / 2;
          xs[a][1] = (xs[a][1] + xs[0][1]) / 2;
          fs[a] = f(xs[a]);
        }
      }
    }
  }
  order();
  return {xs[0], fs[0]};
}

}  // namespace detail

// Locate exponents minimizing the root_index-th eigenvalue: coarse log-grid
// scan, then simplex refinement. n_eff sets the lower edge of the beta scan
// for Rydberg roots. equal_exponents restricts to the alpha = beta diagonal.
inline OptimizedExponents optimize_exponents(const BasisSpec& basis_template, int root_index,
                                             const PrecisionConfig& cfg, int n_eff = 1,
                                             bool equal_exponents = false,
                                             bool include_repulsion = true) {
  const Real Z = basis_template.Z;
  auto energy_at = [&](const Real& alpha, const Real& beta) -> Real {
    if (!(alpha > 0 && beta > 0)) return Real(1e30);
    try {
      auto b = BasisSpec::make(Z, basis_template.omega, basis_template.spin, alpha, beta);
      if (root_index > b.size()) return Real(1e30);
      return solve_state(b, root_index, cfg, include_repulsion).energy;
    } catch (const NotPositiveDefinite&) {
      return Real(1e30);
    }
  };

  // coarse scan
  Real best_e = Real(1e30), best_a = Z, best_b = Z;
  const int na = 5, nb = 7;
  Real a_lo = Z / 2, a_hi = 3 * Z / 2;
  Real b_lo = Z / (2 * n_eff), b_hi = 2 * Z;
  for (int ia = 0; ia < na; ++ia) {
    Real a = a_lo * boost::multiprecision::pow(a_hi / a_lo, Real(ia) / (na - 1));
    for (int ib = 0; ib < nb; ++ib) {
      Real b = b_lo * boost::multiprecision::pow(b_hi / b_lo, Real(ib) / (nb - 1));
      if (equal_exponents && ib != 0) continue;
      Real bb = equal_exponents ? a : b;
      Real e = energy_at(a, bb);
      if (e < best_e) {
        best_e = e;
        best_a = a;
        best_b = bb;
      }
    }
  }
  if (best_e >= Real(1e29)) throw NoConvergence("exponent scan found no solvable point");

  const Real ftol = pow10(-static_cast<long>(cfg.working_digits) + 8);
  if (equal_exponents) {
    // 1-d golden-section refinement on log alpha
    Real lo = log(best_a) - Real(1) / 4, hi = log(best_a) + Real(1) / 4;
    const Real gr = (sqrt(Real(5)) - 1) / 2;
    Real c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    Real fc = energy_at(exp(c), exp(c)), fd = energy_at(exp(d), exp(d));
    for (int it = 0; it < 120 && hi - lo > Real("1e-9"); ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = energy_at(exp(c), exp(c));
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = energy_at(exp(d), exp(d));
      }
    }
    Real a = exp((lo + hi) / 2);
    OptimizedExponents out{a, a, {}};
    auto b = BasisSpec::make(Z, basis_template.omega, basis_template.spin, a, a);
    out.solution = solve_state(b, root_index, cfg, include_repulsion);
    return out;
  }

  auto [xy, fe] =
      detail::nelder_mead2([&](const std::array<Real, 2>& x) { return energy_at(exp(x[0]), exp(x[1])); },
                           {log(best_a), log(best_b)}, Real(1) / 8, 200, ftol);
  (void)fe;
  OptimizedExponents out{exp(xy[0]), exp(xy[1]), {}};
  auto b = BasisSpec::make(Z, basis_template.omega, basis_template.spin, out.alpha, out.beta);
  out.solution = solve_state(b, root_index, cfg, include_repulsion);
  return out;
}

}  // namespace helion

#endif  // HELION_SOLVE_HPP
