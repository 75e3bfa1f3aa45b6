#ifndef HELION_HAMILTONIAN_HPP
#define HELION_HAMILTONIAN_HPP

// Overlap / Hamiltonian assembly over symmetrized Hylleraas terms.
//
// Kinetic energy is evaluated in (r1, r2, r12) coordinates through the
// gradient-gradient (integration-by-parts) form, so every matrix element is a
// finite combination of radial_integral values and the assembled matrices are
// symmetric by construction.

#include "helion/basis.hpp"
#include "helion/gamma.hpp"
#include "helion/linalg.hpp"
#include "helion/real.hpp"

#include <boost/math/constants/constants.hpp>

namespace helion {

namespace detail {

struct Primitive {
  // exp(-a r1 - b r2) r1^m r2^n r12^k
  Real a, b;
  int k, m, n;
};

struct ElementParts {
  Real s, t, v;  // overlap, kinetic, potential (per primitive pair, no angular factor)
};

// One primitive pair against the Gamma table built for (u.a + v.a, u.b + v.b).
inline ElementParts primitive_pair(const Primitive& u, const Primitive& v, const GammaTable& G,
                                   const Real& Z, bool include_repulsion) {
  const int M = u.m + v.m, N = u.n + v.n, K = u.k + v.k;
  ElementParts r;
  r.s = G(M, N, K);

  r.v = -Z * (G(M - 1, N, K) + G(M, N - 1, K));
  if (include_repulsion) r.v += G(M, N, K - 1);

  // grad1 . grad1
  Real t = 0;
  if (u.m && v.m) t += Real(u.m) * v.m * G(M - 2, N, K);
  t -= (u.m * v.a + v.m * u.a) * G(M - 1, N, K);
  t += u.a * v.a * G(M, N, K);
  // grad2 . grad2 mirror
  if (u.n && v.n) t += Real(u.n) * v.n * G(M, N - 2, K);
  t -= (u.n * v.b + v.n * u.b) * G(M, N - 1, K);
  t += u.b * v.b * G(M, N, K);
  // r12 derivative squared, one copy per electron
  if (u.k && v.k) t += 2 * Real(u.k) * v.k * G(M, N, K - 2);

  // cross terms, electron 1: (r1^2 - r2^2 + r12^2) / (2 r1 r12)
  {
    const Real c1 = Real(u.m) * v.k + Real(u.k) * v.m;     // ~ r1^-2 r12^-2
    const Real c2 = -(u.a * v.k + v.a * u.k);              // ~ r1^-1 r12^-2
    if (c1 != 0) {
      t += c1 / 2 * (G(M, N, K - 2) - G(M - 2, N + 2, K - 2) + G(M - 2, N, K));
    }
    if (c2 != 0) {
      t += c2 / 2 * (G(M + 1, N, K - 2) - G(M - 1, N + 2, K - 2) + G(M - 1, N, K));
    }
  }
  // cross terms, electron 2: (r2^2 - r1^2 + r12^2) / (2 r2 r12)
  {
    const Real c1 = Real(u.n) * v.k + Real(u.k) * v.n;
    const Real c2 = -(u.b * v.k + v.b * u.k);
    if (c1 != 0) {
      t += c1 / 2 * (G(M, N, K - 2) - G(M + 2, N - 2, K - 2) + G(M, N - 2, K));
    }
    if (c2 != 0) {
      t += c2 / 2 * (G(M, N + 1, K - 2) - G(M + 2, N - 1, K - 2) + G(M, N - 1, K));
    }
  }
  r.t = t / 2;
  return r;
}

}  // namespace detail

struct OperatorMatrices {
  SymMatrix S, T, V;  // overlap, kinetic, potential (angular factor included)
};

// Full decomposition; assemble_matrices below sums T + V.
inline OperatorMatrices assemble_operator_matrices(const BasisSpec& basis,
                                                   bool include_repulsion = true) {
  const int nt = basis.size();
  const int sigma = spin_sign(basis.spin);
  const Real angular = 8 * boost::math::constants::pi<Real>() *
                       boost::math::constants::pi<Real>();

  const int max_power = 2 * basis.omega + 2;
  GammaTable Gdd(2 * basis.alpha, 2 * basis.beta, max_power);
  GammaTable Gdx(basis.alpha + basis.beta, basis.alpha + basis.beta, max_power);

  OperatorMatrices out{SymMatrix(nt), SymMatrix(nt), SymMatrix(nt)};
  for (int i = 0; i < nt; ++i) {
    const auto& ti = basis.terms[i];
    detail::Primitive pi{basis.alpha, basis.beta, ti.k, ti.m, ti.n};
    for (int j = i; j < nt; ++j) {
      const auto& tj = basis.terms[j];
      detail::Primitive pj{basis.alpha, basis.beta, tj.k, tj.m, tj.n};
      detail::Primitive qj{basis.beta, basis.alpha, tj.k, tj.n, tj.m};  // 1 <-> 2 image

      auto dd = detail::primitive_pair(pi, pj, Gdd, basis.Z, include_repulsion);
      auto dx = detail::primitive_pair(pi, qj, Gdx, basis.Z, include_repulsion);

      // <phi_i|O|phi_j> over phi = P + sigma*Q collapses to 2*(PP + sigma*PQ)
      out.S.set(i, j, 2 * angular * (dd.s + sigma * dx.s));
      out.T.set(i, j, 2 * angular * (dd.t + sigma * dx.t));
      out.V.set(i, j, 2 * angular * (dd.v + sigma * dx.v));
    }
  }
  return out;
}

struct HamiltonianPair {
  SymMatrix H, S;
};

inline HamiltonianPair assemble_matrices(const BasisSpec& basis, bool include_repulsion = true) {
  auto parts = assemble_operator_matrices(basis, include_repulsion);
  SymMatrix H(basis.size());
  H.mat() = parts.T.mat() + parts.V.mat();
  return {std::move(H), std::move(parts.S)};
}

}  // namespace helion

#endif  // HELION_HAMILTONIAN_HPP
