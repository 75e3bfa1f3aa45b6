#ifndef HELION_RADIAL_BASIS_HPP
#define HELION_RADIAL_BASIS_HPP

// Orthonormal Laguerre-type radial basis used to discretize the one-particle
// channel kernels:
//   chi_n(r) = c_n r e^{-sigma r / 2} L_n^{(2)}(sigma r),   n = 0 .. size-1,
//   c_n = sigma^{3/2} sqrt(n! / (n+2)!),
// orthonormal under int_0^inf chi_m chi_n dr = delta_mn. The monomial
// coefficient matrix (chi_n as sums of r^p e^{-sigma r/2}) is what the
// analytic projection consumes.

#include "helion/gamma.hpp"
#include "helion/real.hpp"

#include <vector>

namespace helion {

class RadialBasis {
 public:
  RadialBasis(int size, Real sigma) : sigma_(std::move(sigma)), size_(size) {
    if (size < 1) throw std::invalid_argument("radial basis needs at least one function");
    if (!(sigma_ > 0)) throw std::invalid_argument("sigma must be positive");
    detail::FactorialCache fact;
    coef_.assign(size_, std::vector<Real>(size_ + 1, Real(0)));
    for (int n = 0; n < size_; ++n) {
      Real cn = sqrt(boost::multiprecision::pow(sigma_, 3) * fact(n) / fact(n + 2));
      // L_n^{(2)}(x) = sum_t (-1)^t binom(n+2, n-t) x^t / t!
      Real sig_t = 1;
      for (int t = 0; t <= n; ++t, sig_t *= sigma_) {
        Real binom = fact(n + 2) / (fact(n - t) * fact(t + 2));
        Real c = cn * binom * sig_t / fact(t);
        coef_[n][t + 1] = (t % 2 ? -c : c);  // power of r is t + 1
      }
    }
  }

  int size() const { return size_; }
  const Real& sigma() const { return sigma_; }
  int max_power() const { return size_; }  // highest r power across the set

  // chi_n = sum_p coefficient(n, p) r^p e^{-sigma r / 2}
  const Real& coefficient(int n, int p) const { return coef_.at(n).at(p); }

  Real evaluate(int n, const Real& r) const {
    const auto& row = coef_.at(n);
    Real acc = 0;
    Real rp = r;
    for (int p = 1; p <= size_; ++p, rp *= r) acc += row[p] * rp;
    return acc * exp(-sigma_ * r / 2);
  }

  // Gram matrix entry from closed-form moments; identity for a correct basis.
  Real gram(int m, int n) const {
    detail::FactorialCache fact;
    Real acc = 0;
    for (int p = 1; p <= size_; ++p)
      for (int q = 1; q <= size_; ++q) {
        const Real& a = coef_[m][p];
        const Real& b = coef_[n][q];
        if (a == 0 || b == 0) continue;
        acc += a * b * fact(p + q) / boost::multiprecision::pow(sigma_, p + q + 1);
      }
    return acc;
  }

  // Throws if the generated set is not orthonormal at working precision;
  // guards the coefficient construction against index slips.
  void self_check() const {
    const Real tol = pow10(-static_cast<long>(current_digits()) + 10);
    for (int m = 0; m < size_; ++m)
      for (int n = m; n < size_; ++n) {
        Real g = gram(m, n);
        Real expect = (m == n) ? 1 : 0;
        if (abs(g - expect) > tol)
          throw NoConvergence("radial basis failed orthonormality self-check");
      }
  }

 private:
  Real sigma_;
  int size_;
  std::vector<std::vector<Real>> coef_;  // [n][power]
};

// Default inverse length scale; near-optimal for a 1s core with a Rydberg
// electron of principal quantum number n_target.
inline Real default_sigma(const Real& Z, int n_target = 1) {
  return 2 * Z / (1 + n_target);
}

}  // namespace helion

#endif  // HELION_RADIAL_BASIS_HPP
