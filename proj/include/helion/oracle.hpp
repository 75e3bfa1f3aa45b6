#ifndef HELION_ORACLE_HPP
#define HELION_ORACLE_HPP

// Independent grid-quadrature realization of the channel eigenproblem, used to
// cross-validate the analytic Laguerre projection path. The channel kernel is
// sampled on a uniform grid, symmetrized as W^{1/2} F W^{1/2} with the
// quadrature weights W, and diagonalized in plain double precision: this path
// exists to catch convention and prefactor bugs, not to compete on accuracy.

#include "helion/partialwave.hpp"
#include "helion/rdm.hpp"

#include <cmath>
#include <vector>

namespace helion {

enum class QuadratureRule { trapezoid, simpson };

struct GridSpec {
  Real r_max = 20;                                    // bohr
  int n_points = 600;                                 // uniform subintervals
  QuadratureRule rule = QuadratureRule::simpson;

  void validate() const {
    if (!(r_max > 0)) throw std::invalid_argument("r_max must be positive");
    if (n_points < 4) throw std::invalid_argument("n_points must be >= 4");
    if (rule == QuadratureRule::simpson && n_points % 2)
      throw std::invalid_argument("simpson needs an even subinterval count");
  }
};

inline ChannelSpectrum grid_spectrum(const PartialWaveChannel& channel, const GridSpec& grid) {
  grid.validate();
  const int n = grid.n_points;
  const double h = static_cast<double>(grid.r_max) / n;

  // sample the kernel at the interior nodes r_i = i h, i = 1..n
  std::vector<std::vector<double>> f(n, std::vector<double>(n));
  double fmax = 0;
  for (int i = 0; i < n; ++i) {
    const Real ri = grid.r_max * (i + 1) / n;
    for (int j = i; j < n; ++j) {
      const Real rj = grid.r_max * (j + 1) / n;
      double v = static_cast<double>(channel.evaluate(ri, rj));
      f[i][j] = v;
      f[j][i] = (channel.spin() == Spin::singlet ? v : -v);
      if (std::abs(v) > fmax) fmax = std::abs(v);
    }
  }

  // boundary decay check along the outer edge
  double edge = 0;
  for (int j = 0; j < n; ++j) edge = std::max(edge, std::abs(f[n - 1][j]));
  if (fmax > 0 && edge >= 1e-12 * fmax)
    throw BoundaryNotDecayed("kernel not decayed at r_max: enlarge the grid domain");

  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    if (grid.rule == QuadratureRule::trapezoid)
      w[i] = (i == n - 1) ? h / 2 : h;
    else
      // composite simpson over [0, r_max] restricted to the interior nodes
      w[i] = (i == n - 1) ? h / 3 : ((i % 2 == 0) ? 4 * h / 3 : 2 * h / 3);
  }

  // symmetrized kernel W^{1/2} F W^{1/2}; its spectrum approximates the
  // integral-operator spectrum
  Eigen::MatrixXd K(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) K(i, j) = std::sqrt(w[i]) * f[i][j] * std::sqrt(w[j]);

  ChannelSpectrum out;
  out.l = channel.l();
  if (channel.spin() == Spin::singlet) {
    out.kind = SpectrumKind::schmidt;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    if (es.info() != Eigen::Success) throw NoConvergence("grid eigensolver failed");
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
    for (double x : v) out.values.push_back(Real(x));
  } else {
    out.kind = SpectrumKind::slater;
    // antisymmetric: pair magnitudes from singular values
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
    const auto& sv = svd.singularValues();
    double scale = n ? sv(0) : 0.0;
    int i = 0;
    while (i < n) {
      if (sv(i) < 1e-12 * (scale > 0 ? scale : 1.0)) break;
      if (i + 1 >= n || sv(i) - sv(i + 1) > 1e-8 * (scale > 0 ? scale : 1.0))
        throw PairingFailure("grid singular values do not pair");
      out.values.push_back(Real((sv(i) + sv(i + 1)) / 2));
      i += 2;
    }
  }
  return out;
}

}  // namespace helion

#endif  // HELION_ORACLE_HPP
