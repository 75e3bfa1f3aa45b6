#ifndef HELION_RDM_HPP
#define HELION_RDM_HPP

// Projection of channel functions onto the Laguerre radial basis and the
// Schmidt/Slater spectra of the resulting matrices.
//
//   B^l_ij = iint chi_i(x) f_l(x, y) chi_j(y) dx dy = T_ij + s T_ji,
//   T_ij   = iint_{x<y} chi_i(x) f_l(x, y) chi_j(y) dx dy,
// with s the exchange sign. On x < y every channel coefficient g_l^{(k)} is a
// terminating two-power sum, so T reduces to monomial triangle moments
// G(A, B) = iint_{x<y} x^A y^B e^{-ax-by}: the projection is fully analytic.
// Occupancies follow as Lambda_nl = (4 pi lambda_nl / (2l+1))^2, each
// (2l+1)-fold degenerate, with Slater pair magnitudes contributing twice.

#include "helion/linalg.hpp"
#include "helion/partialwave.hpp"
#include "helion/radial_basis.hpp"

#include <boost/math/constants/constants.hpp>

#include <map>
#include <vector>

namespace helion {

enum class SpectrumKind { schmidt, slater };

struct ChannelSpectrum {
  int l = 0;
  SpectrumKind kind = SpectrumKind::schmidt;
  std::vector<Real> values;  // descending |lambda|; slater: one entry per pair
};

struct ProjectedChannel {
  int l = 0;
  Spin spin = Spin::singlet;
  Matrix matrix;  // symmetric (singlet) or antisymmetric (triplet), exact by construction

  SymMatrix symmetric() const {
    if (spin != Spin::singlet) throw std::logic_error("channel matrix is antisymmetric");
    return SymMatrix(matrix);
  }
  AntisymMatrix antisymmetric() const {
    if (spin != Spin::triplet) throw std::logic_error("channel matrix is symmetric");
    AntisymMatrix a(matrix.rows());
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
      for (Eigen::Index j = i + 1; j < matrix.cols(); ++j) a.set(i, j, matrix(i, j));
    return a;
  }
};

namespace detail {

// Dense (sA, sB) shift-weight accumulator for one exponential variant.
struct ShiftWeights {
  int sa_lo, sb_lo, sa_n, sb_n;
  std::vector<Real> w;

  ShiftWeights(int sa_lo_, int sa_hi, int sb_lo_, int sb_hi)
      : sa_lo(sa_lo_), sb_lo(sb_lo_), sa_n(sa_hi - sa_lo_ + 1), sb_n(sb_hi - sb_lo_ + 1),
        w(static_cast<size_t>(sa_n) * sb_n, Real(0)) {}

  Real& at(int sa, int sb) { return w[static_cast<size_t>(sa - sa_lo) * sb_n + (sb - sb_lo)]; }
};

// T_ij (x < y half) at the current scalar precision.
inline Matrix triangle_projection(const StateSolution& st, int l, const RadialBasis& rb) {
  const auto& b = st.basis;
  const int sigma = spin_sign(b.spin);
  const auto& tab = channel_coeff_table(b.omega, l);

  const int sa_lo = 1 + l, sa_hi = 2 + l + b.omega;
  const int sb_lo = -l, sb_hi = 1 + b.omega;
  ShiftWeights w_dir(sa_lo, sa_hi, sb_lo, sb_hi);  // rates (alpha + s/2, beta + s/2)
  ShiftWeights w_swp(sa_lo, sa_hi, sb_lo, sb_hi);  // rates (beta + s/2, alpha + s/2)

  for (int i = 0; i < b.size(); ++i) {
    const auto& t = b.terms[i];
    const auto& d = tab.coeffs(t.k, l);
    if (d.empty()) continue;
    const Real c = st.norm_constant * st.coefficients(i);
    for (size_t j = 0; j < d.size(); ++j) {
      const int jj = static_cast<int>(j);
      w_dir.at(1 + t.m + l + 2 * jj, 1 + t.n + t.k - l - 2 * jj) += c * d[j];
      w_swp.at(1 + t.n + l + 2 * jj, 1 + t.m + t.k - l - 2 * jj) += sigma * c * d[j];
    }
  }

  const int np = rb.max_power();
  const int a_max = np + sa_hi, b_max = np + sb_hi, b_min = 1 + sb_lo;
  const Real half = rb.sigma() / 2;
  TriangleMomentTable g_dir(b.alpha + half, b.beta + half, a_max, b_min, b_max);
  TriangleMomentTable g_swp(b.beta + half, b.alpha + half, a_max, b_min, b_max);

  // D_pq = sum over shifts of w * G(p + sA, q + sB), p, q = 1 .. np
  Matrix D = Matrix::Zero(np + 1, np + 1);
  for (int sa = sa_lo; sa <= sa_hi; ++sa)
    for (int sb = sb_lo; sb <= sb_hi; ++sb) {
      const Real& wd = w_dir.at(sa, sb);
      const Real& ws = w_swp.at(sa, sb);
      const bool hd = wd != 0, hs = ws != 0;
      if (!hd && !hs) continue;
      for (int p = 1; p <= np; ++p)
        for (int q = 1; q <= np; ++q) {
          if (hd) D(p, q) += wd * g_dir(p + sa, q + sb);
          if (hs) D(p, q) += ws * g_swp(p + sa, q + sb);
        }
    }

  // T = C D C^T with C the monomial coefficient matrix of the radial basis
  Matrix C = Matrix::Zero(rb.size(), np + 1);
  for (int n = 0; n < rb.size(); ++n)
    for (int p = 1; p <= np; ++p) C(n, p) = rb.coefficient(n, p);
  return C * D * C.transpose();
}

}  // namespace detail

// Analytic projection with a precision-elevation certificate: the result is
// recomputed with extra scalar headroom and both evaluations must agree.
inline ProjectedChannel project_channel(const PartialWaveChannel& channel,
                                        const RadialBasis& basis) {
  const auto& st = channel.state();
  const int l = channel.l();
  const unsigned base_digits = current_digits();
  // headroom for the alternating Laguerre monomial coefficients (~log10(4)
  // digits of cancellation per basis order, twice) plus margin
  const unsigned internal = base_digits + 30 + static_cast<unsigned>(5 * basis.size() / 4);

  auto compute = [&](unsigned digits) {
    PrecisionScope scope(digits);
    // rebuild the basis at the elevated precision so its sqrt-bearing
    // coefficients do not cap the attainable accuracy
    RadialBasis rb(basis.size(), basis.sigma());
    Matrix t = detail::triangle_projection(st, l, rb);
    const int sigma = spin_sign(st.basis.spin);
    Matrix full = t + sigma * Real(1) * t.transpose();
    return full;
  };

  Matrix b1 = compute(internal);
  Matrix b2 = compute(internal + 15);
  {
    Real scale = b2.cwiseAbs().maxCoeff();
    if (scale == 0) scale = 1;
    Real diff = (b1 - b2).cwiseAbs().maxCoeff();
    if (diff > scale * pow10(-static_cast<long>(base_digits) + 8))
      throw QuadratureNotConverged("channel projection not stable under precision elevation");
  }

  ProjectedChannel out;
  out.l = l;
  out.spin = st.basis.spin;
  // round to the working precision and enforce the exact symmetry class
  out.matrix = Matrix::Zero(basis.size(), basis.size());
  const int sigma = spin_sign(st.basis.spin);
  for (Eigen::Index i = 0; i < b2.rows(); ++i) {
    for (Eigen::Index j = i; j < b2.cols(); ++j) {
      Real v = (b2(i, j) + sigma * b2(j, i)) / 2;
      if (st.basis.spin == Spin::triplet && i == j) v = 0;
      out.matrix(i, j) = v;
      out.matrix(j, i) = sigma * v;
    }
  }
  return out;
}

// Spectrum of a projected channel under its symmetry class.
inline ChannelSpectrum channel_spectrum(const ProjectedChannel& pc, const PrecisionConfig& cfg) {
  ChannelSpectrum out;
  out.l = pc.l;
  if (pc.spin == Spin::singlet) {
    out.kind = SpectrumKind::schmidt;
    out.values = solve_symmetric(pc.symmetric(), cfg);
  } else {
    out.kind = SpectrumKind::slater;
    out.values = solve_antisymmetric_pairs(pc.antisymmetric(), cfg);
  }
  return out;
}

struct OccupancyEntry {
  int n = 0;          // index within the channel spectrum
  int l = 0;          // channel
  Real occupancy;     // Lambda_nl
  int degeneracy = 1; // 2l + 1
};

struct OccupancySet {
  std::vector<OccupancyEntry> entries;
  Real trace;  // sum of (2l+1) Lambda_nl
};

// Map Schmidt/Slater values to RDM occupancies:
//   Lambda_nl = (4 pi lambda_nl / (2l+1))^2, (2l+1)-fold degenerate,
// Slater pair magnitudes entering twice. Entries with weighted occupancy
// below 1e-30 are dropped (0 log 0 regularization).
inline OccupancySet occupancies(const std::vector<ChannelSpectrum>& spectra) {
  const Real four_pi = 4 * boost::math::constants::pi<Real>();
  const Real drop = pow10(-30);
  OccupancySet out;
  out.trace = 0;
  for (const auto& sp : spectra) {
    const int deg = 2 * sp.l + 1;
    const Real scale = four_pi / deg;
    int n = 0;
    for (const auto& lam : sp.values) {
      Real occ = scale * lam;
      occ *= occ;
      const int copies = (sp.kind == SpectrumKind::slater) ? 2 : 1;
      for (int rep = 0; rep < copies; ++rep) {
        if (deg * occ >= drop) {
          out.entries.push_back({n, sp.l, occ, deg});
          out.trace += deg * occ;
        }
        ++n;
      }
    }
  }
  if (out.trace > 1 + pow10(-6))
    throw TraceOutOfRange("occupancy trace exceeds 1: convention or normalization bug");
  return out;
}

}  // namespace helion

#endif  // HELION_RDM_HPP
