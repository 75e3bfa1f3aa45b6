#ifndef HELION_LINALG_HPP
#define HELION_LINALG_HPP

// Dense symmetric / antisymmetric matrix carriers and the three eigensolvers
// the rest of the engine is built on.

#include "helion/eigen_support.hpp"
#include "helion/real.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace helion {

// Symmetric matrix assembled symmetrically: set(i,j) writes both triangles.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Eigen::Index n) : m_(Matrix::Zero(n, n)) {}
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {}

  Eigen::Index dimension() const { return m_.rows(); }
  const Real& operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, const Real& v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Matrix& mat() const { return m_; }
  Matrix& mat() { return m_; }

 private:
  Matrix m_;
};

// Antisymmetric matrix: zero diagonal, set(i,j) writes -value at (j,i).
class AntisymMatrix {
 public:
  AntisymMatrix() = default;
  explicit AntisymMatrix(Eigen::Index n) : m_(Matrix::Zero(n, n)) {}

  Eigen::Index dimension() const { return m_.rows(); }
  const Real& operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, const Real& v) {
    if (i == j) return;  // diagonal stays exactly zero
    m_(i, j) = v;
    m_(j, i) = -v;
  }
  const Matrix& mat() const { return m_; }

 private:
  Matrix m_;
};

struct EigenPair {
  Real value;
  Vector vector;
};

namespace detail {

// Deterministic ordering for near-degenerate values: descending |value|,
// ties broken by the index of the first dominant vector component.
inline int dominant_index(const Vector& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (abs(v(i)) > abs(v(best))) best = i;
  return static_cast<int>(best);
}

}  // namespace detail

// Lowest n_roots eigenpairs of H c = E S c, S positive definite.
// Vectors come back S-normalized (c^T S c = 1).
inline std::vector<EigenPair> solve_generalized_symmetric(const SymMatrix& H, const SymMatrix& S,
                                                          int n_roots,
                                                          const PrecisionConfig& cfg) {
  if (H.dimension() != S.dimension()) throw std::invalid_argument("H, S dimension mismatch");
  const Eigen::Index n = H.dimension();
  if (n_roots < 1 || n_roots > n) throw std::invalid_argument("bad n_roots");

  Eigen::LLT<Matrix> llt(S.mat());
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite(
        "overlap factorization failed: basis linearly dependent at this precision");
  Matrix L = llt.matrixL();

  // A = L^{-1} H L^{-T}, symmetrized against rounding.
  Matrix A = L.template triangularView<Eigen::Lower>().solve(H.mat());
  A = L.template triangularView<Eigen::Lower>().solve(A.transpose()).transpose();
  A = ((A + A.transpose()) / 2).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success) throw NoConvergence("symmetric eigensolver did not converge");

  const Real hnorm = H.mat().norm();
  std::vector<EigenPair> out;
  out.reserve(n_roots);
  for (int r = 0; r < n_roots; ++r) {
    Vector y = es.eigenvectors().col(r);
    Vector c = L.transpose().template triangularView<Eigen::Upper>().solve(y);
    Real e = es.eigenvalues()(r);
    Real resid = (H.mat() * c - e * (S.mat() * c)).norm();
    if (resid > cfg.eig_residual_tol * hnorm)
      throw NoConvergence("generalized eigen-residual above tolerance");
    out.push_back({std::move(e), std::move(c)});
  }
  return out;
}

// Full spectrum of a symmetric matrix, descending by |value|.
inline std::vector<Real> solve_symmetric(const SymMatrix& B, const PrecisionConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(B.mat());
  if (es.info() != Eigen::Success) throw NoConvergence("symmetric eigensolver did not converge");

  // Reconstruction residual as the convergence certificate.
  Matrix R = es.eigenvectors() * es.eigenvalues().asDiagonal() * es.eigenvectors().transpose() -
             B.mat();
  if (R.norm() > cfg.eig_residual_tol * B.mat().norm() && B.mat().norm() > 0)
    throw NoConvergence("eigen reconstruction residual above tolerance");

  const Eigen::Index n = B.dimension();
  std::vector<int> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    Real aa = abs(es.eigenvalues()(a)), ab = abs(es.eigenvalues()(b));
    if (aa != ab) return aa > ab;
    return detail::dominant_index(es.eigenvectors().col(a)) <
           detail::dominant_index(es.eigenvectors().col(b));
  });
  std::vector<Real> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = es.eigenvalues()(order[i]);
  return out;
}

// Eigenvector-carrying variant, same ordering contract.
inline std::vector<EigenPair> solve_symmetric_pairs(const SymMatrix& B,
                                                    const PrecisionConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(B.mat());
  if (es.info() != Eigen::Success) throw NoConvergence("symmetric eigensolver did not converge");
  Matrix R = es.eigenvectors() * es.eigenvalues().asDiagonal() * es.eigenvectors().transpose() -
             B.mat();
  if (R.norm() > cfg.eig_residual_tol * B.mat().norm() && B.mat().norm() > 0)
    throw NoConvergence("eigen reconstruction residual above tolerance");
  const Eigen::Index n = B.dimension();
  std::vector<int> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    Real aa = abs(es.eigenvalues()(a)), ab = abs(es.eigenvalues()(b));
    if (aa != ab) return aa > ab;
    return detail::dominant_index(es.eigenvectors().col(a)) <
           detail::dominant_index(es.eigenvectors().col(b));
  });
  std::vector<EigenPair> out;
  out.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.push_back({es.eigenvalues()(order[i]), es.eigenvectors().col(order[i])});
  return out;
}

// Pair magnitudes of a real antisymmetric matrix (eigenvalues come as +-i*lambda).
// Realized through singular values, which occur in equal pairs; one
// representative per pair is returned, descending. An odd leftover must be
// numerically zero.
inline std::vector<Real> solve_antisymmetric_pairs(const AntisymMatrix& B,
                                                   const PrecisionConfig& cfg) {
  const Eigen::Index n = B.dimension();
  if (n == 0) return {};
  Eigen::JacobiSVD<Matrix> svd(B.mat());
  const auto& sv = svd.singularValues();  // descending
  std::vector<Real> out;
  Real scale = sv.size() ? sv(0) : Real(0);
  Eigen::Index i = 0;
  while (i < n) {
    if (sv(i) < cfg.cleanup_tol * (scale > 0 ? scale : Real(1))) break;  // zero modes
    if (i + 1 >= n || sv(i) - sv(i + 1) > cfg.cleanup_tol * (scale > 0 ? scale : Real(1)))
      throw PairingFailure("singular values do not pair: matrix not numerically antisymmetric");
    out.push_back((sv(i) + sv(i + 1)) / 2);
    i += 2;
  }
  return out;
}

}  // namespace helion

#endif  // HELION_LINALG_HPP
