#ifndef HELION_EIGEN_SUPPORT_HPP
#define HELION_EIGEN_SUPPORT_HPP

// Eigen NumTraits for the mpfr-backed Real scalar. Boost ships an Eigen
// interop header, but it lacks infinity()/quiet_NaN() which the dense
// eigensolvers require, so we provide the full specialization here.

#include "helion/real.hpp"

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<helion::Real> : GenericNumTraits<helion::Real> {
  typedef helion::Real NonInteger;
  typedef helion::Real Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 30,
    MulCost = 60
  };
  static inline helion::Real highest() { return (std::numeric_limits<helion::Real>::max)(); }
  static inline helion::Real lowest() { return -(std::numeric_limits<helion::Real>::max)(); }
  static inline helion::Real epsilon() { return std::numeric_limits<helion::Real>::epsilon(); }
  static inline helion::Real dummy_precision() { return epsilon() * 1000; }
  static inline helion::Real infinity() { return std::numeric_limits<helion::Real>::infinity(); }
  static inline helion::Real quiet_NaN() { return std::numeric_limits<helion::Real>::quiet_NaN(); }
  static inline int digits10() { return static_cast<int>(helion::Real::default_precision()); }
};

}  // namespace Eigen

#include <Eigen/Dense>

namespace helion {
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
}  // namespace helion

#endif  // HELION_EIGEN_SUPPORT_HPP
