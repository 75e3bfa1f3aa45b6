#ifndef HELION_REAL_HPP
#define HELION_REAL_HPP

#include <boost/multiprecision/mpfr.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace helion {

// Arbitrary-precision real scalar. Precision (decimal digits) is set per
// run/scope through PrecisionScope; every freshly constructed Real picks up
// the current default precision.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline unsigned current_digits() { return Real::default_precision(); }

// RAII guard: sets the default scalar precision, restores on exit. Used for
// temporarily elevated internal precision (tables, cancellation headroom).
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

struct PrecisionConfig {
  unsigned working_digits = 30;   // decimal digits of scalar precision
  Real eig_residual_tol = Real("1e-12");
  Real cleanup_tol = Real("1e-20");

  void validate() const {
    if (working_digits < 15) throw std::invalid_argument("working_digits must be >= 15");
    if (!(cleanup_tol > 0 && cleanup_tol < eig_residual_tol && eig_residual_tol < 1))
      throw std::invalid_argument("need 0 < cleanup_tol < eig_residual_tol < 1");
  }
};

// Digits policy for a Hylleraas solve at a given basis cap. The overlap
// matrices are severely ill-conditioned for large omega.
inline unsigned recommended_digits(int omega) {
  if (omega > 10) return 60;
  return 30;
}

// Error taxonomy shared across modules.
struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PairingFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivergentIntegral : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QuadratureNotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TraceOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroNorm : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundaryNotDecayed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Real pow10(long e) { return boost::multiprecision::pow(Real(10), e); }

}  // namespace helion

#endif  // HELION_REAL_HPP
