#ifndef HELION_BASIS_HPP
#define HELION_BASIS_HPP

#include "helion/real.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace helion {

enum class Spin : std::uint8_t { singlet, triplet };

inline int spin_sign(Spin s) { return s == Spin::singlet ? +1 : -1; }
inline const char* spin_name(Spin s) { return s == Spin::singlet ? "singlet" : "triplet"; }

// One correlated term r12^k r1^m r2^n; (m, n) stored as the canonical
// representative of the symmetrized pair.
struct HylleraasTerm {
  int k = 0;  // power of r12
  int m = 0;  // power of r1
  int n = 0;  // power of r2
  auto operator<=>(const HylleraasTerm&) const = default;
};

// Canonical term list: every (k, m, n) with k+m+n <= omega, m <= n for
// singlet and m < n for triplet, sorted lexicographically.
inline std::vector<HylleraasTerm> enumerate_terms(int omega, Spin spin) {
  if (omega < 0) throw std::invalid_argument("omega must be >= 0");
  std::vector<HylleraasTerm> out;
  for (int k = 0; k <= omega; ++k)
    for (int m = 0; k + m <= omega; ++m)
      for (int n = m; k + m + n <= omega; ++n) {
        if (spin == Spin::triplet && m == n) continue;  // vanishes under antisymmetrization
        out.push_back({k, m, n});
      }
  return out;
}

struct BasisSpec {
  Real Z = 2;
  int omega = 0;
  Spin spin = Spin::singlet;
  Real alpha = 2;  // exponent on r1 (inverse bohr)
  Real beta = 2;   // exponent on r2
  std::vector<HylleraasTerm> terms;

  static BasisSpec make(Real Z, int omega, Spin spin, Real alpha, Real beta) {
    if (!(alpha > 0 && beta > 0)) throw std::invalid_argument("exponents must be positive");
    BasisSpec b;
    b.Z = std::move(Z);
    b.omega = omega;
    b.spin = spin;
    b.alpha = std::move(alpha);
    b.beta = std::move(beta);
    b.terms = enumerate_terms(omega, spin);
    return b;
  }

  int size() const { return static_cast<int>(terms.size()); }
};

}  // namespace helion

#endif  // HELION_BASIS_HPP
