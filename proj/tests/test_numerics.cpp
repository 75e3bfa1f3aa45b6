#include "helion/linalg.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

using namespace helion;

namespace {

// deterministic pseudo-random reals in [-1, 1]
struct Lcg {
  unsigned long long s = 0x2545F4914F6CDD1DULL;
  Real next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return Real(static_cast<long long>(s >> 11)) / Real(1ULL << 53) * 2 - 1;
  }
};

SymMatrix random_symmetric(int n, Lcg& rng) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, rng.next());
  return m;
}

struct PrecisionGuard {
  PrecisionGuard() { Real::default_precision(30); }
};

PrecisionGuard guard_;

PrecisionConfig config(unsigned digits = 30) {
  PrecisionConfig cfg;
  cfg.working_digits = digits;
  return cfg;
}

}  // namespace

TEST_CASE("precision config validation") {
  PrecisionConfig cfg;
  REQUIRE_NOTHROW(cfg.validate());
  cfg.working_digits = 10;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.working_digits = 30;
  cfg.cleanup_tol = 1;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("generalized solve: scalar identity") {
  SymMatrix h(1), s(1);
  h.set(0, 0, Real("-2.75"));
  s.set(0, 0, 1);
  auto roots = solve_generalized_symmetric(h, s, 1, config());
  REQUIRE(roots.size() == 1);
  REQUIRE(roots[0].value == Real("-2.75"));
  REQUIRE(abs(abs(roots[0].vector(0)) - 1) < Real("1e-25"));
}

TEST_CASE("generalized solve: symmetric swap") {
  SymMatrix h(2), s(2);
  h.set(0, 1, 1);
  s.set(0, 0, 1);
  s.set(1, 1, 1);
  auto roots = solve_generalized_symmetric(h, s, 2, config());
  REQUIRE(abs(roots[0].value + 1) < Real("1e-25"));
  REQUIRE(abs(roots[1].value - 1) < Real("1e-25"));
}

TEST_CASE("generalized solve rejects indefinite overlap") {
  SymMatrix h(2), s(2);
  h.set(0, 0, 1);
  h.set(1, 1, 2);
  s.set(0, 0, 1);
  s.set(1, 1, -1);
  REQUIRE_THROWS_AS(solve_generalized_symmetric(h, s, 1, config()), NotPositiveDefinite);
}

TEST_CASE("symmetric solve: diagonal ordering") {
  SymMatrix b(3);
  b.set(0, 0, 3);
  b.set(1, 1, 1);
  b.set(2, 2, 2);
  auto vals = solve_symmetric(b, config());
  REQUIRE(vals.size() == 3);
  REQUIRE(abs(vals[0] - 3) < Real("1e-25"));
  REQUIRE(abs(vals[1] - 2) < Real("1e-25"));
  REQUIRE(abs(vals[2] - 1) < Real("1e-25"));
}

TEST_CASE("symmetric solve: off-diagonal pair") {
  const Real a = Real(7) / 3;
  SymMatrix b(2);
  b.set(0, 1, a);
  auto vals = solve_symmetric(b, config());
  REQUIRE(abs(abs(vals[0]) - a) < Real("1e-25"));
  REQUIRE(abs(abs(vals[1]) - a) < Real("1e-25"));
  REQUIRE(abs(vals[0] + vals[1]) < Real("1e-25"));  // opposite signs
}

TEST_CASE("generalized solve with identity overlap matches symmetric solve") {
  Lcg rng;
  for (int n : {3, 8, 20}) {
    auto b = random_symmetric(n, rng);
    SymMatrix s(n);
    for (int i = 0; i < n; ++i) s.set(i, i, 1);
    auto gen = solve_generalized_symmetric(b, s, n, config());
    auto sym = solve_symmetric(b, config());
    std::vector<Real> gv, sv;
    for (const auto& p : gen) gv.push_back(p.value);
    sv = sym;
    std::sort(gv.begin(), gv.end());
    std::sort(sv.begin(), sv.end());
    for (int i = 0; i < n; ++i) REQUIRE(abs(gv[i] - sv[i]) < Real("1e-20"));
  }
}

TEST_CASE("antisymmetric pairs: 2x2") {
  const Real a = Real(5) / 4;
  AntisymMatrix b(2);
  b.set(0, 1, a);
  auto mags = solve_antisymmetric_pairs(b, config());
  REQUIRE(mags.size() == 1);
  REQUIRE(abs(mags[0] - a) < Real("1e-25"));
}

TEST_CASE("antisymmetric pairs: 3x3 with zero mode") {
  AntisymMatrix b(3);
  b.set(0, 1, 1);
  b.set(0, 2, 2);
  b.set(1, 2, 3);
  auto mags = solve_antisymmetric_pairs(b, config());
  REQUIRE(mags.size() == 1);
  // characteristic polynomial lambda (lambda^2 + 14) = 0
  REQUIRE(abs(mags[0] - sqrt(Real(14))) < Real("1e-25"));
}

TEST_CASE("antisymmetric pair magnitudes match sqrt of eigenvalues of B^T B") {
  Lcg rng;
  for (int n : {4, 9, 20}) {
    AntisymMatrix b(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) b.set(i, j, rng.next());
    auto mags = solve_antisymmetric_pairs(b, config());

    SymMatrix btb(n);
    Matrix prod = b.mat().transpose() * b.mat();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) btb.set(i, j, prod(i, j));
    auto ev = solve_symmetric(btb, config());  // descending, duplicated pairs
    for (size_t k = 0; k < mags.size(); ++k) {
      REQUIRE(abs(mags[k] - sqrt(ev[2 * k])) < Real("1e-10"));
      REQUIRE(abs(mags[k] - sqrt(ev[2 * k + 1])) < Real("1e-10"));
    }
  }
}

TEST_CASE("antisymmetric carrier keeps exact structure") {
  AntisymMatrix b(3);
  b.set(1, 0, Real(2));
  REQUIRE(b(0, 1) == Real(-2));
  b.set(2, 2, Real(9));  // diagonal writes are ignored
  REQUIRE(b(2, 2) == Real(0));
}

TEST_CASE("eigenvalues stable under raised precision") {
  Lcg rng;
  auto b = random_symmetric(12, rng);
  auto v30 = solve_symmetric(b, config(30));
  std::vector<Real> v50;
  {
    PrecisionScope scope(50);
    SymMatrix b50(12);
    for (int i = 0; i < 12; ++i)
      for (int j = i; j < 12; ++j) b50.set(i, j, Real(b(i, j)));
    v50 = solve_symmetric(b50, config(50));
  }
  for (int i = 0; i < 12; ++i) REQUIRE(abs(v30[i] - Real(v50[i])) < Real("1e-24"));
}
