#include "helion/partialwave.hpp"

#include <catch_amalgamated.hpp>

#include <array>

using namespace helion;

namespace {

struct PrecisionGuard {
  PrecisionGuard() { Real::default_precision(30); }
};
PrecisionGuard guard_;

PrecisionConfig config() {
  PrecisionConfig cfg;
  cfg.working_digits = 30;
  return cfg;
}

// adaptive trapezoid oracle for (2l+1)/2 int (r1^2+r2^2-2 r1 r2 t)^{c/2} P_l dt;
// handles the sqrt-type endpoint behavior by plain refinement to convergence
Real quadrature_oracle(int c, int l, const Real& r1, const Real& r2) {
  std::vector<Real> pl;
  auto f = [&](const Real& t) {
    legendre_all(t, l, pl);
    Real base = r1 * r1 + r2 * r2 - 2 * r1 * r2 * t;
    return boost::multiprecision::pow(sqrt(base), c) * pl[l];
  };
  Real prev = 0, cur = 0;
  for (int n = 64; n <= 262144; n *= 2) {
    Real h = Real(2) / n;
    Real acc = (f(Real(-1)) + f(Real(1))) / 2;
    for (int i = 1; i < n; ++i) acc += f(-1 + h * i);
    prev = cur;
    cur = acc * h;
    if (n > 64 && abs(cur - prev) < Real("1e-9")) break;
  }
  return (2 * l + 1) / Real(2) * cur;
}

StateSolution ground_state(int omega = 5, bool repulsion = true) {
  auto b = BasisSpec::make(Real(2), omega, Spin::singlet, Real("2.25"), Real("2.07"));
  return solve_state(b, 1, config(), repulsion);
}

StateSolution triplet_state(int omega = 6) {
  auto b = BasisSpec::make(Real(2), omega, Spin::triplet, Real("2.1"), Real("0.75"));
  return solve_state(b, 1, config());
}

}  // namespace

TEST_CASE("channel coefficients of r12 powers: closed forms") {
  // c=0: the constant function has only the l=0 channel
  REQUIRE(abs(r12_legendre_coeff(0, 0, Real("0.8"), Real("1.7")) - 1) < Real("1e-25"));
  REQUIRE(abs(r12_legendre_coeff(0, 1, Real("0.8"), Real("1.7"))) < Real("1e-25"));
  REQUIRE(abs(r12_legendre_coeff(0, 3, Real("1.2"), Real("0.4"))) < Real("1e-25"));
  // r12^2 = (r1^2 + r2^2) P0 - 2 r1 r2 P1
  REQUIRE(abs(r12_legendre_coeff(2, 1, Real(1), Real(1)) + 2) < Real("1e-25"));
  REQUIRE(abs(r12_legendre_coeff(2, 0, Real(1), Real(1)) - 2) < Real("1e-25"));
}

TEST_CASE("odd-power channel coefficient matches adaptive quadrature oracle") {
  REQUIRE(abs(r12_legendre_coeff(1, 0, Real(1), Real(1)) - Real(4) / 3) < Real("1e-20"));
  for (auto [c, l] : std::array<std::array<int, 2>, 3>{{{1, 0}, {1, 2}, {3, 1}}}) {
    Real r1("0.9"), r2("1.4");
    Real exact = r12_legendre_coeff(c, l, r1, r2);
    Real oracle = quadrature_oracle(c, l, r1, r2);
    REQUIRE(abs(exact - oracle) < Real("1e-7"));
  }
}

TEST_CASE("even powers: quadrature and polynomial expansion paths agree") {
  std::array<std::array<const char*, 2>, 3> pts{{{"0.31", "1.9"}, {"1.0", "1.0"}, {"2.7", "0.6"}}};
  for (int c : {0, 2, 4, 6})
    for (int l = 0; l <= c; ++l)
      for (const auto& p : pts) {
        Real a = g_coeff_even_poly(c, l, Real(p[0]), Real(p[1]));
        Real b = r12_legendre_coeff(c, l, Real(p[0]), Real(p[1]));
        Real scale = abs(a) > 1 ? abs(a) : Real(1);
        REQUIRE(abs(a - b) < Real("1e-25") * scale);
      }
}

TEST_CASE("even powers vanish beyond the polynomial degree") {
  for (int c : {0, 2, 4})
    for (int l = c + 1; l <= c + 3; ++l)
      REQUIRE(abs(r12_legendre_coeff(c, l, Real("0.7"), Real("1.3"))) < Real("1e-25"));
}

TEST_CASE("channel coefficients symmetric under particle swap") {
  for (int c : {1, 2, 3, 5})
    for (int l : {0, 1, 2, 4}) {
      Real a = r12_legendre_coeff(c, l, Real("0.52"), Real("1.73"));
      Real b = r12_legendre_coeff(c, l, Real("1.73"), Real("0.52"));
      Real scale = abs(a) > 1 ? abs(a) : Real(1);
      REQUIRE(abs(a - b) < Real("1e-24") * scale);
    }
}

TEST_CASE("cached side-form table agrees with the exact route") {
  const auto& tab = channel_coeff_table(7, 6);
  for (int c = 0; c <= 7; ++c)
    for (int l = 0; l <= 6; ++l) {
      Real a = tab.evaluate(c, l, Real("0.41"), Real("1.27"));
      Real b = r12_legendre_coeff(c, l, Real("0.41"), Real("1.27"));
      Real scale = abs(a) > 1 ? abs(a) : Real(1);
      REQUIRE(abs(a - b) < Real("1e-24") * scale);
    }
}

TEST_CASE("expansion policy validation") {
  ExpansionPolicy p;
  p.l_max = -1;
  REQUIRE_THROWS_AS(p.validate(5), std::invalid_argument);
  p.l_max = 10;
  p.gl_order = 5;  // below the exactness floor
  REQUIRE_THROWS_AS(p.validate(5), std::invalid_argument);
}

TEST_CASE("channel evaluator symmetry and boundary zeros") {
  ExpansionPolicy pol;
  pol.l_max = 4;
  auto singlet = ground_state();
  auto triplet = triplet_state();
  for (int l = 0; l <= 3; ++l) {
    auto cs = build_channel(singlet, l, pol);
    auto ct = build_channel(triplet, l, pol);
    Real x("0.8"), y("1.9");
    REQUIRE(abs(cs.evaluate(x, y) - cs.evaluate(y, x)) < Real("1e-24"));
    REQUIRE(abs(ct.evaluate(x, y) + ct.evaluate(y, x)) < Real("1e-24"));
    REQUIRE(abs(ct.evaluate(Real("1.3"), Real("1.3"))) < Real("1e-24"));  // diagonal node
  }
  auto c0 = build_channel(singlet, 0, pol);
  REQUIRE(c0.evaluate(Real(1), Real(1)) != 0);
  REQUIRE(c0.evaluate(Real(0), Real("1.5")) == 0);
}

TEST_CASE("non-interacting product state carries all norm in l=0") {
  ExpansionPolicy pol;
  pol.l_max = 3;
  auto b = BasisSpec::make(Real(2), 4, Spin::singlet, Real(2), Real(2));
  auto st = normalize(solve_state(b, 1, config(), /*include_repulsion=*/false));
  REQUIRE(abs(st.energy + 4) < Real("1e-20"));  // exact 1s^2 product at alpha = Z
  Real n0 = channel_norm(build_channel(st, 0, pol), pol);
  REQUIRE(abs(n0 - 1) < Real("1e-12"));
  for (int l = 1; l <= 3; ++l)
    REQUIRE(channel_norm(build_channel(st, l, pol), pol) < Real("1e-12"));
}

TEST_CASE("channel norms: dominance, decay, and Parseval sum") {
  ExpansionPolicy pol;
  pol.l_max = 6;
  auto st = normalize(ground_state());
  std::vector<Real> norms;
  Real sum = 0;
  for (int l = 0; l <= 6; ++l) {
    norms.push_back(channel_norm(build_channel(st, l, pol), pol));
    REQUIRE(norms.back() >= 0);
    sum += norms.back();
    REQUIRE(sum <= 1 + Real("1e-10"));  // monotone, bounded partial sums
  }
  REQUIRE(norms[0] > Real("0.99"));
  for (int l = 2; l <= 6; ++l) REQUIRE(norms[l] < norms[l - 1]);
  REQUIRE(abs(sum - 1) < Real("1e-5"));
}

TEST_CASE("triplet channel norms sum close to one") {
  ExpansionPolicy pol;
  pol.l_max = 6;
  auto st = normalize(triplet_state());
  Real sum = 0;
  for (int l = 0; l <= 6; ++l) sum += channel_norm(build_channel(st, l, pol), pol);
  REQUIRE(abs(sum - 1) < Real("1e-5"));
}
