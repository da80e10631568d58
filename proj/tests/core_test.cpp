#include <gtest/gtest.h>

#include "qlax/core/checks.hpp"
#include "qlax/core/painleve.hpp"
#include "qlax/exact/affine.hpp"
#include "qlax/exact/linalg.hpp"
#include "support.hpp"

using namespace qlax;
using namespace qlax::core;

namespace {

std::array<Rational, 8> ones() {
  std::array<Rational, 8> u;
  u.fill(Rational(1));
  return u;
}

std::pair<ParamsE8, State> draw(Rng& rng) { return test::draw_e8(rng); }

}  // namespace

TEST(Params, DerivedQuantities) {
  std::array<Rational, 8> u;
  for (int i = 0; i < 8; ++i) u[static_cast<std::size_t>(i)] = i + 1;
  const ParamsE8 p(rat(3, 2), rat(5, 7), u);
  EXPECT_EQ(p.q(), rat(9, 4) * rat(25, 49) / 40320);
  EXPECT_EQ(p.m()[0], Rational(1));
  EXPECT_EQ(p.m()[1], Rational(36));
  EXPECT_EQ(p.m()[8], Rational(40320));
  EXPECT_EQ(p.m()[8], p.h1() * p.h1() * p.h2() * p.h2() / p.q());
  EXPECT_THROW(ParamsE8(Rational(0), Rational(1), u), NonGeneric);
  u[3] = 0;
  EXPECT_THROW(ParamsE8(Rational(1), Rational(1), u), NonGeneric);
}

TEST(Params, GenericityGuard) {
  EXPECT_THROW(ParamsE8(2, 2, ones()).require_generic(), NonGeneric);        // h1 = h2
  EXPECT_THROW(ParamsE8(2, rat(1, 2), ones()).require_generic(), NonGeneric);  // q = 1
  std::array<Rational, 8> u = ones();
  u[0] = 2;
  const ParamsE8 clash(2, 1, u);  // q = 2, so h1 = h2 q
  EXPECT_EQ(clash.h2() * clash.q(), clash.h1());
  EXPECT_THROW(clash.require_generic(), NonGeneric);
  const ParamsE8 ok(1, rat(1, 2), ones());
  EXPECT_EQ(ok.q(), rat(1, 4));
  EXPECT_NO_THROW(ok.require_generic());
  EXPECT_TRUE(ok.is_generic());
}

TEST(PointOnCurve, Examples) {
  EXPECT_EQ(point_on_curve(Rational(1), ParamsE8(1, 1, ones())), (State{2, 2}));
  const ParamsE8 p(6, 5, ones());
  EXPECT_EQ(point_on_curve(Rational(2), p).f, Rational(5));
  EXPECT_EQ(point_on_curve(Rational(3), p).f, Rational(5));
  EXPECT_THROW(point_on_curve(Rational(0), p), NonGeneric);
  const State fb = point_on_curve(Rational(2), p, Shift::f_bar);
  EXPECT_EQ(fb.f, 2 + Rational(6) / (p.q() * 2));
  EXPECT_EQ(fb.g, Rational(2) + rat(5, 2));
  const State gb = point_on_curve(Rational(2), p, Shift::g_bar);
  EXPECT_EQ(gb.g, 2 + 5 * p.q() / 2);
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi(3, 1, 2, 2), Rational(2));
  EXPECT_EQ(phi(rat(7, 3), rat(7, 3), 5, 5), Rational(0));
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto [p, s] = draw(rng);
    EXPECT_TRUE(phi(point_on_curve(sample_rational(rng), p), p).is_zero());
  }
}

TEST(UPoly, Examples) {
  Rng rng(2);
  const auto [p, s] = draw(rng);
  EXPECT_TRUE(u_poly(p.u(0), p).is_zero());
  EXPECT_EQ(u_poly(Rational(0), ParamsE8(1, 2, ones())), Rational(1));
  for (int i = 0; i < 20; ++i) {
    const Rational z = sample_rational(rng);
    Rational sym = 0;
    for (int k = 0; k <= 8; ++k) sym += (k % 2 == 0 ? 1 : -1) * p.m()[static_cast<std::size_t>(8 - k)] * pow(z, k);
    EXPECT_EQ(u_poly(z, p), sym);
  }
}

TEST(SymFuncs, ExamplesAndVandermondeOracle) {
  const auto m = sym_funcs(ones());
  const std::array<int, 9> binom = {1, 8, 28, 56, 70, 56, 28, 8, 1};
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_EQ(m[k], Rational(binom[k]));

  Rng rng(3);
  std::array<Rational, 8> u;
  for (auto& x : u) x = sample_rational(rng);
  // Coefficients of prod (z - u_i) from 9 samples through a dense solve.
  Matrix a;
  std::vector<Rational> b;
  for (int k = 0; k < 9; ++k) {
    const Rational z = k - 4;
    std::vector<Rational> row;
    for (int j = 0; j <= 8; ++j) row.push_back(pow(z, j));
    a.push_back(row);
    Rational prod = 1;
    for (const auto& x : u) prod *= z - x;
    b.push_back(prod);
  }
  const auto c = solve_linear_system(a, b);
  const auto mu = sym_funcs(u);
  for (int j = 0; j <= 8; ++j)
    EXPECT_EQ(c[static_cast<std::size_t>(j)], (j % 2 == 0 ? 1 : -1) * mu[static_cast<std::size_t>(8 - j)]);
}

TEST(PnPd, Examples) {
  const auto m = sym_funcs(ones());
  EXPECT_EQ(pn_eval(Rational(1), Rational(0), m), Rational(16));
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto [p, s] = draw(rng);
    const Rational h = sample_rational(rng);
    Rational z = sample_rational(rng);
    if (z * z == h) z += 1;
    const Rational x = z + h / z;
    EXPECT_EQ((z - h / z) * pn_eval(h, x, p.m()), u_poly(z, p) / pow(z, 3) - pow(z / h, 3) * u_poly(h / z, p));
    EXPECT_EQ((z - h / z) * pd_eval(h, x, p.m()), pow(z, 5) * u_poly(h / z, p) - pow(h / z, 5) * u_poly(z, p));
    SymFuncs rev;
    for (std::size_t k = 0; k <= 8; ++k) rev[k] = p.m()[8 - k];
    const Rational g = sample_rational(rng);
    EXPECT_EQ(pd_eval(h, g, p.m()), pow(h, 4) * pn_eval(inv(h), g / h, rev));
  }
}

TEST(VEval, AffineInFirstArgument) {
  Rng rng(5);
  const auto [p, s] = draw(rng);
  const Rational a = 1, b = rat(-2, 3), c = 7;
  const Rational slope_ab = (v_eval(a, s.f, s.g, p) - v_eval(b, s.f, s.g, p)) / (a - b);
  const Rational slope_ac = (v_eval(a, s.f, s.g, p) - v_eval(c, s.f, s.g, p)) / (a - c);
  EXPECT_EQ(slope_ab, slope_ac);
  EXPECT_FALSE(slope_ab.is_zero());
}

TEST(VEval, ReassemblyOracle) {
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const auto [p, s] = draw(rng);
    const Rational f0 = sample_rational(rng);
    const Rational &h1 = p.h1(), &h2 = p.h2(), &q = p.q(), &f = s.f, &g = s.g;
    const Rational top = (f0 - g) * (f - g) - (h1 / q - h2) * (h1 - h2) / h2;
    const Rational bottom = (f0 * q / h1 - g / h2) * (f / h1 - g / h2) - (q / h1 - 1 / h2) * (1 / h1 - 1 / h2) * h2;
    // Both sides of the f step relation cross-multiplied by the denominators.
    const Rational expected = q * top * pd_eval(h2, g, p.m()) - h1 * h1 * pow(h2, 4) * bottom * pn_eval(h2, g, p.m());
    EXPECT_EQ(v_eval(f0, f, g, p), expected);
  }
}

TEST(Steps, StepFSatisfiesBothSides) {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto [p, s] = draw(rng);
    const Rational fbar = step_f(s.f, s.g, p);
    EXPECT_TRUE(v_eval(fbar, s.f, s.g, p).is_zero());
    const auto [lhs, rhs] = f_relation_sides(p, s.f, s.g, fbar);
    EXPECT_EQ(lhs, rhs);
    const Rational gbar = step_g(fbar, s.g, p);
    const auto [glhs, grhs] = g_relation_sides(p, fbar, s.g, gbar);
    EXPECT_EQ(glhs, grhs);
  }
}

TEST(Steps, ConfigurationPointIsGuarded) {
  Rng rng(8);
  const auto [p, s] = draw(rng);
  const State pk = point_on_curve(p.u(2), p);
  EXPECT_THROW(evolve(p, pk), NonGeneric);
}

TEST(Steps, StepGOnTheShiftedConfiguration) {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const auto [p, s] = draw(rng);
    // fbar = fbar(u_i) forces gbar = gbar(u_i) whatever g is.
    const Rational ui = p.u(i % 8);
    for (int k = 0; k < 3; ++k)
      EXPECT_EQ(step_g(p.fbar_at(ui), sample_rational(rng), p), p.gbar_at(ui));
    // (fbar(u), gbar(u)) comes from g = g(h1/(q u)).
    const Rational u = sample_rational(rng);
    const Rational g = solve_affine([&](const Rational& x) { return g_relation(p.fbar_at(u), p.gbar_at(u), x, p); },
                                    "g");
    EXPECT_EQ(g, p.g_at(p.h1() / (p.q() * u)));
  }
}

TEST(Evolve, ParameterUpdateAndRoundTrips) {
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    const auto [p, s] = draw(rng);
    const auto [np, ns] = evolve(p, s);
    EXPECT_EQ(np.q(), p.q());
    EXPECT_EQ(np.h1(), p.h1() / p.q());
    EXPECT_EQ(np.h2(), p.h2() * p.q());
    EXPECT_EQ(np.u(), p.u());
    EXPECT_TRUE(evolve_inverse(np, ns) == std::pair(p, s));
    const auto [bp, bs] = evolve_inverse(p, s);
    EXPECT_EQ(bp.q(), p.q());
    EXPECT_TRUE(evolve(bp, bs) == std::pair(p, s));
  }
}

TEST(Evolve, TenStepOrbitReturns) {
  Rng rng(11);
  const auto [p, s] = draw(rng);
  std::pair<ParamsE8, State> cur{p, s};
  for (int k = 0; k < 10; ++k) cur = evolve(cur.first, cur.second);
  for (int k = 0; k < 10; ++k) cur = evolve_inverse(cur.first, cur.second);
  EXPECT_TRUE(cur == std::pair(p, s));
}

TEST(Checks, IdentitiesOnFiftyDraws) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto [p, s] = draw(rng);
    const Report r = check_identities(p, rng);
    EXPECT_TRUE(r.ok()) << r.to_json().dump();
    EXPECT_EQ(r.controls, 7);
  }
}

TEST(Checks, EvolutionOnFiftyDraws) {
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const auto [p, s] = draw(rng);
    const Report r = check_evolution(p, s);
    EXPECT_TRUE(r.ok()) << r.to_json().dump();
  }
}
