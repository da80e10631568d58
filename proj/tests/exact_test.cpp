#include <gtest/gtest.h>

#include <set>

#include "qlax/exact/affine.hpp"
#include "qlax/exact/bidegree.hpp"
#include "qlax/exact/linalg.hpp"
#include "qlax/exact/rational.hpp"
#include "qlax/exact/report.hpp"
#include "qlax/exact/rng.hpp"

using namespace qlax;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(rat(6, -4).str(), "-3/2");
  EXPECT_EQ(rat(0, 7).str(), "0");
  EXPECT_EQ(rat(10, 5).str(), "2");
  EXPECT_EQ(Rational::parse(" -14/21 ").str(), "-2/3");
  EXPECT_EQ(Rational::parse("5"), Rational(5));
}

TEST(Rational, Errors) {
  EXPECT_THROW(rat(1, 0), ZeroDenominator);
  EXPECT_THROW(Rational(1) / Rational(0), ZeroDenominator);
  EXPECT_THROW(Rational::parse("1/0"), ZeroDenominator);
  EXPECT_THROW(Rational::parse("abc"), ParseError);
  EXPECT_THROW(Rational::parse("1/-2"), ParseError);
  EXPECT_THROW(pow(Rational(0), -1), ZeroDenominator);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(rat(1, 2) + rat(1, 3), rat(5, 6));
  EXPECT_EQ(rat(1, 2) * rat(2, 3) - rat(1, 3), Rational(0));
  EXPECT_EQ(pow(rat(2, 3), -2), rat(9, 4));
  EXPECT_EQ(abs(rat(-7, 3)), rat(7, 3));
  EXPECT_EQ(inv(rat(-2, 5)), rat(-5, 2));
  EXPECT_LT(rat(1, 3), rat(1, 2));
  EXPECT_EQ(pow10_neg(3), rat(1, 1000));
  EXPECT_EQ(pow10_neg(30) * pow10_neg(0), Rational::parse("1/1000000000000000000000000000000"));
}

TEST(Rational, BitSize) {
  EXPECT_EQ(rat(255, 2).bit_size(), 8u);
  EXPECT_EQ(rat(1, 1024).bit_size(), 11u);
  EXPECT_EQ(Rational(0).bit_size(), 1u);
}

TEST(Rational, FieldAxiomsOnRandomDraws) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Rational a = sample_rational(rng), b = sample_rational(rng), c = sample_rational(rng);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a / b * b, a);
    EXPECT_EQ(a - a, Rational(0));
  }
}

TEST(Rng, DeterministicAndSplit) {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  std::set<std::uint64_t> firsts;
  const Rng root(42);
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng child = root.split(k);
    firsts.insert(child.next_u64());
  }
  Rng parent(42);
  firsts.insert(parent.next_u64());
  EXPECT_EQ(firsts.size(), 101u);
}

TEST(Rng, UniformRange) {
  Rng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.uniform(3, 9);
    ASSERT_GE(v, 3u);
    ASSERT_LE(v, 9u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, SampleRationalBounds) {
  Rng rng(11);
  bool negative = false, positive = false;
  for (int i = 0; i < 500; ++i) {
    const Rational x = sample_rational(rng, 20);
    ASSERT_FALSE(x.is_zero());
    const mpz_class num = x.numerator();
    ASSERT_TRUE(abs(num) <= 20 && x.denominator() <= 20);
    negative = negative || x.sign() < 0;
    positive = positive || x.sign() > 0;
  }
  EXPECT_TRUE(negative && positive);
  EXPECT_THROW(sample_rational(rng, 1), std::invalid_argument);
}

TEST(Rng, UnitScaleBounds) {
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    const Rational x = abs(sample_unit_scale(rng, 1000));
    ASSERT_GE(x, rat(1, 2));
    ASSERT_LE(x, Rational(2));
  }
}

TEST(Linalg, RankAndSolve) {
  const Matrix m = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(matrix_rank(m), 2u);
  const Matrix a = {{2, 1}, {1, 3}};
  const auto x = solve_linear_system(a, {3, 5});
  EXPECT_EQ(x[0], rat(4, 5));
  EXPECT_EQ(x[1], rat(7, 5));
  EXPECT_THROW(solve_linear_system({{1, 2}, {2, 4}}, {1, 2}), DegenerateNodes);
}

TEST(Interpolation, UnivariateRecoversKnownPolynomial) {
  // 3 - x + 2 x^3
  const std::vector<Rational> nodes = {0, 1, 2, rat(-1, 2)};
  std::vector<Rational> values;
  for (const auto& x : nodes) values.push_back(3 - x + 2 * pow(x, 3));
  const auto c = interpolate_univariate(nodes, values);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], Rational(3));
  EXPECT_EQ(c[1], Rational(-1));
  EXPECT_EQ(c[2], Rational(0));
  EXPECT_EQ(c[3], Rational(2));
  const std::vector<Rational> repeated = {1, 1};
  const std::vector<Rational> two = {0, 0};
  EXPECT_THROW(interpolate_univariate(repeated, two), DegenerateNodes);
}

TEST(Interpolation, BidegreeFitMatchesLinearSystemOracle) {
  Rng rng(5);
  CurveCoeffs32::Grid truth;
  for (auto& row : truth)
    for (auto& x : row) x = sample_rational(rng, 50);
  const CurveCoeffs32 poly(truth);
  const auto fit = fit_bidegree32([&](const Rational& f, const Rational& g) { return poly.eval(f, g); }, rng);
  EXPECT_EQ(fit, poly);

  // Oracle: the 12 coefficients from a dense 12x12 monomial system.
  Matrix a;
  std::vector<Rational> b;
  for (int k = 0; k < 12; ++k) {
    const Rational f = sample_rational(rng), g = sample_rational(rng);
    std::vector<Rational> row;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 2; ++j) row.push_back(pow(f, i) * pow(g, j));
    a.push_back(row);
    b.push_back(poly.eval(f, g));
  }
  const auto x = solve_linear_system(a, b);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 2; ++j) EXPECT_EQ(x[static_cast<std::size_t>(3 * i + j)], fit.at(i, j));
}

TEST(Interpolation, BidegreeFitRejectsHigherDegree) {
  Rng rng(6);
  EXPECT_THROW(fit_bidegree32([](const Rational& f, const Rational& g) { return pow(f, 4) + g; }, rng),
               DegreeMismatch);
  EXPECT_THROW(fit_bidegree32([](const Rational& f, const Rational& g) { return f * pow(g, 3); }, rng),
               DegreeMismatch);
}

TEST(Affine, SolveAndInfiniteRoot) {
  EXPECT_EQ(solve_affine([](const Rational& x) { return 3 * x - 2; }, "x"), rat(2, 3));
  EXPECT_THROW(solve_affine([](const Rational&) { return Rational(5); }, "x"), NonGeneric);
}

TEST(Report, OkRequiresPassesAndFailedControls) {
  Report r("x");
  EXPECT_FALSE(r.ok());
  r.record(true);
  r.record_control(true);
  EXPECT_TRUE(r.ok());
  Report bad("x");
  bad.record(true);
  bad.record_control(false, {{"control", "c"}});
  EXPECT_FALSE(bad.ok());
  EXPECT_TRUE(bad.first_failure->at("control_passed_unexpectedly").get<bool>());
  r.merge(bad);
  EXPECT_EQ(r.draws, 2);
  EXPECT_EQ(r.controls, 2);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.to_json().at("check"), "x");
}
