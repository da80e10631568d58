#include <gtest/gtest.h>

#include "qlax/degen/degen.hpp"
#include "support.hpp"

using namespace qlax;
using namespace qlax::degen;

namespace {

const std::vector<Rational>& ladder() {
  static const std::vector<Rational> eps = {pow10_neg(3), pow10_neg(4), pow10_neg(5), pow10_neg(6)};
  return eps;
}

std::array<Rational, 8> fixed_b() {
  return {2, 3, rat(-5, 4), rat(7, 5), rat(1, 2), rat(-3, 2), rat(4, 5), rat(6, 7)};
}

}  // namespace

TEST(System, ParseAndName) {
  EXPECT_EQ(parse_system("E7"), System::E7);
  EXPECT_EQ(parse_system("d5"), System::D5);
  EXPECT_EQ(system_name(System::E6), "e6");
  EXPECT_THROW(parse_system("e9"), ParseError);
}

TEST(Params, DerivedQ) {
  const ParamsDeg p(System::E7, fixed_b(), rat(3, 2));
  EXPECT_EQ(p.q(), rat(1, 2) * rat(-3, 2) * rat(4, 5) * rat(6, 7) / (2 * 3 * rat(-5, 4) * rat(7, 5)));
  EXPECT_EQ(p.b(1), Rational(2));
  EXPECT_EQ(p.with_t(5).t(), Rational(5));
}

TEST(Evolution, BackSubstitutionOnTenDrawsPerSystem) {
  for (auto sys : {System::E7, System::E6, System::D5}) {
    Rng rng(static_cast<std::uint64_t>(sys) + 1);
    for (int i = 0; i < 10; ++i) {
      const auto [p, s] = test::draw_deg(sys, rng);
      const auto [np, ns] = deg_evolve(p, s);
      EXPECT_TRUE(relation1(p, s.f, s.g, ns.f).is_zero());
      EXPECT_TRUE(relation2(p, ns.f, s.g, ns.g).is_zero());
      EXPECT_EQ(np.t(), p.t() / p.q());
      EXPECT_EQ(np.q(), p.q());
      EXPECT_TRUE(deg_evolve_inverse(np, ns) == std::pair(p, s));
      const Report r = deg_check_evolution(p, s);
      EXPECT_TRUE(r.ok()) << r.to_json().dump();
    }
  }
}

TEST(Compatibility, CorrectedFormsPassOnTenDraws) {
  for (auto sys : {System::E7, System::E6, System::D5}) {
    Rng rng(static_cast<std::uint64_t>(sys) + 10);
    for (int i = 0; i < 10; ++i) {
      const Report r = test::resampled([&] {
        const auto [p, s] = test::draw_deg(sys, rng);
        return deg_check_compatibility(p, s, sample_rational(rng), rng);
      });
      EXPECT_TRUE(r.ok()) << system_name(sys) << " " << r.to_json().dump();
      EXPECT_EQ(r.controls, 3);
    }
  }
}

TEST(Compatibility, PrintedFormsFailWhereExpected) {
  for (auto sys : {System::E7, System::E6, System::D5}) {
    Rng rng(static_cast<std::uint64_t>(sys) + 20);
    int passes = 0;
    for (int i = 0; i < 5; ++i) {
      const Report r = test::resampled([&] {
        const auto [p, s] = test::draw_deg(sys, rng);
        return deg_check_compatibility(p, s, sample_rational(rng), rng, Variant::printed);
      });
      passes += r.passes;
    }
    // E6 is printed correctly; E7 and D5 each carry one misprint.
    EXPECT_EQ(passes, sys == System::E6 ? 5 : 0) << system_name(sys);
  }
}

TEST(Configuration, E7PointsOnTheTwoFamilies) {
  Rng rng(30);
  for (int i = 0; i < 10; ++i) {
    const auto [p, s] = test::draw_deg(System::E7, rng);
    EXPECT_EQ(configuration(p).size(), 8u);
    const Report r = check_e7_configuration(p);
    EXPECT_TRUE(r.ok()) << r.to_json().dump();
  }
  const ParamsDeg e6(System::E6, fixed_b(), 2);
  EXPECT_THROW(check_e7_configuration(e6), std::invalid_argument);
}

TEST(Converges, Rule) {
  const auto& e = ladder();
  EXPECT_TRUE(converges(e, {rat(1, 100), rat(1, 1000), rat(1, 10000), rat(1, 100000)}));
  EXPECT_TRUE(converges(e, {rat(1, 100), rat(1, 500), rat(1, 2500), rat(1, 12500)}));  // exactly 5x
  EXPECT_FALSE(converges(e, {rat(1, 100), rat(1, 400), rat(1, 4000), rat(1, 40000)}));
  EXPECT_TRUE(converges(e, {rat(1, 100), 0, 0, 0}));
  EXPECT_FALSE(converges(e, {0, rat(1, 100), 0, 0}));
  // Non-decade ladder falls back to the same rule in floating point.
  EXPECT_TRUE(converges({rat(1, 8), rat(1, 80)}, {Rational(1), rat(1, 10)}));
  EXPECT_FALSE(converges({rat(1, 8), rat(1, 16)}, {Rational(1), rat(9, 10)}));
}

TEST(Limits, SeriesShrinkAtAFixedDraw) {
  const DegState s{rat(2, 3), rat(-3, 4)};
  for (auto target : {System::E7, System::E6, System::D5}) {
    const auto series = limit_series(target, fixed_b(), rat(3, 2), s, rat(5, 3), ladder());
    EXPECT_GE(series.size(), 5u);
    for (const auto& rel : series) EXPECT_TRUE(converges(ladder(), rel.deviations)) << system_name(target) << " " << rel.relation;
  }
}

TEST(Limits, TenDrawsPerTarget) {
  for (auto target : {System::E7, System::E6, System::D5}) {
    Rng rng(static_cast<std::uint64_t>(target) + 40);
    for (int i = 0; i < 10; ++i) {
      const Report r = check_limit(target, ladder(), rng);
      EXPECT_TRUE(r.ok()) << system_name(target) << " " << r.to_json().dump();
      EXPECT_EQ(r.controls, 2);
    }
  }
}

TEST(Limits, PrintedE7RelationBreaksTheLimit) {
  Rng rng(50);
  const Report r = check_limit(System::E7, ladder(), rng, Variant::printed);
  EXPECT_EQ(r.passes, 0);
  EXPECT_EQ(r.first_failure->at("relation"), "gbar");
}

TEST(Limits, BadLadderRejected) {
  Rng rng(51);
  EXPECT_THROW(check_limit(System::E6, {pow10_neg(3)}, rng), std::invalid_argument);
  EXPECT_THROW(check_limit(System::E6, {pow10_neg(4), pow10_neg(3)}, rng), std::invalid_argument);
}
