#include <gtest/gtest.h>

#include "qlax/weyl/weyl.hpp"
#include "support.hpp"

using namespace qlax;
using namespace qlax::weyl;

TEST(Generator, ParseAndName) {
  EXPECT_EQ(Generator::parse("c"), Generator::c());
  EXPECT_EQ(Generator::parse("s21"), Generator::s(1, 2));
  EXPECT_EQ(Generator::parse(" mu34 ").name(), "mu34");
  EXPECT_EQ(Generator::parse("nu87").name(), "nu78");
  EXPECT_THROW(Generator::parse("x12"), ParseError);
  EXPECT_THROW(Generator::parse("s11"), ParseError);
  EXPECT_THROW(Generator::parse("s19"), ParseError);
  EXPECT_THROW(Generator::parse("mu1"), ParseError);
}

TEST(Word, ParseAndCompose) {
  const GroupWord w = parse_word("c,mu12,c,mu12");
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(word_name(w), "c,mu12,c,mu12");
  EXPECT_TRUE(parse_word("").empty());
  EXPECT_EQ(power(parse_word("c,s12"), 3).size(), 6u);
  EXPECT_EQ(word_name(r_word()), "s12,mu12,s34,mu34,s56,mu56,s78,mu78");
  EXPECT_EQ(t1_word().size(), 18u);
}

TEST(Word, RightmostActsFirst) {
  Rng rng(1);
  const auto [p, s] = test::draw_e8(rng);
  const Point a = apply_word(parse_word("s12,mu34"), p, s);
  const Point b0 = apply_generator(Generator::mu(3, 4), p, s);
  const Point b = apply_generator(Generator::s(1, 2), b0.first, b0.second);
  EXPECT_TRUE(a == b);
}

TEST(Generator, ActionsOnParameters) {
  Rng rng(2);
  const auto [p, s] = test::draw_e8(rng);
  const Point c = apply_generator(Generator::c(), p, s);
  EXPECT_EQ(c.first.h1(), p.h2());
  EXPECT_EQ(c.second, (State{s.g, s.f}));
  const Point sw = apply_generator(Generator::s(2, 5), p, s);
  EXPECT_EQ(sw.first.u(1), p.u(4));
  EXPECT_EQ(sw.second, s);
  const Point mu = apply_generator(Generator::mu(1, 2), p, s);
  EXPECT_EQ(mu.first.h1(), p.h1() * p.h2() / (p.u(0) * p.u(1)));
  EXPECT_EQ(mu.first.u(0), p.h2() / p.u(1));
  EXPECT_EQ(mu.second.g, s.g);
  for (const auto& gen : {Generator::c(), Generator::s(3, 7), Generator::mu(2, 6), Generator::nu(4, 8)})
    EXPECT_EQ(apply_generator(gen, p, s).first.q(), p.q());
}

TEST(Dynkin, Edges) {
  const auto& n = simple_reflections();
  ASSERT_EQ(n.size(), 9u);
  int edges = 0;
  for (std::size_t a = 0; a < n.size(); ++a)
    for (std::size_t b = a + 1; b < n.size(); ++b) edges += dynkin_adjacent(n[a], n[b]) ? 1 : 0;
  EXPECT_EQ(edges, 8);  // a tree on nine nodes
  EXPECT_TRUE(dynkin_adjacent(Generator::s(1, 2), Generator::s(2, 3)));
  EXPECT_FALSE(dynkin_adjacent(Generator::s(1, 2), Generator::mu(1, 2)));
  EXPECT_TRUE(dynkin_adjacent(Generator::c(), Generator::mu(1, 2)));
  // Arms from the branch node s23: lengths 1 (s12), 2 (mu12, c), 5 (s34..s78).
  int arms = 0;
  for (const auto& g : n) arms += dynkin_adjacent(Generator::s(2, 3), g) ? 1 : 0;
  EXPECT_EQ(arms, 3);
}

TEST(Coxeter, TenDraws) {
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const Report r = test::resampled([&] {
      const auto [p, s] = test::draw_e8(rng);
      return check_coxeter(p, s, rng);
    });
    EXPECT_TRUE(r.ok()) << r.to_json().dump();
  }
}

TEST(Translation, TenDraws) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const Report r = test::resampled([&] {
      const auto [p, s] = test::draw_e8(rng);
      return check_translation(p, s);
    });
    EXPECT_TRUE(r.ok()) << r.to_json().dump();
  }
}

TEST(Translation, MatchesEvolutionAfterRescaling) {
  Rng rng(5);
  const auto [p, s] = test::draw_e8(rng);
  const Point t1 = apply_word(t1_word(), p, s);
  const auto next = core::evolve(p, s).second;
  const Rational v = v_scale(p);
  EXPECT_EQ(t1.second.f, next.f * v);
  EXPECT_EQ(t1.second.g, next.g * v);
  EXPECT_EQ(t1.first.q(), p.q());
}

TEST(Generators, EveryGeneratorOnTenDraws) {
  std::vector<Generator> gens = {Generator::c()};
  for (int i = 1; i <= 8; ++i)
    for (int j = i + 1; j <= 8; ++j)
      for (auto make : {&Generator::s, &Generator::mu, &Generator::nu}) gens.push_back(make(i, j));
  ASSERT_EQ(gens.size(), 85u);
  Rng rng(6);
  for (const auto& gen : gens) {
    for (int i = 0; i < 10; ++i) {
      const Report r = test::resampled([&] {
        const auto [p, s] = test::draw_e8(rng);
        return check_generator(gen, p, s, rng);
      });
      ASSERT_TRUE(r.ok()) << gen.name() << " " << r.to_json().dump();
    }
  }
}

TEST(ApplyWord, NonGenericReportsPosition) {
  Rng rng(7);
  const auto [p, s] = test::draw_e8(rng);
  // mu12 at a point with f = f(u_2) and g = g(u_1) has a vanishing cross-ratio denominator.
  const State bad{p.f_at(p.u(1)), p.g_at(p.u(0))};
  try {
    apply_word(parse_word("c,mu12"), p, bad);
    FAIL() << "expected NonGeneric";
  } catch (const NonGeneric& e) {
    EXPECT_NE(std::string(e.what()).find("word position 1"), std::string::npos);
  }
}
