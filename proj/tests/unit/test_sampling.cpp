#include <gtest/gtest.h>

#include "graphonlab/error.hpp"
#include "graphonlab/sampling.hpp"
#include "helpers.hpp"

using namespace graphonlab;
using namespace graphonlab::testing;

TEST(RandomSource, MatchesStandardEngine) {
  RandomSource rs(5489);
  std::mt19937_64 reference(5489);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rs.next_u64(), reference());
  RandomSource a(3), b(3);
  EXPECT_EQ(a.derive(7).next_u64(), b.derive(7).next_u64());
  EXPECT_NE(a.derive(7).next_u64(), a.derive(8).next_u64());
}

TEST(RandomSource, ExactBernoulli) {
  RandomSource rs(1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_FALSE(rs.bernoulli(0));
    EXPECT_TRUE(rs.bernoulli(1));
  }
  int hits = 0;
  for (int i = 0; i < 20000; ++i) hits += rs.bernoulli(Rational(1, 3));
  EXPECT_NEAR(hits / 20000.0, 1.0 / 3, 0.02);
}

TEST(Sampling, PartOfWord) {
  EXPECT_EQ(part_of_word(4, 0), 0u);
  EXPECT_EQ(part_of_word(4, ~std::uint64_t{0}), 3u);
  EXPECT_EQ(part_of_word(2, std::uint64_t{1} << 63), 1u);
}

TEST(Sampling, Examples) {
  RandomSource rs(2);
  EXPECT_EQ(sample_graph(constant("1"), 6, rs), FiniteGraph::complete(6));
  EXPECT_EQ(sample_graph(constant("0"), 6, rs), FiniteGraph::empty(6));
  EXPECT_EQ(empirical_graphon(constant("1"), 3, rs), graphon_of_graph(triangle()));
  EXPECT_EQ(empirical_graphon(checkerboard(), 1, rs), constant("0"));
  RandomSource a(9), b(9);
  EXPECT_EQ(sample_graph(matrix(2, {"1/3", "1/2", "1/2", "1/5"}), 30, a),
            sample_graph(matrix(2, {"1/3", "1/2", "1/2", "1/5"}), 30, b));
}

TEST(Questionnaire, TvBoundAndPoints) {
  RandomSource rs(4);
  const auto s = questionnaire_sample(10, 20, rs);
  EXPECT_EQ(s.tv_bound, 45 * pow2(-20));
  ASSERT_EQ(s.answers.size(), 10u);
  for (const auto& a : s.answers) {
    ASSERT_EQ(a.size(), 20u);
    for (std::size_t q = 0; q < a.size(); ++q) EXPECT_LT(a[q], std::uint64_t{1} << (q + 1));
  }
  const DyadicInterval one = answers_to_point({0});
  EXPECT_EQ(one.lo, 0);
  EXPECT_EQ(one.hi(), Rational(1, 2));
  EXPECT_EQ(answers_to_point({0, 0}).hi(), Rational(1, 8));
  EXPECT_EQ(answers_to_point({1, 3}).lo, Rational(1, 2) + Rational(3, 8));
  EXPECT_THROW(answers_to_point({2}), Error);
}

TEST(Questionnaire, EdgesJoinAgreeingVertices) {
  RandomSource rs(6);
  const auto s = questionnaire_sample(15, 4, rs);
  for (std::size_t u = 0; u < 15; ++u) {
    for (std::size_t v = u + 1; v < 15; ++v) {
      bool agree = false;
      for (std::size_t q = 0; q < 4; ++q) agree = agree || s.answers[u][q] == s.answers[v][q];
      EXPECT_EQ(s.graph.adjacent(u, v), agree);
    }
  }
}
