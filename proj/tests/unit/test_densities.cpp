#include <gtest/gtest.h>

#include "graphonlab/densities.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/reference.hpp"
#include "graphonlab/sampling.hpp"
#include "helpers.hpp"

using namespace graphonlab;
using namespace graphonlab::testing;

TEST(Enumeration, OrderAndRoundTrip) {
  EXPECT_EQ(enumerate_graph(0).vertices(), 1u);
  EXPECT_EQ(enumerate_graph(1), FiniteGraph::empty(2));
  EXPECT_EQ(enumerate_graph(2), k2());
  EXPECT_EQ(first_index_with_vertices(3), 3u);
  EXPECT_EQ(first_index_with_vertices(4), 11u);
  EXPECT_EQ(first_index_with_vertices(5), 75u);
  // Bit 0 is the pair (0,1), bit 1 is (0,2), bit 2 is (1,2).
  EXPECT_EQ(enumerate_graph(3 + 2), FiniteGraph(3, {{0, 2}}));
  for (std::uint64_t i = 0; i < 200; ++i) EXPECT_EQ(graph_index(enumerate_graph(i)), i);
}

TEST(Densities, Examples) {
  EXPECT_EQ(t_ind_exact(k2(), constant("2/9")), Rational(2, 9));
  EXPECT_EQ(t_ind_exact(triangle(), constant("1/2")), Rational(1, 8));
  EXPECT_EQ(t_ind_exact(k2(), checkerboard()), Rational(1, 2));
  EXPECT_EQ(counting_bound(k2(), q("1/10")), Rational(2, 5));
  EXPECT_EQ(counting_bound(triangle(), q("1/10")), Rational(6, 5));
  EXPECT_EQ(counting_bound(triangle(), 0), 0);
}

TEST(Densities, MatchBruteForce) {
  RandomSource rs(1);
  for (int i = 0; i < 10; ++i) {
    const std::size_t k = 1 + part_of_word(4, rs.next_u64());
    const StepGraphon w = StepGraphon::from_function(
        k, [&](std::size_t, std::size_t) { return make_rational(static_cast<long>(part_of_word(7, rs.next_u64())), 6); });
    for (std::uint64_t idx = 0; idx < 75; idx += 3) {
      const FiniteGraph f = enumerate_graph(idx);
      EXPECT_EQ(t_ind_exact(f, w), reference::t_ind_brute(f, w));
    }
  }
}

TEST(Densities, ZeroOneFastPathMatchesGeneric) {
  const StepGraphon w = graphon_of_graph(FiniteGraph(70, {{0, 1}, {1, 2}, {5, 69}, {33, 40}, {2, 69}}));
  for (std::uint64_t idx : {2u, 5u, 10u}) {
    EXPECT_EQ(t_ind_exact(enumerate_graph(idx), w), reference::t_ind_brute(enumerate_graph(idx), w));
  }
}

TEST(Densities, CostGuard) {
  const StepGraphon w = StepGraphon::from_function(
      40, [](std::size_t i, std::size_t j) { return make_rational(static_cast<long>(((i + 1) * (j + 1)) % 101), 101); });
  const FiniteGraph big = FiniteGraph::empty(6);
  EXPECT_GT(t_ind_cost(big, w), 10'000'000u);
  try {
    t_ind_exact(big, w);
    FAIL() << "cost guard did not trip";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooExpensive);
  }
}

TEST(Densities, MonteCarlo) {
  const auto one = t_ind_mc(k2(), constant("1"), 500, 1);
  EXPECT_EQ(one.estimate, 1);
  EXPECT_EQ(one.stderr_bound, 0);
  EXPECT_EQ(t_ind_mc(k2(), constant("0"), 500, 1).estimate, 0);
  const auto tri = t_ind_mc(triangle(), constant("1/2"), 10000, 9);
  EXPECT_LE(abs(tri.estimate - Rational(1, 8)), 3 * tri.stderr_bound);
  EXPECT_EQ(tri.trials, 10000u);
}
