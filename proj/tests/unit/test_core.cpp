#include <gtest/gtest.h>

#include "graphonlab/error.hpp"
#include "helpers.hpp"

using namespace graphonlab;
using namespace graphonlab::testing;

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(q("2/4"), Rational(1, 2));
  EXPECT_EQ(to_string(q("6/8")), "3/4");
  EXPECT_EQ(q("0.125"), Rational(1, 8));
  EXPECT_EQ(q("0.123456789012345678"), make_rational(Integer("123456789012345678"), Integer("1000000000000000000")));
  EXPECT_THROW(q("0.1234567890123456789"), Error);
  EXPECT_THROW(q("1/0"), Error);
  EXPECT_THROW(q("abc"), Error);
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(to_display(Rational(1, 3)), "1/3 (≈ 0.3333333333)");
}

TEST(Rational, MakeRationalCanonicalizes) {
  EXPECT_EQ(make_rational(2, 4), Rational(1, 2));
  EXPECT_EQ(make_rational(2, 4).get_den(), 2);
}

TEST(StepGraphon, ConstructionAndValidation) {
  const StepGraphon half = constant("1/2");
  EXPECT_EQ(half.parts(), 1u);
  EXPECT_EQ(half.value(0, 0), Rational(1, 2));
  EXPECT_EQ(checkerboard().value(0, 1), 0);
  try {
    matrix(2, {"1", "0", "1", "1"});
    FAIL() << "asymmetric matrix accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AsymmetricMatrix);
  }
  EXPECT_THROW(matrix(1, {"3/2"}), Error);
  EXPECT_THROW(matrix(1, {"-1/2"}), Error);
}

TEST(StepGraphon, PaletteIsCanonical) {
  const StepGraphon a = matrix(2, {"2/4", "1/3", "1/3", "1/2"});
  const StepGraphon b = matrix(2, {"1/2", "2/6", "2/6", "0.5"});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.palette().size(), 2u);
}

TEST(StepGraphon, GraphGraphons) {
  const StepGraphon w = graphon_of_graph(k2());
  EXPECT_EQ(w, matrix(2, {"0", "1", "1", "0"}));
  EXPECT_EQ(graphon_of_graph(FiniteGraph::empty(3)), matrix(3, std::vector<std::string>(9, "0")));
  const StepGraphon t = graphon_of_graph(triangle());
  EXPECT_EQ(t.value(0, 0), 0);
  EXPECT_EQ(t.value(0, 2), 1);
  EXPECT_EQ(average(t), Rational(2, 3));
  ASSERT_TRUE(graph_of_graphon(t).has_value());
  EXPECT_EQ(*graph_of_graphon(t), triangle());
  EXPECT_FALSE(graph_of_graphon(constant("1/2")).has_value());
  EXPECT_FALSE(graph_of_graphon(constant("1")).has_value());
}

TEST(StepGraphon, BlowUpAndRefinement) {
  const StepGraphon b = blow_up(checkerboard(), 2);
  EXPECT_EQ(b, matrix(4, {"1", "1", "0", "0", "1", "1", "0", "0", "0", "0", "1", "1", "0", "0", "1", "1"}));
  EXPECT_EQ(blow_up(checkerboard(), 1), checkerboard());
  const auto [u, v] = common_refinement(checkerboard(), matrix(3, std::vector<std::string>(9, "1/3")));
  EXPECT_EQ(u.parts(), 6u);
  EXPECT_EQ(v.parts(), 6u);
  EXPECT_EQ(common_refinement(blow_up(checkerboard(), 2), checkerboard()).second.parts(), 4u);
}

TEST(StepGraphon, Stepping) {
  EXPECT_EQ(stepping(constant("2/7"), DyadicLevel{3}), blow_up(constant("2/7"), 8));
  EXPECT_EQ(stepping(checkerboard(), DyadicLevel{0}), constant("1/2"));
  // Three parts onto two: exact overlap integration.
  const StepGraphon w = matrix(3, {"1", "0", "0", "0", "0", "0", "0", "0", "0"});
  const StepGraphon s = stepping(w, DyadicLevel{1});
  EXPECT_EQ(s.value(0, 0), Rational(4, 9));
  EXPECT_EQ(s.value(0, 1), 0);
  EXPECT_EQ(average(s), average(w));
}

TEST(StepGraphon, PermutationsAndEvaluation) {
  const Permutation swap(std::vector<std::size_t>{1, 0});
  EXPECT_EQ(permute_parts(checkerboard(), swap), checkerboard());
  EXPECT_EQ(permute_parts(checkerboard(), Permutation::identity(2)), checkerboard());
  const StepGraphon w = matrix(2, {"1", "1/3", "1/3", "0"});
  EXPECT_EQ(permute_parts(w, swap).value(0, 0), 0);
  EXPECT_THROW(Permutation(std::vector<std::size_t>{0, 0}), Error);
  EXPECT_EQ(evaluate(constant("3/5"), q("1/7"), q("1")).value(), Rational(3, 5));
  EXPECT_EQ(evaluate(checkerboard(), q("1/4"), q("3/4")).value(), 0);
  EXPECT_EQ(evaluate(checkerboard(), q("1"), q("1")).value(), 1);
  EXPECT_EQ(evaluate(checkerboard(), q("1/2"), q("1/2")).value(), 1);
  EXPECT_THROW(evaluate(checkerboard(), q("3/2"), q("0")), Error);
  EXPECT_EQ(average(checkerboard()), Rational(1, 2));
}

TEST(FiniteGraph, Basics) {
  const FiniteGraph p3(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(p3.edge_count(), 2u);
  EXPECT_EQ(p3.degree(1), 2u);
  EXPECT_EQ(p3.blown_up(2).vertices(), 6u);
  EXPECT_EQ(p3.blown_up(2).edge_count(), 8u);
  EXPECT_EQ(graphon_of_graph(p3.blown_up(2)), blow_up(graphon_of_graph(p3), 2));
  const Permutation sigma(std::vector<std::size_t>{1, 0, 2});
  EXPECT_TRUE(p3.permuted(sigma).adjacent(0, 2));
  EXPECT_THROW(FiniteGraph(2, {{0, 0}}), Error);
  EXPECT_THROW(FiniteGraph(2, {{0, 3}}), Error);
}
