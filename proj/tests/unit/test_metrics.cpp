#include <gtest/gtest.h>

#include "graphonlab/densities.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/metrics.hpp"
#include "graphonlab/reference.hpp"
#include "graphonlab/sampling.hpp"
#include "helpers.hpp"

using namespace graphonlab;
using namespace graphonlab::testing;

namespace {

StepGraphon random_graphon(RandomSource& rs, std::size_t k, unsigned den) {
  return StepGraphon::from_function(k, [&](std::size_t, std::size_t) {
    return make_rational(static_cast<long>(part_of_word(den + 1, rs.next_u64())), den);
  });
}

}  // namespace

TEST(Metrics, L1AndL2) {
  EXPECT_EQ(d1(constant("1/5"), constant("7/10")), Rational(1, 2));
  EXPECT_EQ(d1(checkerboard(), constant("1/2")), Rational(1, 2));
  EXPECT_EQ(d1(checkerboard(), checkerboard()), 0);
  EXPECT_EQ(d2(constant("0"), constant("1")), 1);
  EXPECT_EQ(d2(checkerboard(), constant("1/2")), Rational(1, 4));
  EXPECT_EQ(d2(checkerboard(), blow_up(checkerboard(), 3)), 0);
}

TEST(Metrics, CutNormExamples) {
  EXPECT_EQ(cut_norm(SignedStepFunction(2, std::vector<Rational>(4, 0))).value, 0);
  const SignedStepFunction f = aligned_difference(blow_up(constant("1/2"), 2), checkerboard());
  EXPECT_EQ(cut_norm(f).value, Rational(1, 8));
  EXPECT_EQ(reference::cut_norm_brute(f), Rational(1, 8));
  EXPECT_EQ(cut_norm(SignedStepFunction(3, std::vector<Rational>(9, q("-2/3")))).value, Rational(2, 3));
  EXPECT_EQ(d_square(graphon_of_graph(k2()), matrix(2, {"0", "0", "0", "0"})), Rational(1, 2));
  EXPECT_EQ(d_square(checkerboard(), checkerboard()), 0);
}

TEST(Metrics, OverlayHasMergedBreakpoints) {
  const SignedStepFunction f = difference(checkerboard(), matrix(3, std::vector<std::string>(9, "0")));
  EXPECT_EQ(f.parts(), 4u);  // breakpoints 1/3, 1/2, 2/3
  EXPECT_EQ(f.total_weight(), 6u);
  EXPECT_EQ(l1_norm(f), Rational(1, 2));
}

TEST(Metrics, CutNormMatchesBruteForce) {
  RandomSource rs(7);
  for (int i = 0; i < 40; ++i) {
    const std::size_t k = 1 + part_of_word(9, rs.next_u64());
    const auto f = aligned_difference(random_graphon(rs, k, 5), random_graphon(rs, k, 7));
    EXPECT_EQ(cut_norm(f).value, reference::cut_norm_brute(f)) << "case " << i;
  }
  for (int i = 0; i < 20; ++i) {
    const auto u = random_graphon(rs, 1 + part_of_word(5, rs.next_u64()), 4);
    const auto v = random_graphon(rs, 1 + part_of_word(5, rs.next_u64()), 3);
    const auto f = difference(u, v);
    EXPECT_EQ(cut_norm(f).value, reference::cut_norm_brute(f)) << "weighted case " << i;
  }
}

TEST(Metrics, CutNormLimitAndBounds) {
  RandomSource rs(11);
  const auto u = random_graphon(rs, 30, 4), v = random_graphon(rs, 30, 5);
  const auto f = aligned_difference(u, v);
  try {
    cut_norm(f);
    FAIL() << "exact search ran past its limit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyParts);
  }
  CutNormOptions heuristic;
  heuristic.heuristic = true;
  const CutNormResult lower = cut_norm(f, heuristic);
  EXPECT_FALSE(lower.exact);
  const CutNormBounds b = cut_norm_bounds(f);
  EXPECT_LE(b.lower, b.upper);
  EXPECT_LE(lower.value, b.upper);
  EXPECT_LE(b.upper, l1_norm(f));
}

TEST(Metrics, TwinCompressionKeepsBlowUpsExact) {
  RandomSource rs(3);
  const auto u = random_graphon(rs, 6, 6), v = random_graphon(rs, 6, 6);
  // 48 parts, but only 6 distinct rows.
  EXPECT_EQ(d_square(blow_up(u, 8), blow_up(v, 8)), d_square(u, v));
}

TEST(Metrics, HatDelta) {
  AlignOptions exact;
  const FiniteGraph p4(4, {{0, 1}, {1, 2}, {2, 3}});
  const FiniteGraph shuffled = p4.permuted(Permutation(std::vector<std::size_t>{2, 0, 3, 1}));
  const DeltaBound same = hat_delta(p4, shuffled, exact);
  EXPECT_EQ(same.upper, 0);
  EXPECT_EQ(same.lower, 0);
  ASSERT_TRUE(same.witness.has_value());
  EXPECT_EQ(graphon_of_graph(p4), permute_parts(graphon_of_graph(shuffled), same.witness->permutation));
  EXPECT_EQ(hat_delta(k2(), FiniteGraph::empty(2), exact).upper, Rational(1, 2));
  EXPECT_THROW(hat_delta(k2(), triangle(), exact), Error);
  EXPECT_THROW(hat_delta(FiniteGraph::empty(9), FiniteGraph::empty(9), exact), Error);
}

TEST(Metrics, HeuristicAlignmentNeverBeatsExact) {
  RandomSource rs(5);
  for (int i = 0; i < 10; ++i) {
    std::vector<std::pair<std::size_t, std::size_t>> eg, eh;
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = a + 1; b < 6; ++b) {
        if (rs.next_u64() >> 63) eg.emplace_back(a, b);
        if (rs.next_u64() >> 63) eh.emplace_back(a, b);
      }
    }
    const FiniteGraph g(6, eg), h(6, eh);
    AlignOptions heuristic;
    heuristic.mode = AlignMode::Heuristic;
    heuristic.seed = static_cast<std::uint64_t>(i);
    const Rational exact = reference::hat_delta_brute(g, h);
    const DeltaBound hb = hat_delta(g, h, heuristic);
    EXPECT_GE(hb.upper, exact);
    EXPECT_EQ(hb.lower, 0);
    EXPECT_EQ(hat_delta(g, h).upper, exact);
  }
}

TEST(Metrics, DeltaBound) {
  const StepGraphon w = matrix(3, {"1", "1/2", "0", "1/2", "1/3", "1/4", "0", "1/4", "1"});
  const DeltaBound self = delta_bound(w, permute_parts(w, Permutation(std::vector<std::size_t>{2, 0, 1})));
  EXPECT_EQ(self.upper, 0);
  const DeltaBound far = delta_bound(constant("0"), constant("1"));
  EXPECT_EQ(far.upper, 1);
  EXPECT_GE(far.lower, Rational(1, 4));
  EXPECT_EQ(far.upper_kind, UpperKind::Exact);
}

TEST(Metrics, DeltaBoundUsesBlowUps) {
  // Same graphon presented on 2 and 4 parts with a reshuffle.
  const StepGraphon w = matrix(2, {"1", "1/4", "1/4", "1/2"});
  const StepGraphon v = permute_parts(blow_up(w, 2), Permutation(std::vector<std::size_t>{3, 0, 2, 1}));
  EXPECT_EQ(delta_bound(w, v).upper, 0);
}

TEST(Metrics, TruncatedDw) {
  const auto same = d_w_truncated(checkerboard(), checkerboard(), 10);
  EXPECT_EQ(same.value, 0);
  EXPECT_EQ(same.tail, pow2(-9));
  EXPECT_EQ(d_w_truncated(constant("0"), constant("1"), 5).value, Rational(7, 8));
}
