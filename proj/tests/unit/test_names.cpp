#include <gtest/gtest.h>

#include "graphonlab/constructions.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/metrics.hpp"
#include "graphonlab/names.hpp"
#include "graphonlab/sampling.hpp"
#include "helpers.hpp"

using namespace graphonlab;
using namespace graphonlab::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Names, TagsRoundTrip) {
  for (MetricTag t : {MetricTag::D1, MetricTag::DSquare, MetricTag::DeltaSquare, MetricTag::DW}) {
    EXPECT_EQ(parse_metric_tag(to_string(t)), t);
  }
  EXPECT_EQ(code_of([] { parse_metric_tag("L7"); }), ErrorCode::ParseError);
}

TEST(Names, ElementsAndTails) {
  const GraphonName n = GraphonName::from_elements(MetricTag::D1, {constant("0"), constant("1/2")});
  EXPECT_EQ(n.element(1), constant("1/2"));
  EXPECT_EQ(code_of([&] { n.element(2); }), ErrorCode::NamePrefixExhausted);
  const GraphonName r = GraphonName::from_elements(MetricTag::D1, {constant("0"), constant("1/2")}, TailPolicy::RepeatLast);
  EXPECT_EQ(r.element(40), constant("1/2"));
  int calls = 0;
  const GraphonName lazy(MetricTag::D1, [&calls](std::size_t) {
    ++calls;
    return constant("1/3");
  });
  lazy.element(3);
  lazy.element(3);
  EXPECT_EQ(calls, 1);
}

TEST(Names, Validation) {
  EXPECT_EQ(validate_name_prefix(GraphonName::constant(MetricTag::D1, checkerboard()), 6).status, ValidationStatus::Ok);
  const ValidationReport bad =
      validate_name_prefix(GraphonName::from_elements(MetricTag::D1, {constant("0"), constant("0"), constant("1")}), 3);
  EXPECT_EQ(bad.status, ValidationStatus::Violation);
  EXPECT_EQ(bad.j, 1u);
  EXPECT_EQ(bad.l, 2u);
  EXPECT_EQ(bad.evidence, 1);
  EXPECT_EQ(validate_name_prefix(GraphonName::constant(MetricTag::DW, constant("1/4")), 4).status, ValidationStatus::Ok);
  EXPECT_EQ(
      validate_name_prefix(GraphonName::constant(MetricTag::DeltaSquare, constant("1/4")), 4).status,
      ValidationStatus::Ok);
}

TEST(Names, Weakening) {
  const GraphonName d1name = canonical_name(checkerboard());
  const GraphonName sq = weaken_name(d1name, MetricTag::D1, MetricTag::DSquare);
  EXPECT_EQ(sq.tag(), MetricTag::DSquare);
  EXPECT_EQ(validate_name_prefix(sq, 5).status, ValidationStatus::Ok);
  EXPECT_EQ(weaken_name(sq, MetricTag::DSquare, MetricTag::DeltaSquare).tag(), MetricTag::DeltaSquare);
  EXPECT_EQ(code_of([&] { weaken_name(d1name, MetricTag::D1, MetricTag::DW); }), ErrorCode::IllegalWeakening);
  EXPECT_EQ(code_of([&] { weaken_name(d1name, MetricTag::DSquare, MetricTag::DeltaSquare); }), ErrorCode::IllegalWeakening);
}

TEST(Names, ThinningToDw) {
  EXPECT_EQ(thinning_offset(), 3u);
  EXPECT_LE(thinning_constant_bound(), 8);
  EXPECT_GT(thinning_constant_bound(), 4);
  EXPECT_EQ(thinning_schedule(2), 5u);
  const GraphonName out = name_delta_to_dw(GraphonName::constant(MetricTag::DeltaSquare, constant("1/3")));
  EXPECT_EQ(out.tag(), MetricTag::DW);
  EXPECT_EQ(out.element(4), constant("1/3"));
}

TEST(Names, DwToDelta) {
  EXPECT_EQ(dw_to_delta_vertices(0), 16u);
  EXPECT_EQ(dw_to_delta_vertices(2), 256u);
  EXPECT_GT(sampling_tolerance(1 << 20), 1);
  const GraphonName zero = name_dw_to_delta(GraphonName::constant(MetricTag::DW, constant("0")), 5);
  EXPECT_EQ(zero.tag(), MetricTag::DeltaSquare);
  EXPECT_EQ(zero.element(0), graphon_of_graph(FiniteGraph::empty(16)));
  const GraphonName one = name_dw_to_delta(GraphonName::constant(MetricTag::DW, constant("1")), 5);
  EXPECT_EQ(one.element(1), graphon_of_graph(FiniteGraph::complete(64)));
  EXPECT_EQ(one.claimed_tolerance(1), sampling_tolerance(64));
  // Deterministic given the seed.
  const GraphonName a = name_dw_to_delta(GraphonName::constant(MetricTag::DW, constant("1/2")), 77);
  const GraphonName b = name_dw_to_delta(GraphonName::constant(MetricTag::DW, constant("1/2")), 77);
  EXPECT_EQ(a.element(0), b.element(0));
}

TEST(Names, Section) {
  EXPECT_EQ(SectionChain::source_index(0), 3u);
  EXPECT_EQ(SectionChain::source_index(2), 18u);
  EXPECT_EQ(SectionChain::step_bound(3), Rational(45, 8));
  const GraphonName out = section_delta_to_dsquare(GraphonName::constant(MetricTag::DeltaSquare, graphon_of_graph(triangle())));
  EXPECT_EQ(out.tag(), MetricTag::DSquare);
  const auto g0 = graph_of_graphon(out.element(0));
  ASSERT_TRUE(g0.has_value());
  EXPECT_EQ(hat_delta(*g0, triangle()).upper, 0);
  EXPECT_EQ(out.element(1), out.element(0));
}

TEST(Names, RoundToGraph) {
  EXPECT_EQ(round_to_graph(constant("1"), 4), FiniteGraph::complete(4));
  EXPECT_EQ(round_to_graph(constant("0"), 4), FiniteGraph::empty(4));
  EXPECT_EQ(graphon_of_graph(round_to_graph(graphon_of_graph(k2()), 3)), blow_up(graphon_of_graph(k2()), 3));
}

TEST(Names, Martingale) {
  const StepGraphon u = matrix(4, {"1", "1/2", "0", "1/4", "1/2", "1/3", "1", "0", "0", "1", "1/5", "1/2", "1/4", "0", "1/2", "1"});
  const GraphonName name = canonical_name(u, MetricTag::DSquare);
  const Rational eps = pow2(-8);
  for (unsigned n = 0; n <= 2; ++n) {
    const MartingaleLevel lvl = martingale_from_dsquare_name(name, DyadicLevel{n}, eps);
    const StepGraphon exact = stepping(u, DyadicLevel{n});
    EXPECT_EQ(lvl.err, pow2(2 * static_cast<long>(n) - static_cast<long>(martingale_source_index(n, eps))));
    for (std::size_t a = 0; a < exact.parts(); ++a) {
      for (std::size_t b = 0; b < exact.parts(); ++b) EXPECT_LE(abs(lvl.graphon.value(a, b) - exact.value(a, b)), lvl.err);
    }
  }
  EXPECT_EQ(martingale_source_index(0, pow2(-10)), 10u);
  EXPECT_EQ(martingale_source_index(3, pow2(-10)), 16u);
  const MartingaleLevel c = MartingaleStream(GraphonName::constant(MetricTag::DSquare, constant("2/3")), pow2(-4)).level(1);
  EXPECT_EQ(c.graphon, blow_up(constant("2/3"), 2));
}

TEST(Names, RandomFreePieces) {
  EXPECT_EQ(randomfree_d1_distance(constant("1/3")), Rational(4, 9));
  EXPECT_EQ(randomfree_d1_distance(constant("0")), 0);
  EXPECT_EQ(randomfree_defect(constant("1/2")), Rational(1, 4));
  EXPECT_EQ(randomfree_defect(checkerboard()), 0);
  EXPECT_EQ(randomfree_defect(constant("1/32")), Rational(31, 1024));
  const StepGraphon f3 = render_dense(fractal_stage(3));
  const StepGraphon s1 = stepping(f3, DyadicLevel{1});
  EXPECT_EQ(randomfree_d1_distance(s1), d1(s1, f3));
}

TEST(Names, RandomFreeExtraction) {
  const GraphonName board = randomfree_d1_name(canonical_name(checkerboard(), MetricTag::DSquare));
  EXPECT_EQ(board.element(5), stepping(checkerboard(), DyadicLevel{1}));
  EXPECT_EQ(code_of([] { randomfree_d1_name(GraphonName::constant(MetricTag::DSquare, constant("1/2"))); }),
            ErrorCode::NonConvergence);
}

TEST(Names, Semidecide) {
  const SemidecideResult half = randomfree_semidecide(GraphonName::constant(MetricTag::D1, constant("1/2")), 20);
  EXPECT_TRUE(half.not_random_free);
  EXPECT_EQ(half.level, 4u);
  EXPECT_FALSE(randomfree_semidecide(GraphonName::constant(MetricTag::D1, checkerboard()), 200).not_random_free);
}

TEST(Names, CanonicalAndGroundTruth) {
  EXPECT_EQ(canonical_level(checkerboard(), 0), 0u);  // the constant 1/2 is already within 1/2
  EXPECT_EQ(canonical_level(checkerboard(), 1), 1u);
  EXPECT_EQ(canonical_level(constant("1/2"), 9), 0u);
  const GraphonName ok = d1_name_with_ground_truth(canonical_name(checkerboard()), checkerboard());
  EXPECT_EQ(ok.element(9), checkerboard());
  EXPECT_EQ(code_of([] { d1_name_with_ground_truth(GraphonName::constant(MetricTag::D1, constant("0")), constant("1")); }),
            ErrorCode::TruthMismatch);
}
